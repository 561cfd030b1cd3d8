#ifndef COUNTERPLAN_SEXPR_H
#define COUNTERPLAN_SEXPR_H

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace counterplan {

class SyntaxError : public std::runtime_error {
public:
    int line;
    int column;
    SyntaxError(const std::string &msg, int line, int column);
};

// A parsed S-expression node; atoms are lower-cased (PDDL is case-insensitive).
struct SExpr {
    std::string atom;
    std::vector<SExpr> children;
    bool is_list = false;
    int line = 0;
    int column = 0;

    bool is_atom() const { return !is_list; }
    bool is_atom(std::string_view text) const { return !is_list && atom == text; }
    // Head atom of a non-empty list, "" otherwise.
    const std::string &head() const;
    [[noreturn]] void fail(const std::string &msg) const;
};

// Parses exactly one top-level expression. ';' starts a comment.
SExpr parse_sexpr(std::string_view text);
std::vector<SExpr> parse_sexprs(std::string_view text);

}  // namespace counterplan

#endif
