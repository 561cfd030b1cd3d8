#include "counterplan/sexpr.h"

#include <cctype>

namespace counterplan {

SyntaxError::SyntaxError(const std::string &msg, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + msg),
      line(line), column(column) {}

const std::string &SExpr::head() const {
    static const std::string empty;
    if (!is_list || children.empty() || children.front().is_list)
        return empty;
    return children.front().atom;
}

void SExpr::fail(const std::string &msg) const {
    throw SyntaxError(msg, line, column);
}

namespace {
class Reader {
    std::string_view text;
    std::size_t pos = 0;
    int line = 1;
    int column = 1;

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        ++pos;
    }

public:
    explicit Reader(std::string_view text) : text(text) {}

    void skip_space() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == ';') {
                while (pos < text.size() && text[pos] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    bool at_end() {
        skip_space();
        return pos >= text.size();
    }

    SExpr read() {
        skip_space();
        if (pos >= text.size())
            throw SyntaxError("unexpected end of input", line, column);
        SExpr node;
        node.line = line;
        node.column = column;
        char c = text[pos];
        if (c == ')')
            throw SyntaxError("unexpected ')'", line, column);
        if (c == '(') {
            node.is_list = true;
            advance();
            while (true) {
                skip_space();
                if (pos >= text.size())
                    throw SyntaxError("unbalanced '(' opened here", node.line, node.column);
                if (text[pos] == ')') {
                    advance();
                    break;
                }
                node.children.push_back(read());
            }
            return node;
        }
        while (pos < text.size()) {
            char d = text[pos];
            if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';')
                break;
            node.atom.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(d))));
            advance();
        }
        return node;
    }

    int cur_line() const { return line; }
    int cur_column() const { return column; }
};
}  // namespace

SExpr parse_sexpr(std::string_view text) {
    Reader reader(text);
    SExpr e = reader.read();
    if (!reader.at_end())
        throw SyntaxError("trailing input after expression", reader.cur_line(), reader.cur_column());
    return e;
}

std::vector<SExpr> parse_sexprs(std::string_view text) {
    Reader reader(text);
    std::vector<SExpr> out;
    while (!reader.at_end())
        out.push_back(reader.read());
    return out;
}

}  // namespace counterplan
