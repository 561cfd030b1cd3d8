#ifndef COUNTERPLAN_PDDL_H
#define COUNTERPLAN_PDDL_H

#include "counterplan/sexpr.h"

#include <string>
#include <string_view>
#include <vector>

namespace counterplan::pddl {

/*
  Lifted representation of the typed-STRIPS subset documented in
  docs/pddl-subset.md: typing, negative preconditions and negative goals.
  Actions may carry an ":agent" tag and problems an "(:agent ...)" section;
  a problem grounds only the untagged actions and those tagged with its agent.
*/

struct TypedName {
    std::string name;
    std::string type = "object";
    bool operator==(const TypedName &) const = default;
};

// Arguments are variables ("?x") or object names.
struct Atom {
    std::string predicate;
    std::vector<std::string> args;
    bool operator==(const Atom &) const = default;
};

struct LiftedLiteral {
    Atom atom;
    bool positive = true;
    bool operator==(const LiftedLiteral &) const = default;
};

struct PredicateDecl {
    std::string name;
    std::vector<TypedName> params;
    bool operator==(const PredicateDecl &) const = default;
};

struct ActionSchema {
    std::string name;
    std::string agent;  // empty: available to every agent
    std::vector<TypedName> params;
    std::vector<LiftedLiteral> pre;
    std::vector<Atom> add;
    std::vector<Atom> del;
    bool operator==(const ActionSchema &) const = default;
};

struct TypeDecl {
    std::string name;
    std::string parent = "object";
    bool operator==(const TypeDecl &) const = default;
};

struct Domain {
    std::string name;
    std::vector<std::string> requirements;
    std::vector<TypeDecl> types;
    std::vector<TypedName> constants;
    std::vector<PredicateDecl> predicates;
    std::vector<ActionSchema> actions;

    const PredicateDecl *find_predicate(std::string_view name) const;
    bool has_type(std::string_view name) const;
    bool is_subtype(std::string_view child, std::string_view ancestor) const;
    bool operator==(const Domain &) const = default;
};

struct Problem {
    std::string name;
    std::string domain_name;
    std::string agent;
    std::vector<TypedName> objects;
    std::vector<Atom> init;
    std::vector<LiftedLiteral> goal;
    bool operator==(const Problem &) const = default;
};

struct LiftedTask {
    Domain domain;
    Problem problem;
    bool operator==(const LiftedTask &) const = default;
};

// Semantic errors (unknown names, arity) reuse SyntaxError for line/column.
Domain parse_domain(std::string_view text);
Problem parse_problem(std::string_view text, const Domain &domain);
LiftedTask load_task(std::string_view domain_text, std::string_view problem_text);
// A ground condition such as "(and (p a) (not (q b)))" over the given objects.
std::vector<LiftedLiteral> parse_condition(std::string_view text, const Domain &domain,
                                           const std::vector<std::string> &objects);

// Canonical pretty-printing; parse(print(x)) == x.
std::string to_pddl(const Domain &domain);
std::string to_pddl(const Problem &problem);

std::string atom_name(const Atom &atom);

}  // namespace counterplan::pddl

#endif
