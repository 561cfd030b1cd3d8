#include "counterplan/pddl.h"

#include <algorithm>
#include <set>
#include <unordered_set>

using namespace std;

namespace counterplan::pddl {

const PredicateDecl *Domain::find_predicate(string_view name) const {
    for (const PredicateDecl &p : predicates)
        if (p.name == name)
            return &p;
    return nullptr;
}

bool Domain::has_type(string_view name) const {
    if (name == "object")
        return true;
    return any_of(types.begin(), types.end(), [&](const TypeDecl &t) { return t.name == name; });
}

bool Domain::is_subtype(string_view child, string_view ancestor) const {
    string cur(child);
    for (size_t guard = 0; guard <= types.size() + 1; ++guard) {
        if (cur == ancestor || ancestor == "object")
            return true;
        auto it = find_if(types.begin(), types.end(), [&](const TypeDecl &t) { return t.name == cur; });
        if (it == types.end())
            return false;
        cur = it->parent;
    }
    return false;  // cyclic hierarchy
}

string atom_name(const Atom &atom) {
    string out = "(" + atom.predicate;
    for (const string &a : atom.args)
        out += " " + a;
    return out + ")";
}

namespace {

const SExpr &expect_list(const SExpr &e, const string &what) {
    if (!e.is_list)
        e.fail("expected " + what);
    return e;
}

const string &expect_atom(const SExpr &e, const string &what) {
    if (e.is_list)
        e.fail("expected " + what);
    return e.atom;
}

// "a b - t c" -> typed names; untyped entries default to "object".
vector<TypedName> parse_typed_list(const SExpr &list, size_t start) {
    vector<TypedName> out;
    size_t pending = 0;
    for (size_t i = start; i < list.children.size(); ++i) {
        const SExpr &e = list.children[i];
        const string &tok = expect_atom(e, "name in typed list");
        if (tok == "-") {
            if (i + 1 >= list.children.size())
                e.fail("missing type after '-'");
            const string &type = expect_atom(list.children[i + 1], "type name");
            for (size_t k = out.size() - pending; k < out.size(); ++k)
                out[k].type = type;
            pending = 0;
            ++i;
            continue;
        }
        out.push_back({tok, "object"});
        ++pending;
    }
    return out;
}

struct Scope {
    const Domain &domain;
    const vector<TypedName> *params = nullptr;
    const unordered_set<string> *objects = nullptr;
};

Atom parse_atom(const SExpr &e, const Scope &scope) {
    expect_list(e, "atom");
    if (e.children.empty())
        e.fail("empty atom");
    Atom atom;
    atom.predicate = expect_atom(e.children[0], "predicate name");
    const PredicateDecl *decl = scope.domain.find_predicate(atom.predicate);
    if (!decl)
        e.fail("unknown predicate " + atom.predicate);
    if (decl->params.size() != e.children.size() - 1)
        e.fail("arity mismatch for " + atom.predicate + ": expected " +
               to_string(decl->params.size()) + ", got " + to_string(e.children.size() - 1));
    for (size_t i = 1; i < e.children.size(); ++i) {
        const string &arg = expect_atom(e.children[i], "argument");
        if (arg.starts_with("?")) {
            bool known = scope.params && any_of(scope.params->begin(), scope.params->end(),
                                                [&](const TypedName &p) { return p.name == arg; });
            if (!known)
                e.children[i].fail("unknown variable " + arg);
        } else {
            bool constant = any_of(scope.domain.constants.begin(), scope.domain.constants.end(),
                                   [&](const TypedName &c) { return c.name == arg; });
            if (!constant && !(scope.objects && scope.objects->count(arg)))
                e.children[i].fail("unknown object " + arg);
        }
        atom.args.push_back(arg);
    }
    return atom;
}

void parse_literals(const SExpr &e, const Scope &scope, vector<LiftedLiteral> &out) {
    expect_list(e, "condition");
    if (e.children.empty())
        return;  // "()" is the empty condition
    if (e.head() == "and") {
        for (size_t i = 1; i < e.children.size(); ++i)
            parse_literals(e.children[i], scope, out);
        return;
    }
    if (e.head() == "not") {
        if (e.children.size() != 2)
            e.fail("(not ...) takes exactly one atom");
        out.push_back({parse_atom(e.children[1], scope), false});
        return;
    }
    static const set<string> unsupported = {"or", "imply", "exists", "forall", "when", "increase", "decrease", "="};
    if (unsupported.count(e.head()))
        e.fail("unsupported construct '" + e.head() + "' (outside the supported STRIPS subset)");
    out.push_back({parse_atom(e, scope), true});
}

ActionSchema parse_action(const SExpr &e, const Domain &domain) {
    if (e.children.size() < 2)
        e.fail("action without a name");
    ActionSchema schema;
    schema.name = expect_atom(e.children[1], "action name");
    const SExpr *pre = nullptr;
    const SExpr *eff = nullptr;
    for (size_t i = 2; i < e.children.size(); i += 2) {
        const string &key = expect_atom(e.children[i], "action keyword");
        if (i + 1 >= e.children.size())
            e.children[i].fail("missing value for " + key);
        const SExpr &val = e.children[i + 1];
        if (key == ":parameters") {
            schema.params = parse_typed_list(expect_list(val, "parameter list"), 0);
            for (const TypedName &p : schema.params) {
                if (!p.name.starts_with("?"))
                    val.fail("parameter " + p.name + " must start with '?'");
                if (!domain.has_type(p.type))
                    val.fail("unknown type " + p.type);
            }
        } else if (key == ":agent") {
            schema.agent = expect_atom(val, "agent name");
        } else if (key == ":precondition") {
            pre = &val;
        } else if (key == ":effect") {
            eff = &val;
        } else {
            e.children[i].fail("unknown action keyword " + key);
        }
    }
    Scope scope{domain, &schema.params, nullptr};
    if (pre)
        parse_literals(*pre, scope, schema.pre);
    if (eff) {
        vector<LiftedLiteral> effects;
        parse_literals(*eff, scope, effects);
        for (LiftedLiteral &lit : effects)
            (lit.positive ? schema.add : schema.del).push_back(move(lit.atom));
    }
    return schema;
}

}  // namespace

Domain parse_domain(string_view text) {
    SExpr root = parse_sexpr(text);
    if (root.head() != "define")
        root.fail("expected (define (domain ...) ...)");
    Domain domain;
    bool named = false;
    for (size_t i = 1; i < root.children.size(); ++i) {
        const SExpr &sec = expect_list(root.children[i], "domain section");
        const string &key = sec.head();
        if (key == "domain") {
            if (sec.children.size() != 2)
                sec.fail("expected (domain <name>)");
            domain.name = expect_atom(sec.children[1], "domain name");
            named = true;
        } else if (key == ":requirements") {
            for (size_t k = 1; k < sec.children.size(); ++k)
                domain.requirements.push_back(expect_atom(sec.children[k], "requirement"));
        } else if (key == ":types") {
            for (const TypedName &t : parse_typed_list(sec, 1))
                domain.types.push_back({t.name, t.type});
            for (const TypeDecl &t : domain.types)
                if (!domain.has_type(t.parent))
                    sec.fail("unknown type " + t.parent);
        } else if (key == ":constants") {
            domain.constants = parse_typed_list(sec, 1);
            for (const TypedName &c : domain.constants)
                if (!domain.has_type(c.type))
                    sec.fail("unknown type " + c.type);
        } else if (key == ":predicates") {
            for (size_t k = 1; k < sec.children.size(); ++k) {
                const SExpr &p = expect_list(sec.children[k], "predicate declaration");
                if (p.children.empty())
                    p.fail("empty predicate declaration");
                PredicateDecl decl{expect_atom(p.children[0], "predicate name"), parse_typed_list(p, 1)};
                for (const TypedName &param : decl.params)
                    if (!domain.has_type(param.type))
                        p.fail("unknown type " + param.type);
                domain.predicates.push_back(move(decl));
            }
        } else if (key == ":action") {
            domain.actions.push_back(parse_action(sec, domain));
        } else {
            sec.fail("unsupported domain section '" + key + "'");
        }
    }
    if (!named)
        root.fail("missing (domain <name>)");
    return domain;
}

Problem parse_problem(string_view text, const Domain &domain) {
    SExpr root = parse_sexpr(text);
    if (root.head() != "define")
        root.fail("expected (define (problem ...) ...)");
    Problem problem;
    unordered_set<string> objects;
    for (const TypedName &c : domain.constants)
        objects.insert(c.name);
    const SExpr *init = nullptr;
    const SExpr *goal = nullptr;
    for (size_t i = 1; i < root.children.size(); ++i) {
        const SExpr &sec = expect_list(root.children[i], "problem section");
        const string &key = sec.head();
        if (key == "problem") {
            if (sec.children.size() != 2)
                sec.fail("expected (problem <name>)");
            problem.name = expect_atom(sec.children[1], "problem name");
        } else if (key == ":domain") {
            if (sec.children.size() != 2)
                sec.fail("expected (:domain <name>)");
            problem.domain_name = expect_atom(sec.children[1], "domain name");
            if (problem.domain_name != domain.name)
                sec.fail("problem refers to domain " + problem.domain_name + ", loaded " + domain.name);
        } else if (key == ":agent") {
            if (sec.children.size() != 2)
                sec.fail("expected (:agent <name>)");
            problem.agent = expect_atom(sec.children[1], "agent name");
        } else if (key == ":objects") {
            problem.objects = parse_typed_list(sec, 1);
            for (const TypedName &o : problem.objects) {
                if (!domain.has_type(o.type))
                    sec.fail("unknown type " + o.type);
                objects.insert(o.name);
            }
        } else if (key == ":init") {
            init = &sec;
        } else if (key == ":goal") {
            goal = &sec;
        } else {
            sec.fail("unsupported problem section '" + key + "'");
        }
    }
    Scope scope{domain, nullptr, &objects};
    if (init) {
        for (size_t k = 1; k < init->children.size(); ++k)
            problem.init.push_back(parse_atom(init->children[k], scope));
    }
    if (goal) {
        if (goal->children.size() > 2)
            goal->fail("(:goal ...) takes one condition");
        if (goal->children.size() == 2)
            parse_literals(goal->children[1], scope, problem.goal);
    }
    return problem;
}

LiftedTask load_task(string_view domain_text, string_view problem_text) {
    LiftedTask task;
    task.domain = parse_domain(domain_text);
    task.problem = parse_problem(problem_text, task.domain);
    return task;
}

vector<LiftedLiteral> parse_condition(string_view text, const Domain &domain,
                                     const vector<string> &objects) {
    unordered_set<string> known(objects.begin(), objects.end());
    Scope scope{domain, nullptr, &known};
    vector<LiftedLiteral> out;
    parse_literals(parse_sexpr(text), scope, out);
    return out;
}

namespace {
string typed_list(const vector<TypedName> &names) {
    string out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i)
            out += " ";
        out += names[i].name;
        bool last_of_type = i + 1 == names.size() || names[i + 1].type != names[i].type;
        if (last_of_type)
            out += " - " + names[i].type;
    }
    return out;
}

string literal_text(const LiftedLiteral &lit) {
    return lit.positive ? atom_name(lit.atom) : "(not " + atom_name(lit.atom) + ")";
}

string conjunction(const vector<string> &parts) {
    string out = "(and";
    for (const string &p : parts)
        out += " " + p;
    return out + ")";
}
}  // namespace

string to_pddl(const Domain &domain) {
    string out = "(define (domain " + domain.name + ")\n";
    if (!domain.requirements.empty()) {
        out += "  (:requirements";
        for (const string &r : domain.requirements)
            out += " " + r;
        out += ")\n";
    }
    if (!domain.types.empty()) {
        vector<TypedName> as_names;
        for (const TypeDecl &t : domain.types)
            as_names.push_back({t.name, t.parent});
        out += "  (:types " + typed_list(as_names) + ")\n";
    }
    if (!domain.constants.empty())
        out += "  (:constants " + typed_list(domain.constants) + ")\n";
    out += "  (:predicates";
    for (const PredicateDecl &p : domain.predicates) {
        out += "\n    (" + p.name;
        if (!p.params.empty())
            out += " " + typed_list(p.params);
        out += ")";
    }
    out += ")\n";
    for (const ActionSchema &a : domain.actions) {
        out += "  (:action " + a.name + "\n";
        if (!a.agent.empty())
            out += "    :agent " + a.agent + "\n";
        out += "    :parameters (" + typed_list(a.params) + ")\n";
        vector<string> pre;
        for (const LiftedLiteral &l : a.pre)
            pre.push_back(literal_text(l));
        out += "    :precondition " + conjunction(pre) + "\n";
        vector<string> eff;
        for (const Atom &at : a.add)
            eff.push_back(atom_name(at));
        for (const Atom &at : a.del)
            eff.push_back("(not " + atom_name(at) + ")");
        out += "    :effect " + conjunction(eff) + ")\n";
    }
    return out + ")\n";
}

string to_pddl(const Problem &problem) {
    string out = "(define (problem " + problem.name + ")\n";
    out += "  (:domain " + problem.domain_name + ")\n";
    if (!problem.agent.empty())
        out += "  (:agent " + problem.agent + ")\n";
    out += "  (:objects " + typed_list(problem.objects) + ")\n";
    out += "  (:init";
    for (const Atom &a : problem.init)
        out += "\n    " + atom_name(a);
    out += ")\n";
    vector<string> goal;
    for (const LiftedLiteral &l : problem.goal)
        goal.push_back(literal_text(l));
    out += "  (:goal " + conjunction(goal) + "))\n";
    return out;
}

}  // namespace counterplan::pddl
