#include "counterplan/grounding.h"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

using namespace std;

namespace counterplan {

using pddl::Atom;
using pddl::LiftedLiteral;

namespace {

struct GroundCandidate {
    string name;
    vector<string> pos_pre;
    vector<string> neg_pre;
    vector<string> add;
    vector<string> del;
};

class Grounder {
    const pddl::Domain &domain;
    const GroundingOptions &options;
    map<string, string> object_types;
    unordered_set<string> fluent_predicates;
    unordered_set<string> static_init;
    unordered_set<string> fluent_init;
    size_t generated = 0;

public:
    Grounder(const pddl::Domain &domain, const vector<const pddl::Problem *> &problems,
             const GroundingOptions &options)
        : domain(domain), options(options) {
        for (const auto &c : domain.constants)
            object_types[c.name] = c.type;
        for (const pddl::Problem *p : problems) {
            for (const auto &o : p->objects) {
                auto [it, inserted] = object_types.emplace(o.name, o.type);
                if (!inserted && it->second != o.type)
                    throw GroundingError("object " + o.name + " declared with types " + it->second +
                                         " and " + o.type);
            }
        }
        for (const auto &schema : domain.actions) {
            for (const Atom &a : schema.add)
                fluent_predicates.insert(a.predicate);
            for (const Atom &a : schema.del)
                fluent_predicates.insert(a.predicate);
        }
        for (const pddl::Problem *p : problems) {
            for (const Atom &a : p->init) {
                if (fluent_predicates.count(a.predicate))
                    fluent_init.insert(pddl::atom_name(a));
                else
                    static_init.insert(pddl::atom_name(a));
            }
        }
    }

    bool is_fluent(const string &predicate) const { return fluent_predicates.count(predicate) > 0; }
    bool initially_true(const string &atom) const {
        return fluent_init.count(atom) || static_init.count(atom);
    }
    const unordered_set<string> &initial_fluents() const { return fluent_init; }

    vector<string> objects_of(const string &type) const {
        vector<string> out;
        for (const auto &[name, t] : object_types)
            if (domain.is_subtype(t, type))
                out.push_back(name);
        return out;
    }

    vector<GroundCandidate> ground_schema(const pddl::ActionSchema &schema) {
        const size_t n = schema.params.size();
        auto param_index = [&](const string &arg) -> int {
            for (size_t i = 0; i < n; ++i)
                if (schema.params[i].name == arg)
                    return static_cast<int>(i);
            return -1;
        };
        // Static preconditions are checked as soon as their last parameter is bound.
        vector<vector<const LiftedLiteral *>> checks(n + 1);
        for (const LiftedLiteral &lit : schema.pre) {
            if (is_fluent(lit.atom.predicate))
                continue;
            int deepest = -1;
            for (const string &arg : lit.atom.args)
                deepest = max(deepest, param_index(arg));
            checks[deepest + 1].push_back(&lit);
        }
        vector<vector<string>> domains;
        for (const auto &p : schema.params)
            domains.push_back(objects_of(p.type));

        vector<string> binding(n);
        auto instantiate = [&](const Atom &a) {
            string out = "(" + a.predicate;
            for (const string &arg : a.args) {
                int idx = param_index(arg);
                out += " " + (idx >= 0 ? binding[idx] : arg);
            }
            return out + ")";
        };
        auto statics_hold = [&](size_t level) {
            for (const LiftedLiteral *lit : checks[level]) {
                bool holds = static_init.count(instantiate(lit->atom)) > 0;
                if (holds != lit->positive)
                    return false;
            }
            return true;
        };

        vector<GroundCandidate> out;
        if (!statics_hold(0))
            return out;
        auto emit = [&]() {
            if (++generated > options.max_actions)
                throw GroundingError("grounding exceeds the action cap max_actions=" +
                                     to_string(options.max_actions));
            GroundCandidate c;
            c.name = "(" + schema.name;
            for (const string &b : binding)
                c.name += " " + b;
            c.name += ")";
            for (const LiftedLiteral &lit : schema.pre) {
                if (!is_fluent(lit.atom.predicate))
                    continue;
                (lit.positive ? c.pos_pre : c.neg_pre).push_back(instantiate(lit.atom));
            }
            for (const Atom &a : schema.add)
                c.add.push_back(instantiate(a));
            for (const Atom &a : schema.del) {
                string d = instantiate(a);
                if (find(c.add.begin(), c.add.end(), d) == c.add.end())
                    c.del.push_back(d);
            }
            for (auto *v : {&c.pos_pre, &c.neg_pre, &c.add, &c.del}) {
                sort(v->begin(), v->end());
                v->erase(unique(v->begin(), v->end()), v->end());
            }
            // A positive and a negative precondition on the same atom can never hold.
            for (const string &p : c.pos_pre)
                if (binary_search(c.neg_pre.begin(), c.neg_pre.end(), p))
                    return;
            out.push_back(move(c));
        };
        auto recurse = [&](auto &&self, size_t level) -> void {
            if (level == n) {
                emit();
                return;
            }
            for (const string &obj : domains[level]) {
                binding[level] = obj;
                if (statics_hold(level + 1))
                    self(self, level + 1);
            }
        };
        recurse(recurse, 0);
        return out;
    }
};

void collect_atoms(const vector<LiftedLiteral> &lits, set<string> &atoms) {
    for (const LiftedLiteral &l : lits)
        atoms.insert(pddl::atom_name(l.atom));
}

Goal resolve_goal(const FactTable &facts, const vector<LiftedLiteral> &lits) {
    Goal goal;
    for (const LiftedLiteral &l : lits)
        goal.push_back({facts.id(pddl::atom_name(l.atom)), l.positive});
    return goal;
}

}  // namespace

JointGrounding ground_joint(const pddl::Domain &domain, const vector<const pddl::Problem *> &problems,
                            const vector<vector<LiftedLiteral>> &extra_goals,
                            const GroundingOptions &options) {
    Grounder grounder(domain, problems, options);

    vector<vector<GroundCandidate>> per_schema;
    for (const auto &schema : domain.actions)
        per_schema.push_back(grounder.ground_schema(schema));

    // Relaxed reachability from the joint init over every agent's actions.
    unordered_set<string> reached = grounder.initial_fluents();
    unordered_set<string> deletable;
    vector<vector<bool>> alive(per_schema.size());
    for (size_t s = 0; s < per_schema.size(); ++s)
        alive[s].assign(per_schema[s].size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t s = 0; s < per_schema.size(); ++s) {
            for (size_t i = 0; i < per_schema[s].size(); ++i) {
                if (alive[s][i])
                    continue;
                const GroundCandidate &c = per_schema[s][i];
                bool ok = all_of(c.pos_pre.begin(), c.pos_pre.end(),
                                 [&](const string &p) { return reached.count(p) > 0; }) &&
                          all_of(c.neg_pre.begin(), c.neg_pre.end(), [&](const string &p) {
                              return !grounder.initially_true(p) || deletable.count(p) > 0;
                          });
                if (!ok)
                    continue;
                alive[s][i] = true;
                changed = true;
                for (const string &a : c.add)
                    reached.insert(a);
                for (const string &d : c.del)
                    deletable.insert(d);
            }
        }
    }

    set<string> atoms(reached.begin(), reached.end());
    for (size_t s = 0; s < per_schema.size(); ++s) {
        for (size_t i = 0; i < per_schema[s].size(); ++i) {
            if (!alive[s][i])
                continue;
            const GroundCandidate &c = per_schema[s][i];
            for (const auto *v : {&c.pos_pre, &c.neg_pre, &c.add, &c.del})
                atoms.insert(v->begin(), v->end());
        }
    }
    for (const pddl::Problem *p : problems)
        collect_atoms(p->goal, atoms);
    for (const auto &g : extra_goals)
        collect_atoms(g, atoms);

    vector<string> names;
    for (const string &a : atoms) {
        names.push_back(a);
        names.push_back("(not " + a + ")");
    }
    sort(names.begin(), names.end());
    unordered_map<string, FactId> index;
    for (FactId f = 0; f < static_cast<FactId>(names.size()); ++f)
        index.emplace(names[f], f);
    vector<FactId> twins(names.size(), kNoFact);
    for (const string &a : atoms) {
        FactId pos = index.at(a);
        FactId neg = index.at("(not " + a + ")");
        twins[pos] = neg;
        twins[neg] = pos;
    }

    JointGrounding out;
    auto table = make_shared<FactTable>(names, twins);
    out.facts = table;
    out.init = State(names.size());
    for (const string &a : atoms)
        out.init.set(grounder.initially_true(a) ? index.at(a) : index.at("(not " + a + ")"));

    auto to_action = [&](const GroundCandidate &c) {
        Action a;
        a.name = c.name;
        for (const string &p : c.pos_pre)
            a.pre.push_back(index.at(p));
        for (const string &p : c.neg_pre)
            a.pre.push_back(twins[index.at(p)]);
        for (const string &p : c.add) {
            a.add.push_back(index.at(p));
            a.del.push_back(twins[index.at(p)]);
        }
        for (const string &p : c.del) {
            a.del.push_back(index.at(p));
            a.add.push_back(twins[index.at(p)]);
        }
        for (auto *v : {&a.pre, &a.add, &a.del}) {
            sort(v->begin(), v->end());
            v->erase(unique(v->begin(), v->end()), v->end());
        }
        return a;
    };

    for (const pddl::Problem *p : problems) {
        vector<Action> actions;
        for (size_t s = 0; s < per_schema.size(); ++s) {
            const string &agent = domain.actions[s].agent;
            if (!agent.empty() && !p->agent.empty() && agent != p->agent)
                continue;
            for (size_t i = 0; i < per_schema[s].size(); ++i)
                if (alive[s][i])
                    actions.push_back(to_action(per_schema[s][i]));
        }
        sort(actions.begin(), actions.end(),
             [](const Action &x, const Action &y) { return x.name < y.name; });
        for (size_t i = 1; i < actions.size(); ++i)
            if (actions[i].name == actions[i - 1].name)
                throw GroundingError("two schemas visible to one agent ground to " + actions[i].name);
        out.actions.push_back(move(actions));
        out.goals.push_back(resolve_goal(*table, p->goal));
    }
    for (const auto &g : extra_goals)
        out.extra_goals.push_back(resolve_goal(*table, g));
    return out;
}

PlanningTask ground(const pddl::LiftedTask &task, const GroundingOptions &options) {
    JointGrounding g = ground_joint(task.domain, {&task.problem}, {}, options);
    PlanningTask out;
    out.facts = g.facts;
    out.actions = move(g.actions.front());
    out.init = g.init;
    out.goal = g.goals.front();
    return out;
}

vector<LiftedLiteral> parse_lifted_goal(string_view text, const pddl::Domain &domain,
                                        const vector<const pddl::Problem *> &problems) {
    vector<string> objects;
    for (const pddl::Problem *p : problems)
        for (const auto &o : p->objects)
            objects.push_back(o.name);
    return pddl::parse_condition(text, domain, objects);
}

}  // namespace counterplan
