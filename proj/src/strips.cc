#include "counterplan/strips.h"

#include "counterplan/sexpr.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

using namespace std;

namespace counterplan {

FactTable::FactTable(vector<string> names_, vector<FactId> twins_)
    : names(move(names_)), twins(move(twins_)) {
    if (twins.size() != names.size())
        throw invalid_argument("fact table: twin table size mismatch");
    for (FactId f = 0; f < static_cast<FactId>(names.size()); ++f) {
        if (!ids.emplace(names[f], f).second)
            throw invalid_argument("fact table: duplicate fact " + names[f]);
    }
}

optional<FactId> FactTable::find(string_view name) const {
    auto it = ids.find(string(name));
    if (it == ids.end())
        return nullopt;
    return it->second;
}

FactId FactTable::id(string_view name) const {
    auto f = find(name);
    if (!f)
        throw out_of_range("unknown fact " + string(name));
    return *f;
}

string literal_name(const FactTable &facts, Literal lit) {
    if (lit.positive)
        return facts.name(lit.fact);
    FactId twin = facts.twin(lit.fact);
    if (twin != kNoFact)
        return facts.name(twin);
    return "(not " + facts.name(lit.fact) + ")";
}

string goal_name(const FactTable &facts, const Goal &goal) {
    if (goal.size() == 1)
        return literal_name(facts, goal.front());
    string out = "(and";
    for (Literal lit : goal)
        out += " " + literal_name(facts, lit);
    return out + ")";
}

optional<vector<FactId>> goal_facts(const FactTable &facts, const Goal &goal) {
    vector<FactId> out;
    out.reserve(goal.size());
    for (Literal lit : goal) {
        if (lit.positive) {
            out.push_back(lit.fact);
        } else {
            FactId twin = facts.twin(lit.fact);
            if (twin == kNoFact)
                return nullopt;
            out.push_back(twin);
        }
    }
    sort(out.begin(), out.end());
    out.erase(unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {
string atom_text(const SExpr &e) {
    if (!e.is_list)
        e.fail("expected an atom like (p a b)");
    string out = "(";
    for (size_t i = 0; i < e.children.size(); ++i) {
        if (e.children[i].is_list)
            e.children[i].fail("nested list inside atom");
        if (i)
            out += ' ';
        out += e.children[i].atom;
    }
    return out + ")";
}

void collect_goal(const FactTable &facts, const SExpr &e, Goal &goal) {
    if (e.head() == "and") {
        for (size_t i = 1; i < e.children.size(); ++i)
            collect_goal(facts, e.children[i], goal);
        return;
    }
    if (e.head() == "not") {
        if (e.children.size() != 2)
            e.fail("(not ...) takes exactly one atom");
        string name = atom_text(e.children[1]);
        auto f = facts.find(name);
        if (!f)
            e.fail("unknown fact " + name);
        goal.push_back({*f, false});
        return;
    }
    string name = atom_text(e);
    auto f = facts.find(name);
    if (!f)
        e.fail("unknown fact " + name);
    goal.push_back({*f, true});
}
}  // namespace

Goal parse_goal(const FactTable &facts, string_view text) {
    Goal goal;
    collect_goal(facts, parse_sexpr(text), goal);
    return goal;
}

State::State(size_t num_facts, span<const FactId> true_facts) : State(num_facts) {
    for (FactId f : true_facts)
        set(f);
}

bool State::satisfies(const FactTable &, const Goal &goal) const {
    for (Literal lit : goal) {
        if (contains(lit.fact) != lit.positive)
            return false;
    }
    return true;
}

vector<FactId> State::facts(size_t num_facts) const {
    vector<FactId> out;
    for (FactId f = 0; f < static_cast<FactId>(num_facts); ++f)
        if (contains(f))
            out.push_back(f);
    return out;
}

size_t State::hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (uint64_t w : words) {
        h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<size_t>(h);
}

const string &noop_name() {
    static const string name = "(no-op)";
    return name;
}

Action make_noop() {
    Action a;
    a.name = noop_name();
    a.cost = 0;
    return a;
}

Plan concat(const Plan &a, const Plan &b) {
    Plan out = a;
    out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
    return out;
}

State apply(const State &s, const Action &a) {
    if (!a.applicable(s))
        return s;
    State next = s;
    for (FactId f : a.del)
        next.reset(f);
    for (FactId f : a.add)
        next.set(f);
    return next;
}

State execute(const State &s, const Plan &plan) {
    State cur = s;
    for (const Action &a : plan.steps)
        cur = apply(cur, a);
    return cur;
}

int plan_cost(const Plan &plan) {
    int cost = 0;
    for (const Action &a : plan.steps)
        cost += a.cost;
    return cost;
}

PlanCheck check_plan(const PlanningTask &task, const Plan &plan, size_t *failed_step) {
    State cur = task.init;
    for (size_t i = 0; i < plan.steps.size(); ++i) {
        if (!plan.steps[i].applicable(cur)) {
            if (failed_step)
                *failed_step = i;
            return PlanCheck::inapplicable_step;
        }
        cur = apply(cur, plan.steps[i]);
    }
    return cur.satisfies(*task.facts, task.goal) ? PlanCheck::valid : PlanCheck::goal_not_reached;
}

string dump_task(const PlanningTask &task) {
    ostringstream out;
    const FactTable &facts = *task.facts;
    out << "facts " << facts.size() << "\n";
    for (FactId f = 0; f < static_cast<FactId>(facts.size()); ++f)
        out << f << " " << facts.name(f) << (task.init.contains(f) ? " init" : "") << "\n";
    auto ids = [&](const vector<FactId> &v) {
        string s = "[";
        for (size_t i = 0; i < v.size(); ++i)
            s += (i ? " " : "") + to_string(v[i]);
        return s + "]";
    };
    out << "actions " << task.actions.size() << "\n";
    for (size_t i = 0; i < task.actions.size(); ++i) {
        const Action &a = task.actions[i];
        out << i << " " << a.name << " cost=" << a.cost << " pre=" << ids(a.pre)
            << " add=" << ids(a.add) << " del=" << ids(a.del) << "\n";
    }
    out << "goal " << goal_name(facts, task.goal) << "\n";
    return out.str();
}

string format_plan(const Plan &plan) {
    string out;
    for (const Action &a : plan.steps)
        out += a.name + "\n";
    out += "; cost = " + to_string(plan_cost(plan)) + "\n";
    return out;
}

Plan parse_plan(string_view text, span<const Action> actions) {
    unordered_map<string, const Action *> by_name;
    for (const Action &a : actions)
        by_name.emplace(a.name, &a);
    Plan plan;
    istringstream in{string(text)};
    string line;
    int line_no = 0;
    while (getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == string::npos || line[first] == ';')
            continue;
        auto last = line.find_last_not_of(" \t\r");
        string name = line.substr(first, last - first + 1);
        transform(name.begin(), name.end(), name.begin(),
                  [](unsigned char c) { return static_cast<char>(tolower(c)); });
        if (name == noop_name()) {
            plan.steps.push_back(make_noop());
            continue;
        }
        auto it = by_name.find(name);
        if (it == by_name.end())
            throw runtime_error("plan line " + to_string(line_no) + ": unknown action " + name);
        plan.steps.push_back(*it->second);
    }
    return plan;
}

}  // namespace counterplan
