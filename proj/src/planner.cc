#include "counterplan/planner.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>
#include <unordered_map>

using namespace std;

namespace counterplan {

const char *status_name(SearchStatus status) {
    switch (status) {
    case SearchStatus::solved:
        return "solved";
    case SearchStatus::unsolvable:
        return "unsolvable";
    case SearchStatus::resource_limit:
        return "resource-limit";
    }
    return "?";
}

bool BudgetClock::tick() {
    ++nodes;
    if (nodes > budget.max_nodes)
        return false;
    if ((nodes & 255) == 0) {
        chrono::duration<double> elapsed = chrono::steady_clock::now() - start;
        if (elapsed.count() > budget.max_seconds)
            return false;
    }
    return true;
}

HMax::HMax(size_t num_facts, span<const Action> actions)
    : num_facts(num_facts), actions(actions), pre_of(num_facts) {
    for (size_t a = 0; a < actions.size(); ++a) {
        if (actions[a].pre.empty())
            no_pre.push_back(static_cast<int>(a));
        for (FactId f : actions[a].pre)
            pre_of[f].push_back(static_cast<int>(a));
    }
}

namespace {

using CostQueue = priority_queue<pair<int, FactId>, vector<pair<int, FactId>>, greater<>>;

// Generalised Dijkstra over the relaxed task. Stops early once `stop`
// returns true for a settled fact.
template <typename Stop>
vector<int> relaxed_costs(size_t num_facts, span<const Action> actions, const vector<vector<int>> &pre_of,
                          const vector<int> &no_pre, const State &s, Stop stop) {
    vector<int> cost(num_facts, kInfinity);
    vector<int> unsat(actions.size());
    vector<char> settled(num_facts, 0);
    CostQueue queue;
    auto relax_effects = [&](const Action &a, int c) {
        for (FactId g : a.add) {
            if (c < cost[g]) {
                cost[g] = c;
                queue.push({c, g});
            }
        }
    };
    for (size_t a = 0; a < actions.size(); ++a)
        unsat[a] = static_cast<int>(actions[a].pre.size());
    for (FactId f = 0; f < static_cast<FactId>(num_facts); ++f) {
        if (s.contains(f)) {
            cost[f] = 0;
            queue.push({0, f});
        }
    }
    for (int a : no_pre)
        relax_effects(actions[a], actions[a].cost);
    while (!queue.empty()) {
        auto [c, f] = queue.top();
        queue.pop();
        if (settled[f] || c > cost[f])
            continue;
        settled[f] = 1;
        if (stop(f))
            break;
        for (int a : pre_of[f])
            if (--unsat[a] == 0)
                relax_effects(actions[a], c + actions[a].cost);
    }
    return cost;
}

vector<int> canonical_order(span<const Action> actions) {
    vector<int> order(actions.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<int>(i);
    stable_sort(order.begin(), order.end(),
                [&](int x, int y) { return actions[x].name < actions[y].name; });
    return order;
}

}  // namespace

vector<int> HMax::fact_costs(const State &s) const {
    return relaxed_costs(num_facts, actions, pre_of, no_pre, s, [](FactId) { return false; });
}

int HMax::operator()(const State &s, span<const FactId> goal) const {
    if (goal.empty())
        return 0;
    vector<char> wanted(num_facts, 0);
    size_t remaining = 0;
    for (FactId g : goal) {
        if (!wanted[g]) {
            wanted[g] = 1;
            ++remaining;
        }
    }
    vector<int> cost = relaxed_costs(num_facts, actions, pre_of, no_pre, s,
                                     [&](FactId f) { return wanted[f] && --remaining == 0; });
    int h = 0;
    for (FactId g : goal)
        h = max(h, cost[g]);
    return h;
}

SearchResult solve_optimal(span<const Action> actions, size_t num_facts, const State &init,
                           span<const FactId> goal, const SearchBudget &budget) {
    struct Node {
        State state;
        int g;
        int h;
        int parent;
        int action;
    };
    HMax hmax(num_facts, actions);
    vector<int> order = canonical_order(actions);
    BudgetClock clock(budget);
    SearchResult result;

    vector<Node> nodes;
    unordered_map<State, int, StateHash> index;
    // (f, h, generation counter, node id, g at push time)
    using Entry = tuple<int, int, size_t, int, int>;
    priority_queue<Entry, vector<Entry>, greater<>> open;
    size_t generated = 0;

    int h0 = hmax(init, goal);
    if (h0 == kInfinity)
        return result;
    nodes.push_back({init, 0, h0, -1, -1});
    index.emplace(init, 0);
    open.push({h0, h0, generated++, 0, 0});

    while (!open.empty()) {
        auto [f, h, counter, id, g] = open.top();
        open.pop();
        if (g != nodes[id].g)
            continue;
        if (nodes[id].state.contains_all(goal)) {
            Plan plan;
            for (int cur = id; nodes[cur].parent >= 0; cur = nodes[cur].parent)
                plan.steps.push_back(actions[nodes[cur].action]);
            reverse(plan.steps.begin(), plan.steps.end());
            result.cost = nodes[id].g;
            result.plan = move(plan);
            result.status = SearchStatus::solved;
            result.expanded = clock.expanded();
            return result;
        }
        if (!clock.tick()) {
            result.status = SearchStatus::resource_limit;
            result.expanded = clock.expanded();
            return result;
        }
        for (int a : order) {
            const Action &act = actions[a];
            if (!act.applicable(nodes[id].state))
                continue;
            State next = apply(nodes[id].state, act);
            int ng = nodes[id].g + act.cost;
            auto it = index.find(next);
            if (it == index.end()) {
                int nh = hmax(next, goal);
                if (nh == kInfinity)
                    continue;
                int nid = static_cast<int>(nodes.size());
                index.emplace(next, nid);
                nodes.push_back({move(next), ng, nh, id, a});
                open.push({ng + nh, nh, generated++, nid, ng});
            } else if (ng < nodes[it->second].g) {
                Node &n = nodes[it->second];
                n.g = ng;
                n.parent = id;
                n.action = a;
                open.push({ng + n.h, n.h, generated++, it->second, ng});
            }
        }
    }
    result.expanded = clock.expanded();
    return result;
}

SearchResult solve_optimal(const PlanningTask &task, const SearchBudget &budget) {
    auto goal = task.resolved_goal();
    if (!goal)
        return {};
    return solve_optimal(task.actions, task.num_facts(), task.init, *goal, budget);
}

optional<int> optimal_cost(const State &init, const Goal &goal, span<const Action> actions,
                           const FactTable &facts, const SearchBudget &budget) {
    auto resolved = goal_facts(facts, goal);
    if (!resolved)
        return nullopt;
    SearchResult r = solve_optimal(actions, facts.size(), init, *resolved, budget);
    if (r.status == SearchStatus::resource_limit)
        throw SearchLimitError("search budget exhausted after " + std::to_string(r.expanded) + " expansions");
    return r.cost;
}

OptimalPlanGraph::OptimalPlanGraph(span<const Action> actions_, size_t num_facts, const State &init,
                                   span<const FactId> goal_, const SearchBudget &budget)
    : actions(actions_), goal(goal_.begin(), goal_.end()) {
    for (const Action &a : actions) {
        if (a.cost <= 0)
            throw invalid_argument("optimal plan graph requires positive action costs: " + a.name);
        unit_costs = unit_costs && a.cost == 1;
    }
    SearchResult first = solve_optimal(actions, num_facts, init, goal, budget);
    status_ = first.status;
    if (status_ != SearchStatus::solved)
        return;
    const int cstar = *first.cost;

    HMax hmax(num_facts, actions);
    vector<int> order = canonical_order(actions);
    BudgetClock clock(budget);

    struct Raw {
        State state;
        int g;
        vector<Edge> out;
    };
    vector<Raw> raw;
    unordered_map<State, int, StateHash> index;
    using Entry = pair<int, int>;
    priority_queue<Entry, vector<Entry>, greater<>> open;
    raw.push_back({init, 0, {}});
    index.emplace(init, 0);
    open.push({0, 0});
    while (!open.empty()) {
        auto [g, id] = open.top();
        open.pop();
        if (g != raw[id].g)
            continue;
        if (raw[id].state.contains_all(goal))
            continue;  // plans end here; positive costs forbid optimal continuations
        int h = hmax(raw[id].state, goal);
        if (h == kInfinity || g + h > cstar)
            continue;
        if (!clock.tick()) {
            status_ = SearchStatus::resource_limit;
            return;
        }
        for (int a : order) {
            const Action &act = actions[a];
            if (!act.applicable(raw[id].state))
                continue;
            int ng = g + act.cost;
            if (ng > cstar)
                continue;
            State next = apply(raw[id].state, act);
            auto it = index.find(next);
            int target;
            if (it == index.end()) {
                target = static_cast<int>(raw.size());
                index.emplace(next, target);
                raw.push_back({move(next), ng, {}});
                open.push({ng, target});
            } else {
                target = it->second;
                if (ng < raw[target].g) {
                    raw[target].g = ng;
                    open.push({ng, target});
                }
            }
            raw[id].out.push_back({a, target});
        }
    }

    // Backward pass in decreasing g keeps the g-tight edges into live nodes.
    vector<int> by_g(raw.size());
    for (size_t i = 0; i < raw.size(); ++i)
        by_g[i] = static_cast<int>(i);
    stable_sort(by_g.begin(), by_g.end(), [&](int x, int y) { return raw[x].g > raw[y].g; });
    vector<char> alive(raw.size(), 0);
    vector<char> is_terminal(raw.size(), 0);
    for (int u : by_g) {
        if (raw[u].g == cstar && raw[u].state.contains_all(goal)) {
            alive[u] = is_terminal[u] = 1;
            continue;
        }
        vector<Edge> kept;
        for (const Edge &e : raw[u].out)
            if (alive[e.to] && raw[e.to].g == raw[u].g + actions[e.action].cost)
                kept.push_back(e);
        raw[u].out = move(kept);
        alive[u] = !raw[u].out.empty();
    }
    if (!alive[0])
        throw logic_error("optimal plan graph lost the initial state");

    vector<int> remap(raw.size(), -1);
    for (size_t i = 0; i < raw.size(); ++i) {
        if (!alive[i])
            continue;
        remap[i] = static_cast<int>(states.size());
        states.push_back(raw[i].state);
        terminal.push_back(is_terminal[i]);
        depth.push_back(unit_costs ? raw[i].g : -1);
    }
    edges.resize(states.size());
    for (size_t i = 0; i < raw.size(); ++i) {
        if (!alive[i])
            continue;
        for (const Edge &e : raw[i].out)
            edges[remap[i]].push_back({e.action, remap[e.to]});
    }
    cost_ = cstar;
}

optional<int> OptimalPlanGraph::min_laststep(FactId f) const {
    if (!cost_)
        return nullopt;
    const bool in_goal = find(goal.begin(), goal.end(), f) != goal.end();
    // best(u, d): min over completions from u, reached after d steps, of the
    // last absolute step needing f (0 when the completion never needs it).
    unordered_map<long long, int> memo;
    function<int(int, int)> best = [&](int u, int d) -> int {
        long long key = static_cast<long long>(u) * (1LL << 32) + d;
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        int value;
        if (terminal[u]) {
            value = in_goal ? d + 1 : 0;
        } else {
            value = kInfinity;
            for (const Edge &e : edges[u]) {
                const auto &pre = actions[e.action].pre;
                int here = find(pre.begin(), pre.end(), f) != pre.end() ? d + 1 : 0;
                value = min(value, max(here, best(e.to, d + 1)));
            }
        }
        memo.emplace(key, value);
        return value;
    };
    return best(0, 0);
}

PlanSet OptimalPlanGraph::enumerate(size_t cap) const {
    PlanSet out;
    out.cost = cost_;
    if (!cost_)
        return out;
    vector<const Action *> stack;
    bool capped = false;
    function<void(int)> dfs = [&](int u) {
        if (capped)
            return;
        if (terminal[u]) {
            if (out.plans.size() == cap) {
                capped = true;
                return;
            }
            Plan p;
            for (const Action *a : stack)
                p.steps.push_back(*a);
            out.plans.push_back(move(p));
            return;
        }
        for (const Edge &e : edges[u]) {
            stack.push_back(&actions[e.action]);
            dfs(e.to);
            stack.pop_back();
            if (capped)
                return;
        }
    };
    dfs(0);
    out.complete = !capped;
    return out;
}

size_t OptimalPlanGraph::count_plans(size_t limit) const {
    if (!cost_)
        return 0;
    vector<size_t> memo(states.size(), 0);
    vector<char> done(states.size(), 0);
    function<size_t(int)> count = [&](int u) -> size_t {
        if (done[u])
            return memo[u];
        size_t n = terminal[u] ? 1 : 0;
        for (const Edge &e : edges[u]) {
            size_t c = count(e.to);
            n = (n > limit - c) ? limit : n + c;
        }
        done[u] = 1;
        return memo[u] = min(n, limit);
    };
    return count(0);
}

PlanSet enumerate_optimal_plans(const PlanningTask &task, size_t cap, const SearchBudget &budget) {
    auto goal = task.resolved_goal();
    if (!goal)
        return {};
    OptimalPlanGraph graph(task.actions, task.num_facts(), task.init, *goal, budget);
    if (graph.status() == SearchStatus::resource_limit)
        throw SearchLimitError("plan enumeration exhausted its budget");
    return graph.enumerate(cap);
}

}  // namespace counterplan
