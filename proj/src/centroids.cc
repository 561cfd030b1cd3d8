#include "counterplan/centroids.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

using namespace std;

namespace counterplan {

void WeightedGoalSet::add(Goal goal, double weight) {
    if (!(weight > 0))
        throw invalid_argument("goal weights must be positive");
    sort(goal.begin(), goal.end());
    goal.erase(unique(goal.begin(), goal.end()), goal.end());
    for (WeightedGoal &e : entries_) {
        if (e.goal == goal) {
            e.weight += weight;
            return;
        }
    }
    entries_.push_back({move(goal), weight});
}

namespace {

// Average over reachable goals; nullopt if none is reachable.
optional<double> average(const State &s, const WeightedGoalSet &goals, span<const Action> actions,
                         const FactTable &facts, const CentroidOptions &options, const HMax *hmax) {
    double sum = 0;
    size_t reachable = 0;
    vector<int> relaxed;
    if (!options.exact)
        relaxed = hmax->fact_costs(s);
    for (const WeightedGoal &g : goals.entries()) {
        optional<int> cost;
        if (options.exact) {
            cost = optimal_cost(s, g.goal, actions, facts, options.budget);
        } else if (auto ids = goal_facts(facts, g.goal)) {
            int h = 0;
            for (FactId f : *ids)
                h = max(h, relaxed[f]);
            if (h != kInfinity)
                cost = h;
        }
        if (!cost) {
            spdlog::warn("goal {} is unreachable; dropped from the weighted average", goal_name(facts, g.goal));
            continue;
        }
        sum += g.weight * *cost;
        ++reachable;
    }
    if (reachable == 0)
        return nullopt;
    return sum / static_cast<double>(goals.size());
}

}  // namespace

double weighted_avg_cost(const State &s, const WeightedGoalSet &goals, span<const Action> actions,
                         const FactTable &facts, const CentroidOptions &options) {
    if (goals.empty())
        throw invalid_argument("weighted average over an empty goal set");
    HMax hmax(facts.size(), actions);
    auto avg = average(s, goals, actions, facts, options, &hmax);
    if (!avg)
        throw runtime_error("every goal is unreachable");
    return *avg;
}

optional<Action> get_first_action(const FactTable &facts, span<const Action> actions, const State &init,
                                  const WeightedGoalSet &goals, const CentroidOptions &options,
                                  vector<ActionScore> *table) {
    if (goals.empty())
        return nullopt;
    HMax hmax(facts.size(), actions);
    constexpr double inf = numeric_limits<double>::infinity();
    auto score = [&](const State &s) { return average(s, goals, actions, facts, options, &hmax).value_or(inf); };

    vector<int> order(actions.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<int>(i);
    stable_sort(order.begin(), order.end(), [&](int x, int y) { return actions[x].name < actions[y].name; });

    double best = score(init);
    if (table)
        table->push_back({noop_name(), best});
    int chosen = -1;
    for (int a : order) {
        if (!actions[a].applicable(init))
            continue;
        double c = score(apply(init, actions[a]));
        if (table)
            table->push_back({actions[a].name, c});
        if (c < best) {
            best = c;
            chosen = a;
        }
    }
    return chosen < 0 ? make_noop() : actions[chosen];
}

State extract_centroid(const FactTable &facts, span<const Action> actions, const State &init,
                       const WeightedGoalSet &goals, CentroidMode mode, const CentroidOptions &options,
                       size_t max_states) {
    if (goals.empty())
        throw invalid_argument("centroid of an empty goal set");
    if (mode == CentroidMode::greedy) {
        State cur = init;
        for (size_t step = 0; step < max_states; ++step) {
            optional<Action> a = get_first_action(facts, actions, cur, goals, options);
            if (!a || a->is_noop())
                return cur;
            cur = apply(cur, *a);
        }
        return cur;
    }

    HMax hmax(facts.size(), actions);
    deque<State> queue{init};
    unordered_map<State, bool, StateHash> seen{{init, true}};
    optional<State> best_state;
    double best = numeric_limits<double>::infinity();
    while (!queue.empty()) {
        State s = move(queue.front());
        queue.pop_front();
        if (auto c = average(s, goals, actions, facts, options, &hmax); c && *c < best) {
            best = *c;
            best_state = s;
        }
        for (const Action &a : actions) {
            if (!a.applicable(s))
                continue;
            State n = apply(s, a);
            if (seen.size() < max_states && seen.emplace(n, true).second)
                queue.push_back(move(n));
        }
    }
    if (!best_state)
        throw runtime_error("every goal is unreachable");
    return *best_state;
}

}  // namespace counterplan
