#ifndef COUNTERPLAN_PLANNER_H
#define COUNTERPLAN_PLANNER_H

#include "counterplan/strips.h"

#include <chrono>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace counterplan {

constexpr int kInfinity = std::numeric_limits<int>::max();

struct SearchBudget {
    std::size_t max_nodes = 1'000'000;
    double max_seconds = 600.0;
};

enum class SearchStatus { solved, unsolvable, resource_limit };
const char *status_name(SearchStatus status);

struct SearchResult {
    std::optional<Plan> plan;
    std::optional<int> cost;
    std::size_t expanded = 0;
    SearchStatus status = SearchStatus::unsolvable;
};

// Raised by the convenience queries that have no way to report a partial answer.
class SearchLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// h_max over one action set. Tables are built once; evaluation is reentrant.
class HMax {
    std::size_t num_facts;
    std::span<const Action> actions;
    std::vector<std::vector<int>> pre_of;  // fact -> actions with it as precondition
    std::vector<int> no_pre;

public:
    HMax(std::size_t num_facts, std::span<const Action> actions);
    // kInfinity when some goal fact is relaxed-unreachable.
    int operator()(const State &s, std::span<const FactId> goal) const;
    // Cost of every fact; kInfinity for unreachable ones.
    std::vector<int> fact_costs(const State &s) const;
};

// A* with h_max. Ties: smaller f, then smaller h, then generation order;
// successors are generated in name order, so the result is deterministic.
SearchResult solve_optimal(const PlanningTask &task, const SearchBudget &budget = {});
SearchResult solve_optimal(std::span<const Action> actions, std::size_t num_facts, const State &init,
                           std::span<const FactId> goal, const SearchBudget &budget = {});

// h*(init, goal); nullopt if unsolvable. Throws SearchLimitError on budget.
std::optional<int> optimal_cost(const State &init, const Goal &goal, std::span<const Action> actions,
                                const FactTable &facts, const SearchBudget &budget = {});

struct PlanSet {
    std::vector<Plan> plans;
    std::optional<int> cost;
    bool complete = true;
};

/*
  Every state on some cost-optimal plan together with the g-tight
  transitions between them. Built by a Dijkstra sweep pruned at
  g + h_max > C* followed by a backward pass that keeps only states from
  which an optimal goal state is reachable. Action costs must be positive.
*/
class OptimalPlanGraph {
public:
    struct Edge {
        int action;  // index into the action span
        int to;
    };

    OptimalPlanGraph(std::span<const Action> actions, std::size_t num_facts, const State &init,
                     std::span<const FactId> goal, const SearchBudget &budget = {});

    SearchStatus status() const { return status_; }
    std::optional<int> cost() const { return cost_; }
    std::size_t num_nodes() const { return states.size(); }

    // Minimum over all optimal plans of the last 1-based step whose
    // precondition contains f. A goal fact counts as |plan|+1; a fact that is
    // never needed gives 0. nullopt if the task is unsolvable.
    std::optional<int> min_laststep(FactId f) const;
    // Up to `cap` plans in canonical order; `complete` is false if capped.
    PlanSet enumerate(std::size_t cap) const;
    // Number of distinct optimal plans, saturating at `limit`.
    std::size_t count_plans(std::size_t limit = std::numeric_limits<std::size_t>::max()) const;

private:
    std::span<const Action> actions;
    std::vector<FactId> goal;
    SearchStatus status_ = SearchStatus::unsolvable;
    std::optional<int> cost_;
    std::vector<State> states;              // node 0 is init
    std::vector<std::vector<Edge>> edges;   // only edges between alive nodes
    std::vector<bool> terminal;             // goal state reached at cost C*
    std::vector<int> depth;                 // steps from init; equal on all paths for unit costs
    bool unit_costs = true;
};

PlanSet enumerate_optimal_plans(const PlanningTask &task, std::size_t cap, const SearchBudget &budget = {});

// Wall-clock and node accounting shared by the searches.
class BudgetClock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    SearchBudget budget;
    std::size_t nodes = 0;

public:
    explicit BudgetClock(const SearchBudget &budget) : budget(budget) {}
    // Counts one expansion; false once either limit is exceeded.
    bool tick();
    std::size_t expanded() const { return nodes; }
};

}  // namespace counterplan

#endif
