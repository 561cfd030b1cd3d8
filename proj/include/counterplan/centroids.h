#ifndef COUNTERPLAN_CENTROIDS_H
#define COUNTERPLAN_CENTROIDS_H

#include "counterplan/planner.h"
#include "counterplan/strips.h"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace counterplan {

struct WeightedGoal {
    Goal goal;
    double weight = 1.0;
};

// Goals with positive weights; adding an existing goal sums the weights.
class WeightedGoalSet {
    std::vector<WeightedGoal> entries_;

public:
    void add(Goal goal, double weight);
    const std::vector<WeightedGoal> &entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
};

struct CentroidOptions {
    bool exact = false;  // optimal costs instead of h_max estimates
    SearchBudget budget;
};

/*
  (1/|G|) * sum of w_G * cost(s, G). Goals unreachable from s are dropped
  from the sum with a warning while the divisor stays |G|. Throws
  std::runtime_error if every goal is unreachable.
*/
double weighted_avg_cost(const State &s, const WeightedGoalSet &goals, std::span<const Action> actions,
                         const FactTable &facts, const CentroidOptions &options = {});

/*
  Greedy mode hill-climbs with get_first_action until no action strictly
  improves the average. Exhaustive mode scans every reachable state (up to
  max_states) and returns the first minimiser in breadth-first order.
*/
enum class CentroidMode { greedy, exhaustive };
State extract_centroid(const FactTable &facts, std::span<const Action> actions, const State &init,
                       const WeightedGoalSet &goals, CentroidMode mode = CentroidMode::greedy,
                       const CentroidOptions &options = {}, std::size_t max_states = 100000);

/*
  Evaluates the no-op and every applicable action. An action replaces the
  no-op only if it strictly lowers the average; among equally good actions
  the first in name order wins. Returns the no-op when nothing improves and
  nullopt only when the goal set is empty.
*/
struct ActionScore {
    std::string action;
    double cost;
};
std::optional<Action> get_first_action(const FactTable &facts, std::span<const Action> actions, const State &init,
                                       const WeightedGoalSet &goals, const CentroidOptions &options = {},
                                       std::vector<ActionScore> *table = nullptr);

}  // namespace counterplan

#endif
