#ifndef COUNTERPLAN_RECOGNITION_H
#define COUNTERPLAN_RECOGNITION_H

#include "counterplan/planner.h"
#include "counterplan/strips.h"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace counterplan {

using ObservationSequence = std::vector<Action>;

/*
  Adds a one-hot progress automaton "(obs-state j)" for j = 0..m tracking how
  many observations have been matched greedily. An action equal to the next
  expected observation must take the advancing copy; plain copies are
  disabled in exactly those automaton states. comply=true appends
  "(obs-state m)" to the goal, comply=false appends its negation, so optimal
  costs are c(G|O) and c(G|not O).
*/
PlanningTask compile_observations(const PlanningTask &task, const ObservationSequence &obs, bool comply);

struct RecognitionProblem {
    FactTablePtr facts;
    std::vector<Action> actions;
    State init;
    std::vector<Goal> candidates;
    ObservationSequence observations;
    std::vector<double> prior;  // empty means uniform
};

struct GoalCosts {
    std::optional<int> with_obs;     // c(G|O)
    std::optional<int> without_obs;  // c(G|not O)
    double delta = 0;                // -inf when c(G|not O) is undefined
};

struct RecognitionResult {
    std::vector<double> posterior;
    std::vector<int> most_probable;  // candidate indices, ascending
    std::vector<GoalCosts> costs;
};

class RecognitionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RecognitionOptions {
    double beta = 1.0;
    double epsilon = 1e-6;
    SearchBudget budget;
};

// Throws RecognitionError("no consistent goal") when no candidate is
// reachable while complying with the observations, and SearchLimitError
// when a planner call runs out of budget.
RecognitionResult recognize(const RecognitionProblem &problem, const RecognitionOptions &options = {});

// goal,c_with,c_without,delta,posterior per candidate; "inf" or "" for undefined values.
std::string recognition_csv(const RecognitionProblem &problem, const RecognitionResult &result, int iteration);

}  // namespace counterplan

#endif
