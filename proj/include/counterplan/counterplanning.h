#ifndef COUNTERPLAN_COUNTERPLANNING_H
#define COUNTERPLAN_COUNTERPLANNING_H

#include "counterplan/centroids.h"
#include "counterplan/planner.h"
#include "counterplan/recognition.h"
#include "counterplan/strips.h"
#include "counterplan/task.h"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace counterplan {

// One seeker task per live candidate, all starting from `from`.
std::vector<PlanningTask> potential_tasks(const CounterplanningTask &task, const State &from,
                                          std::span<const int> live);

// Last 1-based step whose precondition holds L. A goal fact counts as at
// least |plan|+1 and a fact the plan never needs gives 0.
int laststep(FactId fact, const Plan &plan, std::span<const FactId> goal);

/*
  A seeker fact the preventer can falsify in time. `landmark` carries the
  polarity the preventer must impose, so its fact is the seeker's fact with
  positive == false. Entries whose optimal-plan graph hit the search budget
  are kept but flagged unverified.
*/
struct CPLEntry {
    Literal landmark;
    int prev_cost = 0;
    int min_laststep = 0;
    bool verified = true;

    FactId fact() const { return landmark.fact; }
    bool operator==(const CPLEntry &) const = default;
};

// Individual landmarks per live candidate. The flattened multiset counts a
// landmark once for every goal that lists it.
struct CPList {
    std::vector<std::pair<int, std::vector<CPLEntry>>> per_goal;  // candidate index, entries by fact

    std::vector<CPLEntry> flattened() const;
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    std::size_t count(FactId fact) const;
};

struct CPLReport {
    std::vector<CPLEntry> common;  // extract_cpl
    CPList individual;             // extract_list_of_cpl
};

/*
  Both landmark views in one pass. For each live candidate the seeker task
  from `from` yields a landmark set and an optimal-plan graph; a fact f
  qualifies for a goal when some preventer action deletes it and
  min_laststep(f) >= c*(prev, not f). Candidates already unreachable from
  `from` contribute nothing and do not constrain the common set.
*/
CPLReport analyze_cpl(const CounterplanningTask &task, const State &from, std::span<const int> live,
                      const SearchBudget &budget = {});
std::vector<CPLEntry> extract_cpl(const CounterplanningTask &task, const State &from, std::span<const int> live,
                                  const SearchBudget &budget = {});
CPList extract_list_of_cpl(const CounterplanningTask &task, const State &from, std::span<const int> live,
                           const SearchBudget &budget = {});

// Weight of each distinct landmark = its multiplicity / |flattened list|.
// Throws std::invalid_argument on an empty list.
WeightedGoalSet rank(const CPList &list);

enum class Strategy { closest_to_seek, closest_to_prev };
const char *strategy_name(Strategy s);
Strategy parse_strategy(const std::string &name);

// Verified entries first, then the strategy's key, then the other key, then fact id.
const CPLEntry &select_goal(std::span<const CPLEntry> cpl, Strategy strategy);

enum class Mode { dicp, adicp, random, random_goal };
const char *mode_name(Mode m);
Mode parse_mode(const std::string &name);

/*
  Episode-scoped preventer policy for the steps before a counterplan exists.
  The random-goal target is drawn on the first call with a nonempty list and
  kept for the rest of the episode.
*/
class Anticipator {
public:
    Anticipator(Mode mode, std::uint64_t seed, CentroidOptions options = {});
    Action next(const CounterplanningTask &task, const CPList &list, const State &composite);
    std::optional<Literal> random_goal() const { return target; }

private:
    Mode mode;
    std::mt19937_64 rng;
    CentroidOptions options;
    std::optional<Literal> target;
};

struct AdicpConfig {
    Mode mode = Mode::adicp;
    Strategy strategy = Strategy::closest_to_seek;
    std::uint64_t seed = 0;
    SearchBudget budget;
    RecognitionOptions recognition;
    CentroidOptions centroid;
};

struct IterationRecord {
    int iteration = 0;
    bool recognized = false;            // recognition ran this iteration
    std::vector<int> candidates;        // live set after this iteration's update
    std::size_t common_cpl = 0;
    std::size_t individual_cpl = 0;     // flattened size
    std::string seek_action;            // empty when a counterplan ended the loop
    std::string prev_action;
    bool seek_effective = false;
    bool budget_hit = false;
    double seconds = 0;
};

struct JointStep {
    std::string seek_action;
    std::string prev_action;
    State state;
};

struct EpisodeTrace {
    std::vector<IterationRecord> iterations;
    std::vector<JointStep> joint_steps;
    Plan anticipatory_prefix;           // includes no-ops to stay aligned with the seeker
    std::optional<Plan> counterplan;
    std::optional<CPLEntry> target;     // landmark the counterplan falsifies
    bool stopped = false;               // set by run_episode after re-execution
    bool budget_hit = false;

    Plan prev_plan() const;             // prefix followed by the counterplan, if any
};

// Anticipatory (or reactive, with Mode::dicp) counterplanning against a
// seeker that follows seeker_plan step by step.
EpisodeTrace adicp(const CounterplanningTask &task, const Plan &seeker_plan, const AdicpConfig &config = {});

// One JSON object per line: an "iteration" record per loop pass, then one
// "result" record.
std::string format_trace(const EpisodeTrace &trace, const CounterplanningTask &task);

}  // namespace counterplan

#endif
