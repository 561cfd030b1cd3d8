#ifndef COUNTERPLAN_SIMULATOR_H
#define COUNTERPLAN_SIMULATOR_H

#include "counterplan/counterplanning.h"
#include "counterplan/planner.h"
#include "counterplan/strips.h"
#include "counterplan/task.h"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace counterplan {

// del(a1) meets pre(a2) or add(a2), or the same with the roles swapped.
bool interferes(const Action &a1, const Action &a2);

/*
  One joint step. A no-op on either side reduces to the other agent's gamma.
  Interfering actions leave the state unchanged for both agents. Otherwise
  each action whose precondition holds in s fires; the other is absorbed.
*/
State joint_apply(const State &s, const Action &a1, const Action &a2);

// Stepwise joint_apply; the longer plan finishes alone.
State joint_execute(const State &s, const Plan &p1, const Plan &p2);

enum class Verdict { valid, invalid, indeterminate };
const char *verdict_name(Verdict v);

/*
  Joint execution of prev_plan with seek_plan from `from`, then a planner
  call per live candidate: valid iff every one is unsolvable from the
  resulting state. A planner budget hit gives indeterminate.
*/
Verdict validate_counterplan(const CounterplanningTask &task, const State &from, const Plan &prev_plan,
                             const Plan &seek_plan, std::span<const int> live_candidates,
                             const SearchBudget &budget = {});

/*
  Brute-force strong-plan check: for every opponent sequence of exactly
  `horizon` steps over its actions plus the no-op (shorter sequences are
  covered by trailing no-ops), the joint execution must reach `goal`.
  nullopt when more than max_sequences sequences would be needed.
*/
std::optional<bool> check_strong_small(const Plan &plan, std::span<const Action> opponent, const State &s,
                                       const FactTable &facts, const Goal &goal, int horizon,
                                       std::size_t max_sequences = 2'000'000);

/*
  Episode scores from re-executing the seeker plan and the returned preventer
  plan jointly from the original composite state. E is 1 when the seeker's
  true goal (or, without one, every final live candidate) is unreachable
  afterwards. ratio_seek counts seeker steps that took effect before the
  first absorbed one. len_prev ignores no-ops; ratio_anticipatory is the
  share of those actions taken before the counterplan.
*/
struct Metrics {
    double E = 0;
    double ratio_seek = 0;
    int len_prev = 0;
    double ratio_anticipatory = 0;
    double time_avg_s = 0;
    std::string status;  // stopped, not-stopped, no-counterplan or budget
};

Metrics score_episode(const CounterplanningTask &task, const Plan &seeker_plan, EpisodeTrace &trace,
                      const SearchBudget &budget = {});

struct Episode {
    EpisodeTrace trace;
    Metrics metrics;
};

Episode run_episode(const CounterplanningTask &task, const Plan &seeker_plan, const AdicpConfig &config = {});

}  // namespace counterplan

#endif
