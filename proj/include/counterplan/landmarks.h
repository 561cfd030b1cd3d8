#ifndef COUNTERPLAN_LANDMARKS_H
#define COUNTERPLAN_LANDMARKS_H

#include "counterplan/strips.h"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace counterplan {

struct FactLandmarkSet {
    std::vector<FactId> landmarks;                   // sorted
    std::map<FactId, std::vector<int>> first_achievers;  // action indices, diagnostic only
    bool unsolvable = false;                         // relaxed-unsolvable task: goal facts only

    bool contains(FactId f) const;
};

/*
  Fact landmarks by per-fact relaxed tests on the delete relaxation:
    f not in init: every relaxed plan must achieve f, i.e. dropping all
      achievers of f leaves the goal relaxed-unreachable;
    f in init: every relaxed plan must consume f, i.e. dropping all actions
      with f as a precondition leaves the goal relaxed-unreachable.
  Goal facts are always included. Initial-state landmarks found by the second
  test are kept because the seeker genuinely depends on them.
*/
FactLandmarkSet extract_landmarks(std::span<const Action> actions, std::size_t num_facts, const State &init,
                                  std::span<const FactId> goal);
FactLandmarkSet extract_landmarks(const PlanningTask &task);

// One landmark per line with its achiever and first-achiever counts.
std::string dump_landmarks(const FactLandmarkSet &lms, const FactTable &facts, std::span<const Action> actions);

}  // namespace counterplan

#endif
