#ifndef COUNTERPLAN_TASK_H
#define COUNTERPLAN_TASK_H

#include "counterplan/strips.h"

#include <optional>
#include <string>
#include <vector>

namespace counterplan {

/*
  A two-agent counterplanning instance over one shared fact universe.
  `init` is the composite state I_c (union of both agents' initial states).
  The true seeker goal is an index into `candidates`; algorithms must not
  read it, only the harness does.
*/
struct CounterplanningTask {
    std::string name;
    FactTablePtr facts;
    State init;
    std::vector<Action> seek_actions;
    std::vector<Action> prev_actions;
    std::vector<Goal> candidates;
    std::optional<int> true_goal;

    PlanningTask seek_task(int candidate) const { return {facts, seek_actions, init, candidates.at(candidate)}; }
    PlanningTask seek_task(const State &from, int candidate) const {
        return {facts, seek_actions, from, candidates.at(candidate)};
    }
    const Action *find_seek_action(const std::string &name) const;
    const Action *find_prev_action(const std::string &name) const;
};

// On-disk bundle: domain.pddl, seek.pddl, prev.pddl, candidates.txt (one
// goal condition per line) and an optional truth.txt holding the hidden goal.
struct TaskBundle {
    std::string name;
    std::string domain;
    std::string seek_problem;
    std::string prev_problem;
    std::vector<std::string> candidates;
    std::string truth;  // empty when unknown
};

TaskBundle read_bundle(const std::string &dir);
void write_bundle(const std::string &dir, const TaskBundle &bundle);
// Parses and grounds both problems jointly. Throws on malformed input or a
// truth goal that is not among the candidates.
CounterplanningTask build_task(const TaskBundle &bundle);

}  // namespace counterplan

#endif
