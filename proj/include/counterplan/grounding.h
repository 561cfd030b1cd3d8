#ifndef COUNTERPLAN_GROUNDING_H
#define COUNTERPLAN_GROUNDING_H

#include "counterplan/pddl.h"
#include "counterplan/strips.h"

#include <stdexcept>

namespace counterplan {

class GroundingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GroundingOptions {
    std::size_t max_actions = 1'000'000;
};

/*
  Several problems over one domain grounded into a single fact universe
  (fact-name identity). Init is the union of all problems' inits; each
  problem gets the actions visible to its agent.
*/
struct JointGrounding {
    FactTablePtr facts;
    State init;
    std::vector<std::vector<Action>> actions;  // per problem
    std::vector<Goal> goals;                   // per problem
    std::vector<Goal> extra_goals;             // per extra goal condition
};

/*
  Grounds every schema over the typed objects, drops static predicates,
  prunes actions that are not relaxed-reachable from the joint init, and
  compiles negative literals into "(not p)" twin facts. Facts and actions are
  sorted by name.

  extra_goals are additional goal conditions whose atoms must exist in the
  fact universe even when unreachable (e.g. candidate seeker goals).
*/
JointGrounding ground_joint(const pddl::Domain &domain,
                            const std::vector<const pddl::Problem *> &problems,
                            const std::vector<std::vector<pddl::LiftedLiteral>> &extra_goals = {},
                            const GroundingOptions &options = {});

PlanningTask ground(const pddl::LiftedTask &task, const GroundingOptions &options = {});

// Parses a goal condition in lifted syntax against a domain and object set.
std::vector<pddl::LiftedLiteral> parse_lifted_goal(std::string_view text, const pddl::Domain &domain,
                                                   const std::vector<const pddl::Problem *> &problems);

}  // namespace counterplan

#endif
