#include "oracles.h"
#include "support.h"

#include "counterplan/planner.h"
#include "counterplan/recognition.h"
#include "counterplan/task.h"

#include <doctest.h>

using namespace counterplan;
using testing_support::fixture_path;
using testing_support::Grid;

namespace {

int cost_of(const PlanningTask &t) {
    auto c = optimal_cost(t.init, t.goal, t.actions, *t.facts);
    REQUIRE(c);
    return *c;
}

const Action &named(const std::vector<Action> &actions, const std::string &name) {
    for (const Action &a : actions)
        if (a.name == name)
            return a;
    throw std::runtime_error("no action " + name);
}

RecognitionProblem grid_problem(Grid &g, int sx, int sy, std::vector<std::pair<int, int>> goals) {
    RecognitionProblem p{g.b.table(), g.actions, g.state_at(sx, sy), {}, {}, {}};
    for (auto [x, y] : goals)
        p.candidates.push_back({{g.at(x, y), true}});
    return p;
}

}  // namespace

TEST_CASE("compiled costs with trivial observation sequences") {
    Grid g(3);
    PlanningTask task = g.task(1, 1, 3, 3);
    CHECK(cost_of(compile_observations(task, {}, true)) == 4);
    SearchResult r = solve_optimal(task);
    CHECK(cost_of(compile_observations(task, r.plan->steps, true)) == 4);
}

TEST_CASE("an off-path observation costs the detour") {
    Grid g(3);
    PlanningTask task = g.task(1, 1, 1, 3);
    const Action &detour = named(g.actions, "(move 3-1 3-2)");
    int expected = *oracle::ucs_cost(g.actions, {g.at(1, 1)}, {g.at(3, 1)}) + 1 +
                   *oracle::ucs_cost(g.actions, {g.at(3, 2)}, {g.at(1, 3)});
    CHECK(expected == 6);
    CHECK(cost_of(compile_observations(task, {detour}, true)) == expected);
    // Avoiding the observation is free here.
    CHECK(cost_of(compile_observations(task, {detour}, false)) == 2);
}

TEST_CASE("non-compliance is impossible when every plan embeds the observation") {
    Grid g(3, {"2-2", "1-2", "2-3", "3-3", "1-3", "3-2"});
    // Only corridor 1-1 -> 2-1 -> 3-1 remains.
    PlanningTask task = g.task(1, 1, 3, 1);
    PlanningTask no = compile_observations(task, {named(g.actions, "(move 1-1 2-1)")}, false);
    CHECK_FALSE(optimal_cost(no.init, no.goal, no.actions, *no.facts).has_value());
}

TEST_CASE("empty observations make every reachable goal equally likely") {
    Grid g(4);
    RecognitionProblem p = grid_problem(g, 2, 2, {{1, 1}, {4, 4}, {1, 4}});
    RecognitionResult r = recognize(p);
    CHECK(r.most_probable == std::vector<int>{0, 1, 2});
    for (double x : r.posterior)
        CHECK(x == doctest::Approx(1.0 / 3));
}

TEST_CASE("a prefix toward one end of a corridor singles out that end") {
    Grid g(5, {"1-2", "2-2", "3-2", "4-2", "5-2", "1-3", "2-3", "3-3", "4-3", "5-3", "1-4", "2-4", "3-4",
               "4-4", "5-4", "1-5", "2-5", "3-5", "4-5", "5-5"});
    RecognitionProblem p = grid_problem(g, 3, 1, {{1, 1}, {5, 1}});
    p.observations = {named(g.actions, "(move 3-1 4-1)")};
    RecognitionResult r = recognize(p);
    CHECK(r.most_probable == std::vector<int>{1});
    // Left end: complying costs 1 + 3, avoiding costs 2. The right end cannot avoid the step.
    CHECK(*r.costs[0].with_obs == 4);
    CHECK(*r.costs[0].without_obs == 2);
    CHECK(*r.costs[1].with_obs == 2);
    CHECK_FALSE(r.costs[1].without_obs.has_value());
    double total = r.posterior[0] + r.posterior[1];
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("unreachable candidates get zero and all-unreachable is an error") {
    Grid g(3, {"2-1", "2-2", "2-3"});
    RecognitionProblem p = grid_problem(g, 1, 1, {{3, 3}, {1, 3}});
    RecognitionResult r = recognize(p);
    CHECK(r.posterior[0] == 0.0);
    CHECK(r.most_probable == std::vector<int>{1});
    RecognitionProblem none = grid_problem(g, 1, 1, {{3, 3}, {3, 1}});
    CHECK_THROWS_WITH_AS(recognize(none), "no consistent goal", RecognitionError);
}

TEST_CASE("prefixes of optimal plans minimise delta") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        Grid g(4, {"2-2"});
        int sx = 1, sy = 1;
        std::vector<std::pair<int, int>> goals = {{4, 4}, {4, 1}, {1, 4}};
        RecognitionProblem p = grid_problem(g, sx, sy, goals);
        // Random one-step observation.
        std::vector<const Action *> applicable;
        for (const Action &a : g.actions)
            if (a.applicable(p.init))
                applicable.push_back(&a);
        p.observations = {*applicable[rng() % applicable.size()]};
        RecognitionResult r = recognize(p);
        std::vector<bool> consistent;
        for (auto [x, y] : goals) {
            auto plans = oracle::all_optimal_plans(g.actions, {g.at(sx, sy)}, {g.at(x, y)});
            bool any = false;
            for (const auto &plan : plans)
                any = any || (!plan.empty() && plan[0] == p.observations[0].name);
            consistent.push_back(any);
        }
        for (std::size_t i = 0; i < goals.size(); ++i)
            for (std::size_t j = 0; j < goals.size(); ++j)
                if (consistent[i] && !consistent[j])
                    CHECK(r.costs[i].delta <= r.costs[j].delta);
    }
}

TEST_CASE("walkthrough recognition anchors") {
    CounterplanningTask task = build_task(read_bundle(fixture_path("police_walkthrough")));
    RecognitionProblem p{task.facts, task.seek_actions, task.init, task.candidates, {}, {}};
    RecognitionResult start = recognize(p);
    CHECK(start.most_probable == std::vector<int>{0, 1, 2});
    p.observations = {*task.find_seek_action("(move c1-1 c1-2)")};
    RecognitionResult after = recognize(p);
    CHECK(after.most_probable == std::vector<int>{0, 1});
    CHECK(after.costs[0].delta == 0);
    CHECK(after.costs[1].delta == 0);
    CHECK(after.costs[2].delta == 2);
}
