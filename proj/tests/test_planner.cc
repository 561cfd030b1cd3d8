#include "oracles.h"
#include "support.h"

#include "counterplan/planner.h"

#include <doctest.h>

using namespace counterplan;
using testing_support::Grid;
using testing_support::TinyBuilder;

namespace {

PlanningTask to_task(const oracle::RandomTask &t) {
    auto table = std::make_shared<FactTable>(t.names, std::vector<FactId>(t.names.size(), kNoFact));
    Goal goal;
    for (FactId f : t.goal)
        goal.push_back({f, true});
    return {table, t.actions, State(t.names.size(), t.init), goal};
}

std::set<std::vector<std::string>> names_of(const PlanSet &ps) {
    std::set<std::vector<std::string>> out;
    for (const Plan &p : ps.plans) {
        std::vector<std::string> seq;
        for (const Action &a : p.steps)
            seq.push_back(a.name);
        out.insert(seq);
    }
    return out;
}

// Reference laststep: max 1-based index needing f, goal facts count past the end.
int ref_laststep(const std::vector<std::string> &plan, const std::vector<Action> &actions, FactId f, bool in_goal) {
    int last = in_goal ? static_cast<int>(plan.size()) + 1 : 0;
    for (std::size_t i = 0; i < plan.size(); ++i)
        for (const Action &a : actions)
            if (a.name == plan[i] && std::find(a.pre.begin(), a.pre.end(), f) != a.pre.end())
                last = std::max(last, static_cast<int>(i) + 1);
    return last;
}

}  // namespace

TEST_CASE("goal already true gives the empty plan") {
    Grid g(3);
    SearchResult r = solve_optimal(g.task(2, 2, 2, 2));
    REQUIRE(r.status == SearchStatus::solved);
    CHECK(r.plan->empty());
    CHECK(*r.cost == 0);
}

TEST_CASE("corner to corner on an open 3x3 grid") {
    Grid g(3);
    PlanningTask task = g.task(1, 1, 3, 3);
    SearchResult r = solve_optimal(task);
    auto oracle_cost = oracle::ucs_cost(task.actions, {g.at(1, 1)}, {g.at(3, 3)});
    REQUIRE(oracle_cost);
    CHECK(*oracle_cost == 4);
    CHECK(*r.cost == *oracle_cost);
    CHECK(check_plan(task, *r.plan) == PlanCheck::valid);
}

TEST_CASE("a goal fact without achievers is unsolvable") {
    TinyBuilder b;
    Action a = b.action("(a)", {"p"}, {"q"}, {});
    b.fact("r");
    PlanningTask task{b.table(), {a}, b.state({"p"}), {{b.fact("r"), true}}};
    CHECK(solve_optimal(task).status == SearchStatus::unsolvable);
    CHECK_FALSE(optimal_cost(task.init, task.goal, task.actions, *task.facts).has_value());
}

TEST_CASE("node budget yields resource-limit") {
    Grid g(6);
    SearchBudget tiny;
    tiny.max_nodes = 3;
    PlanningTask task = g.task(1, 1, 6, 6);
    CHECK(solve_optimal(task, tiny).status == SearchStatus::resource_limit);
    CHECK_THROWS_AS(optimal_cost(task.init, task.goal, task.actions, *task.facts, tiny), SearchLimitError);
}

TEST_CASE("h_max basics") {
    TinyBuilder b;
    Action a = b.action("(a)", {"p"}, {"q"}, {});
    HMax h(b.names.size(), std::span<const Action>(&a, 1));
    std::vector<FactId> q = {b.fact("q")}, p = {b.fact("p")};
    CHECK(h(b.state({"q"}), q) == 0);
    CHECK(h(b.state({"p"}), q) == 1);
    CHECK(h(b.state({}), q) == kInfinity);
    CHECK(h(b.state({}), std::span<const FactId>{}) == 0);
}

TEST_CASE("h_max is admissible on sampled 4x4 grid states") {
    Grid g(4, {"2-2", "3-3"});
    HMax h(g.b.names.size(), g.actions);
    std::mt19937_64 rng(11);
    int checked = 0;
    while (checked < 100) {
        int sx = 1 + rng() % 4, sy = 1 + rng() % 4, gx = 1 + rng() % 4, gy = 1 + rng() % 4;
        if (Grid::name(sx, sy) == "2-2" || Grid::name(sx, sy) == "3-3")
            continue;
        auto exact = oracle::ucs_cost(g.actions, {g.at(sx, sy)}, {g.at(gx, gy)});
        int est = h(g.state_at(sx, sy), std::vector<FactId>{g.at(gx, gy)});
        if (exact)
            CHECK(est <= *exact);
        else
            CHECK(est == kInfinity);
        ++checked;
    }
}

TEST_CASE("plan enumeration on grids") {
    Grid two(2);
    PlanSet all = enumerate_optimal_plans(two.task(1, 1, 2, 2), 100);
    CHECK(all.plans.size() == 2);
    CHECK(all.complete);
    CHECK(*all.cost == 2);
    PlanSet one = enumerate_optimal_plans(two.task(1, 1, 2, 2), 1);
    CHECK(one.plans.size() == 1);
    CHECK_FALSE(one.complete);

    Grid strip(3, {"1-2", "2-2", "3-2", "1-3", "2-3", "3-3"});
    PlanSet corridor_plans = enumerate_optimal_plans(strip.task(1, 1, 3, 1), 100);
    CHECK(corridor_plans.plans.size() == 1);
    CHECK(corridor_plans.complete);
}

TEST_CASE("unsolvable enumeration is empty and complete") {
    Grid g(3, {"2-1", "2-2", "2-3"});
    PlanSet ps = enumerate_optimal_plans(g.task(1, 1, 3, 3), 10);
    CHECK(ps.plans.empty());
    CHECK(ps.complete);
    CHECK_FALSE(ps.cost.has_value());
}

TEST_CASE("random tasks agree with brute force") {
    std::mt19937_64 rng(20240601);
    int solvable = 0;
    for (int trial = 0; trial < 150; ++trial) {
        oracle::RandomTask rt = oracle::random_task(rng, 8, 10);
        PlanningTask task = to_task(rt);
        auto expected = oracle::ucs_cost(rt.actions, rt.init, rt.goal);
        SearchResult r = solve_optimal(task);
        REQUIRE(r.status != SearchStatus::resource_limit);
        CHECK(r.cost == expected);
        if (!expected)
            continue;
        ++solvable;
        CHECK(check_plan(task, *r.plan) == PlanCheck::valid);
        CHECK(plan_cost(*r.plan) == *expected);

        auto oracle_plans = oracle::all_optimal_plans(rt.actions, rt.init, rt.goal);
        OptimalPlanGraph graph(task.actions, task.num_facts(), task.init, rt.goal);
        PlanSet ps = graph.enumerate(100000);
        CHECK(ps.complete);
        CHECK(names_of(ps) == oracle_plans);
        CHECK(graph.count_plans() == oracle_plans.size());
        for (FactId f = 0; f < static_cast<FactId>(rt.names.size()); ++f) {
            bool in_goal = std::binary_search(rt.goal.begin(), rt.goal.end(), f);
            int best = oracle::kInf;
            for (const auto &p : oracle_plans)
                best = std::min(best, ref_laststep(p, rt.actions, f, in_goal));
            CHECK(graph.min_laststep(f) == best);
        }
    }
    CHECK(solvable > 30);
}

TEST_CASE("search is deterministic") {
    Grid g(5);
    SearchResult a = solve_optimal(g.task(1, 1, 5, 5));
    SearchResult b = solve_optimal(g.task(1, 1, 5, 5));
    CHECK(a.plan == b.plan);
}
