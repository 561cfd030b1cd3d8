#include "oracles.h"
#include "support.h"

#include "counterplan/bench.h"
#include "counterplan/landmarks.h"
#include "counterplan/recognition.h"

#include <doctest.h>

#include <cstdlib>
#include <numeric>
#include <sstream>

using namespace counterplan;
using testing_support::fixture_path;

namespace {

GeneratorConfig police(int grid, std::uint64_t seed) {
    GeneratorConfig g;
    g.grid = grid;
    g.seed = seed;
    g.booths = grid >= 6 ? 4 : 2;
    return g;
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string l; std::getline(ss, l);)
        out.push_back(l);
    return out;
}

// CSV without the timing column, which is the only nondeterministic field.
std::string untimed_csv(const SuiteReport &r) {
    std::string out;
    for (const std::string &l : lines(report(r, ReportFormat::csv))) {
        std::vector<std::string> cells;
        std::stringstream ss(l);
        for (std::string c; std::getline(ss, c, ',');)
            cells.push_back(c);
        cells.erase(cells.begin() + 6);
        for (const auto &c : cells)
            out += c + ",";
        out += "\n";
    }
    return out;
}

SuiteReport fake_suite(const std::vector<double> &E) {
    SuiteReport r;
    r.domain = "police-control";
    r.algorithms = {Mode::adicp};
    for (std::size_t i = 0; i < E.size(); ++i) {
        TaskRow row;
        row.task_id = static_cast<int>(i);
        row.metrics.E = E[i];
        row.metrics.ratio_seek = 0.25;
        row.metrics.len_prev = 3;
        row.metrics.status = E[i] == 1 ? "stopped" : "no-counterplan";
        r.rows.push_back(row);
    }
    return r;
}

}  // namespace

TEST_CASE("police generator is seed-deterministic") {
    TaskBundle a = gen_police_control(police(10, 42)), b = gen_police_control(police(10, 42));
    CHECK(a.seek_problem == b.seek_problem);
    CHECK(a.prev_problem == b.prev_problem);
    CHECK(a.truth == b.truth);
    CHECK(a.candidates.size() == 3);
    CHECK(gen_police_control(police(10, 43)).seek_problem != a.seek_problem);
}

TEST_CASE("police generator without obstacles frees every cell") {
    GeneratorConfig g = police(3, 5);
    g.obstacles = 0;
    g.booths = 2;
    TaskBundle b = gen_police_control(g);
    for (int x = 1; x <= 3; ++x)
        for (int y = 1; y <= 3; ++y)
            CHECK(b.seek_problem.find("(free c" + std::to_string(x) + "-" + std::to_string(y) + ")") !=
                  std::string::npos);
    CounterplanningTask t = build_task(b);
    for (std::size_t i = 0; i < t.candidates.size(); ++i)
        CHECK(solve_optimal(t.seek_task(static_cast<int>(i))).status == SearchStatus::solved);
    CHECK_THROWS(gen_police_control(police(2, 1)));
}

TEST_CASE("generated police tasks are solvable and the truth is a candidate") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        CounterplanningTask t = build_task(gen_police_control(police(5, seed)));
        REQUIRE(t.true_goal);
        CHECK(*t.true_goal < static_cast<int>(t.candidates.size()));
        for (const Goal &g : t.candidates) {
            auto cost = oracle::ucs_cost(t.seek_actions, oracle::to_facts(t.init, t.facts->size()),
                                         *goal_facts(*t.facts, g));
            CHECK(cost.has_value());
        }
    }
}

TEST_CASE("painted blocks generator") {
    GeneratorConfig g;
    g.domain = Domain::painted_blocks;
    g.seed = 9;
    TaskBundle a = gen_painted_blocks(g), b = gen_painted_blocks(g);
    CHECK(a.seek_problem == b.seek_problem);
    CHECK(a.candidates == b.candidates);
    CHECK(a.candidates.size() == 5);

    // Small instances are checked against the brute-force search.
    g.blocks = 4;
    g.rooms = 3;
    g.words = 3;
    g.min_word = g.max_word = 3;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        g.seed = seed;
        CounterplanningTask t = build_task(gen_painted_blocks(g));
        REQUIRE(t.true_goal);
        for (const Goal &goal : t.candidates)
            CHECK(oracle::ucs_cost(t.seek_actions, oracle::to_facts(t.init, t.facts->size()),
                                   *goal_facts(*t.facts, goal))
                      .has_value());
    }
}

TEST_CASE("a painter next to an exposed landmark block has a one-step counterplan") {
    GeneratorConfig g;
    g.domain = Domain::painted_blocks;
    TaskBundle b = gen_painted_blocks(g);
    const char *objects = "b1 b2 b3 - block r1 r2 - room";
    const char *init = "(handempty) (ontable b1) (ontable b2) (ontable b3) (clear b1) (clear b2) (clear b3) "
                       "(connected r1 r2) (connected r2 r1) (workshop r1) (paint-in r2) (prev-in r1) (has-paint)";
    auto problem = [&](const std::string &agent, const std::string &goal) {
        return "(define (problem exposed-" + agent + ") (:domain painted-blocks-words) (:agent " + agent +
               ") (:objects " + objects + ") (:init " + init + ")" + (goal.empty() ? "" : " (:goal " + goal + ")") +
               ")";
    };
    b.name = "exposed";
    b.candidates = {"(and (on b1 b2) (on b2 b3) (ontable b3))"};
    b.truth = b.candidates[0];
    b.seek_problem = problem("seek", b.truth);
    b.prev_problem = problem("prev", "");
    CounterplanningTask t = build_task(b);

    const int live[] = {0};
    auto cpl = extract_cpl(t, t.init, live);
    std::vector<std::string> painted;
    for (const CPLEntry &e : cpl) {
        CHECK(e.prev_cost == 1);
        painted.push_back(literal_name(*t.facts, e.landmark));
    }
    std::sort(painted.begin(), painted.end());
    CHECK(painted == std::vector<std::string>{"(painted b1)", "(painted b2)", "(painted b3)"});

    // Same set from the enumeration oracle.
    auto goal = *goal_facts(*t.facts, t.candidates[0]);
    std::vector<FactId> negation(t.facts->size());
    for (std::size_t f = 0; f < negation.size(); ++f)
        negation[f] = t.facts->twin(static_cast<FactId>(f));
    auto lms = extract_landmarks(t.seek_actions, t.facts->size(), t.init, goal).landmarks;
    std::vector<std::vector<FactId>> goals{goal}, landmarks{lms};
    auto expected = oracle::counterplanning_landmarks(t.seek_actions, t.prev_actions,
                                                     oracle::to_facts(t.init, t.facts->size()), goals, landmarks,
                                                     negation);
    CHECK(expected.size() == cpl.size());

    Plan seek = *solve_optimal(t.seek_task(0)).plan;
    EpisodeTrace e = adicp(t, seek, {});
    REQUIRE(e.counterplan);
    CHECK(e.counterplan->size() == 1);
    CHECK(e.counterplan->steps[0].name.rfind("(paint ", 0) == 0);
}

TEST_CASE("one task, four algorithms, four rows") {
    SuiteConfig c;
    c.generator = police(6, 3);
    c.n_tasks = 1;
    c.workers = 1;
    SuiteReport r = run_suite(c);
    REQUIRE(r.rows.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(r.rows[k].algorithm == c.algorithms[k]);
        CHECK(r.rows[k].error.empty());
    }
    CHECK(lines(report(r, ReportFormat::csv)).size() == 5);
}

TEST_CASE("walkthrough as a one-task suite") {
    SuiteConfig c;
    c.workers = 1;
    SuiteReport r = run_tasks({build_task(read_bundle(fixture_path("police_walkthrough")))}, c);
    for (const TaskRow &row : r.rows) {
        if (row.algorithm == Mode::adicp)
            CHECK(row.metrics.E == 1.0);
        if (row.algorithm == Mode::dicp)
            CHECK(row.metrics.E == 0.0);
    }
}

TEST_CASE("suite reports are reproducible across worker counts") {
    SuiteConfig c;
    c.generator = police(6, 11);
    c.n_tasks = 4;
    c.workers = 1;
    SuiteReport one = run_suite(c);
    c.workers = 3;
    SuiteReport three = run_suite(c);
    CHECK(untimed_csv(one) == untimed_csv(three));
}

TEST_CASE("report arithmetic and empty suites") {
    SuiteReport empty = fake_suite({});
    CHECK(lines(report(empty, ReportFormat::csv)).size() == 1);
    CHECK(lines(report(empty, ReportFormat::markdown)).size() == 2);

    auto one = fake_suite({1.0}).summary();
    REQUIRE(one.size() == 1);
    CHECK(one[0].E.mean == 1.0);
    CHECK(one[0].E.std == 0.0);
    CHECK(one[0].ratio_seek.mean == 0.25);

    auto two = fake_suite({0.0, 1.0}).summary();
    CHECK(two[0].E.mean == 0.5);
    CHECK(two[0].E.std == 0.5);  // population estimator
    // Conditional metrics only count the stopped task.
    CHECK(two[0].ratio_seek.n == 1);
    CHECK(two[0].len_prev.mean == 3.0);

    std::string md = report(fake_suite({0.0, 1.0}), ReportFormat::markdown);
    CHECK(md.find("0.50 ± 0.50") != std::string::npos);
    CHECK(report(fake_suite({1.0}), ReportFormat::json).find("\"stopped\": 1") != std::string::npos);
}

TEST_CASE("worker count resolution") {
    CHECK(worker_count(3) == 3);
    setenv("COUNTERPLAN_WORKERS", "5", 1);
    CHECK(worker_count(0) == 5);
    unsetenv("COUNTERPLAN_WORKERS");
    CHECK(worker_count(0) >= 1);
}

TEST_CASE("live candidate sets shrink along generated police episodes") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        CounterplanningTask t = build_task(gen_police_control(police(6, seed)));
        Plan plan = *solve_optimal(t.seek_task(*t.true_goal)).plan;
        for (Mode m : {Mode::dicp, Mode::adicp}) {
            AdicpConfig c;
            c.mode = m;
            EpisodeTrace e = adicp(t, plan, c);
            std::vector<int> previous(t.candidates.size());
            std::iota(previous.begin(), previous.end(), 0);
            for (const IterationRecord &r : e.iterations) {
                CHECK_FALSE(r.candidates.empty());
                CHECK(std::includes(previous.begin(), previous.end(), r.candidates.begin(), r.candidates.end()));
                previous = r.candidates;
            }
        }
    }
}
