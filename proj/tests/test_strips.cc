#include "support.h"

#include "counterplan/strips.h"

#include <doctest.h>

#include <random>

using namespace counterplan;
using testing_support::TinyBuilder;

TEST_CASE("apply follows gamma including absorption") {
    TinyBuilder b;
    Action a = b.action("(a)", {"p"}, {"q"}, {"p"});
    State s = b.state({"p"});
    CHECK(apply(s, a) == b.state({"q"}));
    State empty = b.state({});
    CHECK(apply(empty, a) == empty);
    CHECK(apply(s, make_noop()) == s);
}

TEST_CASE("execute is a left fold and splits over concatenation") {
    TinyBuilder b;
    Action ab = b.action("(ab)", {"a"}, {"b"}, {"a"});
    Action bc = b.action("(bc)", {"b"}, {"c"}, {"b"});
    Action ca = b.action("(ca)", {"c"}, {"a"}, {"c"});
    State s = b.state({"a"});
    CHECK(execute(s, Plan{}) == s);
    std::vector<Action> pool = {ab, bc, ca, make_noop()};
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Plan p1, p2;
        for (int i = 0; i < 4; ++i) {
            p1.steps.push_back(pool[rng() % pool.size()]);
            p2.steps.push_back(pool[rng() % pool.size()]);
        }
        CHECK(execute(s, concat(p1, p2)) == execute(execute(s, p1), p2));
    }
}

TEST_CASE("plan cost sums action costs") {
    TinyBuilder b;
    CHECK(plan_cost(Plan{}) == 0);
    Plan unit{{b.action("(x)", {}, {}, {}), b.action("(y)", {}, {}, {}), b.action("(z)", {}, {}, {})}};
    CHECK(plan_cost(unit) == 3);
    Plan mixed{{b.action("(x)", {}, {}, {}, 1), b.action("(y)", {}, {}, {}, 2), b.action("(z)", {}, {}, {}, 0)}};
    CHECK(plan_cost(mixed) == 3);
}

TEST_CASE("strict validator reports the failing step") {
    TinyBuilder b;
    Action ab = b.action("(ab)", {"a"}, {"b"}, {"a"});
    Action bc = b.action("(bc)", {"b"}, {"c"}, {"b"});
    PlanningTask task{b.table(), {ab, bc}, b.state({"a"}), {{b.fact("c"), true}}};
    CHECK(check_plan(task, Plan{{ab, bc}}) == PlanCheck::valid);
    CHECK(check_plan(task, Plan{{ab}}) == PlanCheck::goal_not_reached);
    std::size_t failed = 99;
    CHECK(check_plan(task, Plan{{bc, ab}}, &failed) == PlanCheck::inapplicable_step);
    CHECK(failed == 0);
}

TEST_CASE("plan text round trip") {
    TinyBuilder b;
    std::vector<Action> actions = {b.action("(move a b)", {}, {}, {}), b.action("(move b c)", {}, {}, {})};
    Plan p{{actions[1], make_noop(), actions[0]}};
    std::string text = format_plan(p);
    CHECK(text == "(move b c)\n(no-op)\n(move a b)\n; cost = 2\n");
    CHECK(parse_plan(text, actions) == p);
    CHECK(parse_plan("(MOVE A B)\n", actions).steps.front().name == "(move a b)");
    CHECK_THROWS(parse_plan("(jump)\n", actions));
}

TEST_CASE("goal parsing resolves negative literals through twins") {
    auto table = std::make_shared<FactTable>(std::vector<std::string>{"(not (p))", "(p)"},
                                             std::vector<FactId>{1, 0});
    Goal g = parse_goal(*table, "(and (p) (not (p)))");
    REQUIRE(g.size() == 2);
    CHECK(literal_name(*table, g[1]) == "(not (p))");
    auto facts = goal_facts(*table, {{1, false}});
    REQUIRE(facts);
    CHECK(*facts == std::vector<FactId>{0});
    CHECK_THROWS(parse_goal(*table, "(q)"));
}
