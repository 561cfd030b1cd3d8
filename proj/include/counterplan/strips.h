#ifndef COUNTERPLAN_STRIPS_H
#define COUNTERPLAN_STRIPS_H

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace counterplan {

using FactId = int;
constexpr FactId kNoFact = -1;

struct Fact {
    FactId id = kNoFact;
    std::string name;
};

/*
  Fact universe of a grounded task. Every fluent atom p has a twin
  "(not p)" kept consistent by all action effects, so negative literals
  resolve to ordinary positive facts.
*/
class FactTable {
    std::vector<std::string> names;
    std::vector<FactId> twins;
    std::unordered_map<std::string, FactId> ids;

public:
    FactTable() = default;
    FactTable(std::vector<std::string> names, std::vector<FactId> twins);

    std::size_t size() const { return names.size(); }
    const std::string &name(FactId f) const { return names.at(f); }
    std::optional<FactId> find(std::string_view name) const;
    FactId id(std::string_view name) const;  // throws std::out_of_range
    // kNoFact when f has no twin.
    FactId twin(FactId f) const { return twins.at(f); }
    Fact fact(FactId f) const { return {f, names.at(f)}; }

    bool operator==(const FactTable &other) const {
        return names == other.names && twins == other.twins;
    }
};

using FactTablePtr = std::shared_ptr<const FactTable>;

struct Literal {
    FactId fact = kNoFact;
    bool positive = true;

    Literal negated() const { return {fact, !positive}; }
    auto operator<=>(const Literal &) const = default;
};

using Goal = std::vector<Literal>;

// Name of a literal in canonical PDDL form, e.g. "(not (free c3-2))".
std::string literal_name(const FactTable &facts, Literal lit);
std::string goal_name(const FactTable &facts, const Goal &goal);
// Maps literals onto the positive facts that encode them; std::nullopt when
// a negative literal has no twin.
std::optional<std::vector<FactId>> goal_facts(const FactTable &facts, const Goal &goal);
// Parses "(p a b)", "(not (p a b))" or "(and ...)" against the fact table.
Goal parse_goal(const FactTable &facts, std::string_view text);

class State {
    std::vector<std::uint64_t> words;

public:
    State() = default;
    explicit State(std::size_t num_facts) : words((num_facts + 63) / 64, 0) {}
    State(std::size_t num_facts, std::span<const FactId> true_facts);

    bool contains(FactId f) const {
        return (words[f >> 6] >> (f & 63)) & 1u;
    }
    void set(FactId f) { words[f >> 6] |= std::uint64_t{1} << (f & 63); }
    void reset(FactId f) { words[f >> 6] &= ~(std::uint64_t{1} << (f & 63)); }
    bool contains_all(std::span<const FactId> fs) const {
        for (FactId f : fs)
            if (!contains(f))
                return false;
        return true;
    }
    bool satisfies(const FactTable &facts, const Goal &goal) const;
    std::vector<FactId> facts(std::size_t num_facts) const;
    std::size_t hash() const;

    bool operator==(const State &other) const = default;
};

struct StateHash {
    std::size_t operator()(const State &s) const { return s.hash(); }
};

struct Action {
    std::string name;
    std::vector<FactId> pre;
    std::vector<FactId> add;
    std::vector<FactId> del;
    int cost = 1;

    bool is_noop() const { return pre.empty() && add.empty() && del.empty() && cost == 0; }
    bool applicable(const State &s) const { return s.contains_all(pre); }
    bool operator==(const Action &other) const = default;
};

const std::string &noop_name();
Action make_noop();

struct Plan {
    std::vector<Action> steps;

    bool empty() const { return steps.empty(); }
    std::size_t size() const { return steps.size(); }
    bool operator==(const Plan &other) const = default;
};

Plan concat(const Plan &a, const Plan &b);

struct PlanningTask {
    FactTablePtr facts;
    std::vector<Action> actions;
    State init;
    Goal goal;

    std::size_t num_facts() const { return facts->size(); }
    std::optional<std::vector<FactId>> resolved_goal() const { return goal_facts(*facts, goal); }
};

// gamma: absorbs inapplicable actions by returning s unchanged.
State apply(const State &s, const Action &a);
// Gamma: left fold of apply.
State execute(const State &s, const Plan &plan);
int plan_cost(const Plan &plan);

enum class PlanCheck { valid, goal_not_reached, inapplicable_step };
// Strict validator: every step must be applicable (unlike execute).
PlanCheck check_plan(const PlanningTask &task, const Plan &plan, std::size_t *failed_step = nullptr);

// Line-oriented debug dump: facts, then actions with pre/add/del id lists.
std::string dump_task(const PlanningTask &task);

// One action name per line followed by "; cost = N".
std::string format_plan(const Plan &plan);
// Resolves names against `actions`; "(no-op)" maps to the distinguished no-op.
Plan parse_plan(std::string_view text, std::span<const Action> actions);

}  // namespace counterplan

#endif
