#include "counterplan/simulator.h"

#include <algorithm>

using namespace std;

namespace counterplan {

namespace {

bool meets(const vector<FactId> &a, const vector<FactId> &b) {
    for (FactId f : a)
        if (find(b.begin(), b.end(), f) != b.end())
            return true;
    return false;
}

}  // namespace

bool interferes(const Action &a1, const Action &a2) {
    return meets(a1.del, a2.pre) || meets(a1.del, a2.add) || meets(a2.del, a1.pre) || meets(a2.del, a1.add);
}

State joint_apply(const State &s, const Action &a1, const Action &a2) {
    if (a1.is_noop())
        return apply(s, a2);
    if (a2.is_noop())
        return apply(s, a1);
    if (interferes(a1, a2))
        return s;
    const bool fire1 = a1.applicable(s);
    const bool fire2 = a2.applicable(s);
    State next = s;
    if (fire1)
        for (FactId f : a1.del)
            next.reset(f);
    if (fire2)
        for (FactId f : a2.del)
            next.reset(f);
    if (fire1)
        for (FactId f : a1.add)
            next.set(f);
    if (fire2)
        for (FactId f : a2.add)
            next.set(f);
    return next;
}

State joint_execute(const State &s, const Plan &p1, const Plan &p2) {
    State cur = s;
    const size_t n = max(p1.size(), p2.size());
    for (size_t i = 0; i < n; ++i) {
        if (i < p1.size() && i < p2.size())
            cur = joint_apply(cur, p1.steps[i], p2.steps[i]);
        else if (i < p1.size())
            cur = apply(cur, p1.steps[i]);
        else
            cur = apply(cur, p2.steps[i]);
    }
    return cur;
}

const char *verdict_name(Verdict v) {
    switch (v) {
    case Verdict::valid:
        return "valid";
    case Verdict::invalid:
        return "invalid";
    case Verdict::indeterminate:
        return "indeterminate";
    }
    return "?";
}

Verdict validate_counterplan(const CounterplanningTask &task, const State &from, const Plan &prev_plan,
                             const Plan &seek_plan, span<const int> live_candidates, const SearchBudget &budget) {
    State end = joint_execute(from, prev_plan, seek_plan);
    bool indeterminate = false;
    for (int g : live_candidates) {
        SearchResult r = solve_optimal(task.seek_task(end, g), budget);
        if (r.status == SearchStatus::solved)
            return Verdict::invalid;
        indeterminate = indeterminate || r.status == SearchStatus::resource_limit;
    }
    return indeterminate ? Verdict::indeterminate : Verdict::valid;
}

optional<bool> check_strong_small(const Plan &plan, span<const Action> opponent, const State &s,
                                  const FactTable &facts, const Goal &goal, int horizon, size_t max_sequences) {
    vector<Action> moves(opponent.begin(), opponent.end());
    moves.push_back(make_noop());
    double total = 1;
    for (int i = 0; i < horizon; ++i)
        total *= static_cast<double>(moves.size());
    if (total > static_cast<double>(max_sequences))
        return nullopt;

    vector<size_t> digits(horizon, 0);
    Plan seq;
    seq.steps.resize(horizon);
    while (true) {
        for (int i = 0; i < horizon; ++i)
            seq.steps[i] = moves[digits[i]];
        if (!joint_execute(s, plan, seq).satisfies(facts, goal))
            return false;
        int pos = 0;
        while (pos < horizon && ++digits[pos] == moves.size())
            digits[pos++] = 0;
        if (pos == horizon)
            return true;
    }
}

}  // namespace counterplan

namespace counterplan {

Metrics score_episode(const CounterplanningTask &task, const Plan &seeker_plan, EpisodeTrace &trace,
                      const SearchBudget &budget) {
    Metrics m;
    const Plan prev = trace.prev_plan();

    // The prev plan may outlast the seeker; its tail does not affect the seeker's score.
    State s = task.init;
    const Action noop = make_noop();
    int effective = 0;
    bool blocked = false;
    for (size_t i = 0; i < seeker_plan.size(); ++i) {
        const Action &seek = seeker_plan.steps[i];
        const Action &p = i < prev.size() ? prev.steps[i] : noop;
        blocked = blocked || !seek.applicable(s) || (!p.is_noop() && interferes(seek, p));
        if (!blocked)
            ++effective;
        s = joint_apply(s, seek, p);
    }
    if (!seeker_plan.empty())
        m.ratio_seek = static_cast<double>(effective) / static_cast<double>(seeker_plan.size());

    int anticipatory = 0;
    for (const Action &a : trace.anticipatory_prefix.steps)
        anticipatory += !a.is_noop();
    for (const Action &a : prev.steps)
        m.len_prev += !a.is_noop();
    if (m.len_prev > 0)
        m.ratio_anticipatory = static_cast<double>(anticipatory) / m.len_prev;

    if (!trace.iterations.empty()) {
        double total = 0;
        for (const IterationRecord &r : trace.iterations)
            total += r.seconds;
        m.time_avg_s = total / static_cast<double>(trace.iterations.size());
    }

    vector<int> scored;
    if (task.true_goal)
        scored.push_back(*task.true_goal);
    else if (!trace.iterations.empty())
        scored = trace.iterations.back().candidates;
    Verdict v = validate_counterplan(task, task.init, prev, seeker_plan, scored, budget);
    trace.stopped = v == Verdict::valid;
    m.E = trace.stopped ? 1.0 : 0.0;
    if (v == Verdict::indeterminate || (!trace.stopped && trace.budget_hit))
        m.status = "budget";
    else if (trace.stopped)
        m.status = "stopped";
    else
        m.status = trace.counterplan ? "not-stopped" : "no-counterplan";
    return m;
}

Episode run_episode(const CounterplanningTask &task, const Plan &seeker_plan, const AdicpConfig &config) {
    Episode e{adicp(task, seeker_plan, config), {}};
    e.metrics = score_episode(task, seeker_plan, e.trace, config.budget);
    return e;
}

}  // namespace counterplan
