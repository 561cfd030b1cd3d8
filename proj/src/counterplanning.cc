#include "counterplan/counterplanning.h"

#include "counterplan/landmarks.h"
#include "counterplan/simulator.h"

#include <json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <stdexcept>

using namespace std;

namespace counterplan {

vector<PlanningTask> potential_tasks(const CounterplanningTask &task, const State &from, span<const int> live) {
    vector<PlanningTask> out;
    out.reserve(live.size());
    for (int g : live)
        out.push_back(task.seek_task(from, g));
    return out;
}

int laststep(FactId fact, const Plan &plan, span<const FactId> goal) {
    if (find(goal.begin(), goal.end(), fact) != goal.end())
        return static_cast<int>(plan.size()) + 1;
    for (size_t i = plan.size(); i > 0; --i) {
        const auto &pre = plan.steps[i - 1].pre;
        if (find(pre.begin(), pre.end(), fact) != pre.end())
            return static_cast<int>(i);
    }
    return 0;
}

vector<CPLEntry> CPList::flattened() const {
    vector<CPLEntry> out;
    for (const auto &[goal, entries] : per_goal)
        out.insert(out.end(), entries.begin(), entries.end());
    return out;
}

size_t CPList::size() const {
    size_t n = 0;
    for (const auto &[goal, entries] : per_goal)
        n += entries.size();
    return n;
}

size_t CPList::count(FactId fact) const {
    size_t n = 0;
    for (const auto &[goal, entries] : per_goal)
        for (const CPLEntry &e : entries)
            n += e.fact() == fact;
    return n;
}

namespace {

struct GoalAnalysis {
    int candidate;
    FactLandmarkSet landmarks;
    unique_ptr<OptimalPlanGraph> graph;
};

}  // namespace

CPLReport analyze_cpl(const CounterplanningTask &task, const State &from, span<const int> live,
                      const SearchBudget &budget) {
    const FactTable &facts = *task.facts;
    vector<bool> deletable(facts.size(), false);
    for (const Action &a : task.prev_actions)
        for (FactId f : a.del)
            deletable[f] = true;

    map<FactId, optional<int>> prev_costs;
    auto prev_cost = [&](FactId f) {
        auto it = prev_costs.find(f);
        if (it == prev_costs.end())
            it = prev_costs.emplace(f, optimal_cost(from, {{f, false}}, task.prev_actions, facts, budget)).first;
        return it->second;
    };

    vector<GoalAnalysis> solvable;
    for (int g : live) {
        auto ids = goal_facts(facts, task.candidates.at(g));
        if (!ids)
            continue;
        FactLandmarkSet lms = extract_landmarks(task.seek_actions, facts.size(), from, *ids);
        if (lms.unsolvable)
            continue;
        auto graph = make_unique<OptimalPlanGraph>(task.seek_actions, facts.size(), from, *ids, budget);
        if (graph->status() == SearchStatus::unsolvable)
            continue;
        solvable.push_back({g, move(lms), move(graph)});
    }

    // Entry for f against a group of goals; nullopt if f fails a condition.
    auto entry = [&](FactId f, span<const GoalAnalysis *const> group) -> optional<CPLEntry> {
        if (!deletable[f])
            return nullopt;
        optional<int> pc = prev_cost(f);
        if (!pc)
            return nullopt;
        CPLEntry e{{f, false}, *pc, kInfinity, true};
        for (const GoalAnalysis *ga : group) {
            if (ga->graph->status() != SearchStatus::solved) {
                e.verified = false;
                continue;
            }
            e.min_laststep = min(e.min_laststep, *ga->graph->min_laststep(f));
        }
        if (!e.verified && e.min_laststep == kInfinity)
            e.min_laststep = e.prev_cost;
        if (e.verified && e.min_laststep < e.prev_cost)
            return nullopt;
        return e;
    };

    CPLReport report;
    for (const GoalAnalysis &ga : solvable) {
        const GoalAnalysis *one[] = {&ga};
        vector<CPLEntry> entries;
        for (FactId f : ga.landmarks.landmarks)
            if (auto e = entry(f, one))
                entries.push_back(*e);
        report.individual.per_goal.emplace_back(ga.candidate, move(entries));
    }
    if (!solvable.empty()) {
        vector<const GoalAnalysis *> all;
        for (const GoalAnalysis &ga : solvable)
            all.push_back(&ga);
        for (FactId f : solvable.front().landmarks.landmarks) {
            bool shared = all_of(all.begin(), all.end(), [f](const GoalAnalysis *ga) { return ga->landmarks.contains(f); });
            if (!shared)
                continue;
            if (auto e = entry(f, all))
                report.common.push_back(*e);
        }
    }
    return report;
}

vector<CPLEntry> extract_cpl(const CounterplanningTask &task, const State &from, span<const int> live,
                             const SearchBudget &budget) {
    return analyze_cpl(task, from, live, budget).common;
}

CPList extract_list_of_cpl(const CounterplanningTask &task, const State &from, span<const int> live,
                           const SearchBudget &budget) {
    return analyze_cpl(task, from, live, budget).individual;
}

WeightedGoalSet rank(const CPList &list) {
    const size_t total = list.size();
    if (total == 0)
        throw invalid_argument("rank of an empty counterplanning landmark list");
    map<Literal, size_t> counts;
    for (const CPLEntry &e : list.flattened())
        ++counts[e.landmark];
    WeightedGoalSet goals;
    for (const auto &[lit, n] : counts)
        goals.add({lit}, static_cast<double>(n) / static_cast<double>(total));
    return goals;
}

const char *strategy_name(Strategy s) {
    return s == Strategy::closest_to_seek ? "closest-to-seek" : "closest-to-prev";
}

Strategy parse_strategy(const string &name) {
    if (name == "closest-to-seek")
        return Strategy::closest_to_seek;
    if (name == "closest-to-prev")
        return Strategy::closest_to_prev;
    throw invalid_argument("unknown strategy: " + name);
}

const CPLEntry &select_goal(span<const CPLEntry> cpl, Strategy strategy) {
    if (cpl.empty())
        throw invalid_argument("select_goal on an empty landmark set");
    auto key = [strategy](const CPLEntry &e) {
        int primary = strategy == Strategy::closest_to_seek ? e.min_laststep : e.prev_cost;
        int secondary = strategy == Strategy::closest_to_seek ? e.prev_cost : e.min_laststep;
        return tuple(!e.verified, primary, secondary, e.landmark);
    };
    return *min_element(cpl.begin(), cpl.end(), [&](const CPLEntry &a, const CPLEntry &b) { return key(a) < key(b); });
}

const char *mode_name(Mode m) {
    switch (m) {
    case Mode::dicp:
        return "dicp";
    case Mode::adicp:
        return "adicp";
    case Mode::random:
        return "random-adicp";
    case Mode::random_goal:
        return "random-goal-adicp";
    }
    return "?";
}

Mode parse_mode(const string &name) {
    for (Mode m : {Mode::dicp, Mode::adicp, Mode::random, Mode::random_goal})
        if (name == mode_name(m))
            return m;
    if (name == "random")
        return Mode::random;
    if (name == "random-goal")
        return Mode::random_goal;
    throw invalid_argument("unknown algorithm: " + name);
}

Anticipator::Anticipator(Mode mode, uint64_t seed, CentroidOptions options)
    : mode(mode), rng(seed), options(options) {}

Action Anticipator::next(const CounterplanningTask &task, const CPList &list, const State &composite) {
    const FactTable &facts = *task.facts;
    switch (mode) {
    case Mode::dicp:
        return make_noop();
    case Mode::random: {
        vector<const Action *> applicable;
        for (const Action &a : task.prev_actions)
            if (a.applicable(composite))
                applicable.push_back(&a);
        if (applicable.empty())
            return make_noop();
        uniform_int_distribution<size_t> pick(0, applicable.size() - 1);
        return *applicable[pick(rng)];
    }
    case Mode::adicp:
        if (list.empty())
            return make_noop();
        return get_first_action(facts, task.prev_actions, composite, rank(list), options).value_or(make_noop());
    case Mode::random_goal: {
        if (!target && !list.empty()) {
            vector<Literal> distinct;
            for (const CPLEntry &e : list.flattened())
                distinct.push_back(e.landmark);
            sort(distinct.begin(), distinct.end());
            distinct.erase(unique(distinct.begin(), distinct.end()), distinct.end());
            uniform_int_distribution<size_t> pick(0, distinct.size() - 1);
            target = distinct[pick(rng)];
        }
        if (!target)
            return make_noop();
        WeightedGoalSet one;
        one.add({*target}, 1.0);
        return get_first_action(facts, task.prev_actions, composite, one, options).value_or(make_noop());
    }
    }
    return make_noop();
}

Plan EpisodeTrace::prev_plan() const {
    return counterplan ? concat(anticipatory_prefix, *counterplan) : anticipatory_prefix;
}

EpisodeTrace adicp(const CounterplanningTask &task, const Plan &seeker_plan, const AdicpConfig &config) {
    using clock = chrono::steady_clock;
    EpisodeTrace trace;
    Anticipator anticipator(config.mode, config.seed, config.centroid);
    RecognitionProblem recognition{task.facts, task.seek_actions, task.init, task.candidates, {}, {}};

    State state = task.init;
    vector<int> live(task.candidates.size());
    for (size_t i = 0; i < live.size(); ++i)
        live[i] = static_cast<int>(i);
    bool fresh = true;  // an observation arrived since the last recognition
    size_t next = 0;

    for (int iteration = 0; next < seeker_plan.size(); ++iteration) {
        const auto start = clock::now();
        IterationRecord rec;
        rec.iteration = iteration;

        if (fresh) {
            rec.recognized = true;
            fresh = false;
            try {
                RecognitionResult r = recognize(recognition, config.recognition);
                vector<int> kept;
                set_intersection(live.begin(), live.end(), r.most_probable.begin(), r.most_probable.end(),
                                 back_inserter(kept));
                if (!kept.empty())
                    live = move(kept);
            } catch (const RecognitionError &e) {
                spdlog::warn("recognition failed at iteration {}: {}", iteration, e.what());
            } catch (const SearchLimitError &) {
                rec.budget_hit = true;
            }
        }
        rec.candidates = live;

        CPLReport report;
        try {
            report = analyze_cpl(task, state, live, config.budget);
        } catch (const SearchLimitError &) {
            rec.budget_hit = true;
        }
        rec.common_cpl = report.common.size();
        rec.individual_cpl = report.individual.size();

        // Try landmarks in strategy order until one yields a nonempty
        // preventer plan; an already-false landmark needs no counterplan.
        vector<CPLEntry> pool = report.common;
        while (!pool.empty()) {
            const CPLEntry chosen = select_goal(pool, config.strategy);
            SearchResult r = solve_optimal(PlanningTask{task.facts, task.prev_actions, state, {chosen.landmark}},
                                           config.budget);
            if (r.status == SearchStatus::solved && !r.plan->empty()) {
                trace.counterplan = *r.plan;
                trace.target = chosen;
                break;
            }
            rec.budget_hit = rec.budget_hit || r.status == SearchStatus::resource_limit;
            pool.erase(find(pool.begin(), pool.end(), chosen));
        }

        if (!trace.counterplan) {
            Action prev = make_noop();
            try {
                prev = anticipator.next(task, report.individual, state);
            } catch (const SearchLimitError &) {
                rec.budget_hit = true;
            }
            const Action &seek = seeker_plan.steps[next++];
            rec.seek_effective = seek.applicable(state) && (prev.is_noop() || !interferes(seek, prev));
            state = joint_apply(state, seek, prev);
            if (rec.seek_effective) {
                recognition.observations.push_back(seek);
                fresh = true;
            }
            rec.seek_action = seek.name;
            rec.prev_action = prev.name;
            trace.anticipatory_prefix.steps.push_back(prev);
            trace.joint_steps.push_back({seek.name, prev.name, state});
        }

        rec.seconds = chrono::duration<double>(clock::now() - start).count();
        trace.budget_hit = trace.budget_hit || rec.budget_hit;
        trace.iterations.push_back(move(rec));
        if (trace.counterplan)
            break;
    }
    return trace;
}

string format_trace(const EpisodeTrace &trace, const CounterplanningTask &task) {
    const FactTable &facts = *task.facts;
    string out;
    for (const IterationRecord &r : trace.iterations) {
        nlohmann::json j = {{"type", "iteration"},
                            {"iteration", r.iteration},
                            {"recognized", r.recognized},
                            {"candidates", nlohmann::json::array()},
                            {"common_cpl", r.common_cpl},
                            {"individual_cpl", r.individual_cpl},
                            {"seek_action", r.seek_action},
                            {"prev_action", r.prev_action},
                            {"seek_effective", r.seek_effective},
                            {"budget_hit", r.budget_hit},
                            {"seconds", r.seconds}};
        for (int c : r.candidates)
            j["candidates"].push_back(goal_name(facts, task.candidates[c]));
        out += j.dump() + "\n";
    }
    nlohmann::json result = {{"type", "result"},
                             {"stopped", trace.stopped},
                             {"budget_hit", trace.budget_hit},
                             {"prev_plan", nlohmann::json::array()},
                             {"anticipatory", 0}};
    for (const Action &a : trace.prev_plan().steps)
        result["prev_plan"].push_back(a.name);
    int anticipatory = 0;
    for (const Action &a : trace.anticipatory_prefix.steps)
        anticipatory += !a.is_noop();
    result["anticipatory"] = anticipatory;
    if (trace.target)
        result["target"] = literal_name(facts, trace.target->landmark);
    out += result.dump() + "\n";
    return out;
}

}  // namespace counterplan
