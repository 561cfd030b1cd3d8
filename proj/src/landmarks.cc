#include "counterplan/landmarks.h"

#include <algorithm>

using namespace std;

namespace counterplan {

bool FactLandmarkSet::contains(FactId f) const {
    return binary_search(landmarks.begin(), landmarks.end(), f);
}

namespace {

// Relaxed reachability from `init` using the actions `allowed` admits.
template <typename Allowed>
vector<char> reachable(span<const Action> actions, const vector<vector<int>> &pre_of, size_t num_facts,
                       const State &init, Allowed allowed) {
    vector<char> reached(num_facts, 0);
    vector<int> unsat(actions.size());
    vector<FactId> queue;
    auto fire = [&](const Action &a) {
        for (FactId g : a.add)
            if (!reached[g]) {
                reached[g] = 1;
                queue.push_back(g);
            }
    };
    for (FactId f = 0; f < static_cast<FactId>(num_facts); ++f)
        if (init.contains(f)) {
            reached[f] = 1;
            queue.push_back(f);
        }
    for (size_t a = 0; a < actions.size(); ++a) {
        unsat[a] = static_cast<int>(actions[a].pre.size());
        if (unsat[a] == 0 && allowed(a))
            fire(actions[a]);
    }
    for (size_t head = 0; head < queue.size(); ++head)
        for (int a : pre_of[queue[head]])
            if (--unsat[a] == 0 && allowed(a))
                fire(actions[a]);
    return reached;
}

bool covers(const vector<char> &reached, span<const FactId> facts) {
    return all_of(facts.begin(), facts.end(), [&](FactId f) { return reached[f]; });
}

bool has(const vector<FactId> &v, FactId f) { return find(v.begin(), v.end(), f) != v.end(); }

}  // namespace

FactLandmarkSet extract_landmarks(span<const Action> actions, size_t num_facts, const State &init,
                                  span<const FactId> goal) {
    vector<vector<int>> pre_of(num_facts);
    for (size_t a = 0; a < actions.size(); ++a)
        for (FactId f : actions[a].pre)
            pre_of[f].push_back(static_cast<int>(a));

    FactLandmarkSet out;
    vector<char> full = reachable(actions, pre_of, num_facts, init, [](size_t) { return true; });
    vector<char> is_goal(num_facts, 0);
    for (FactId g : goal)
        is_goal[g] = 1;
    if (!covers(full, goal)) {
        out.unsolvable = true;
        for (FactId f = 0; f < static_cast<FactId>(num_facts); ++f)
            if (is_goal[f])
                out.landmarks.push_back(f);
        return out;
    }

    for (FactId f = 0; f < static_cast<FactId>(num_facts); ++f) {
        if (!full[f])
            continue;
        bool landmark = is_goal[f];
        if (!landmark && init.contains(f)) {
            auto without_consumers = reachable(actions, pre_of, num_facts, init,
                                               [&](size_t a) { return !has(actions[a].pre, f); });
            landmark = !covers(without_consumers, goal);
        } else if (!landmark) {
            auto without_achievers = reachable(actions, pre_of, num_facts, init,
                                               [&](size_t a) { return !has(actions[a].add, f); });
            landmark = !covers(without_achievers, goal);
        }
        if (!landmark)
            continue;
        out.landmarks.push_back(f);
        if (init.contains(f))
            continue;
        // First achievers: achievers applicable before f can have been used.
        auto before_f = reachable(actions, pre_of, num_facts, init,
                                  [&](size_t a) { return !has(actions[a].pre, f); });
        vector<int> &fa = out.first_achievers[f];
        for (size_t a = 0; a < actions.size(); ++a)
            if (has(actions[a].add, f) && covers(before_f, actions[a].pre))
                fa.push_back(static_cast<int>(a));
    }
    return out;
}

FactLandmarkSet extract_landmarks(const PlanningTask &task) {
    auto goal = task.resolved_goal();
    if (!goal)
        return {{}, {}, true};
    return extract_landmarks(task.actions, task.num_facts(), task.init, *goal);
}

string dump_landmarks(const FactLandmarkSet &lms, const FactTable &facts, span<const Action> actions) {
    string out;
    for (FactId f : lms.landmarks) {
        size_t achievers = 0;
        for (const Action &a : actions)
            achievers += has(a.add, f);
        auto it = lms.first_achievers.find(f);
        size_t first = it == lms.first_achievers.end() ? 0 : it->second.size();
        out += facts.name(f) + " achievers=" + to_string(achievers) + " first=" + to_string(first) + "\n";
    }
    return out;
}

}  // namespace counterplan
