#include "counterplan/recognition.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

using namespace std;

namespace counterplan {

PlanningTask compile_observations(const PlanningTask &task, const ObservationSequence &obs, bool comply) {
    const FactTable &base = *task.facts;
    const size_t n = base.size();
    const int m = static_cast<int>(obs.size());

    vector<string> names;
    vector<FactId> twins;
    for (FactId f = 0; f < static_cast<FactId>(n); ++f) {
        names.push_back(base.name(f));
        twins.push_back(base.twin(f));
    }
    vector<FactId> at(m + 1), not_at(m + 1);
    for (int j = 0; j <= m; ++j) {
        at[j] = static_cast<FactId>(names.size());
        not_at[j] = at[j] + 1;
        names.push_back("(obs-state " + to_string(j) + ")");
        names.push_back("(not (obs-state " + to_string(j) + "))");
        twins.push_back(not_at[j]);
        twins.push_back(at[j]);
    }

    PlanningTask out;
    out.facts = make_shared<FactTable>(move(names), move(twins));
    vector<FactId> init_facts = task.init.facts(n);
    init_facts.push_back(at[0]);
    for (int j = 1; j <= m; ++j)
        init_facts.push_back(not_at[j]);
    out.init = State(out.facts->size(), init_facts);

    auto sorted = [](vector<FactId> v) {
        sort(v.begin(), v.end());
        v.erase(unique(v.begin(), v.end()), v.end());
        return v;
    };
    for (const Action &o : obs) {
        bool known = any_of(task.actions.begin(), task.actions.end(),
                            [&](const Action &a) { return a.name == o.name; });
        if (!known)
            throw invalid_argument("observation " + o.name + " is not an action of the task");
    }
    for (const Action &a : task.actions) {
        Action plain = a;
        for (int k = 0; k < m; ++k) {
            if (obs[k].name != a.name)
                continue;
            plain.pre.push_back(not_at[k]);
            Action step = a;
            step.pre.push_back(at[k]);
            step.add.push_back(at[k + 1]);
            step.add.push_back(not_at[k]);
            step.del.push_back(not_at[k + 1]);
            step.del.push_back(at[k]);
            step.pre = sorted(step.pre);
            step.add = sorted(step.add);
            step.del = sorted(step.del);
            out.actions.push_back(move(step));
        }
        plain.pre = sorted(plain.pre);
        out.actions.push_back(move(plain));
    }
    stable_sort(out.actions.begin(), out.actions.end(),
                [](const Action &x, const Action &y) { return x.name < y.name; });

    out.goal = task.goal;
    out.goal.push_back({at[m], comply});
    return out;
}

namespace {

// log(1 + e^x) without overflow.
double softplus(double x) {
    if (x > 0)
        return x + log1p(exp(-x));
    return log1p(exp(x));
}

}  // namespace

RecognitionResult recognize(const RecognitionProblem &problem, const RecognitionOptions &options) {
    const size_t k = problem.candidates.size();
    vector<double> prior = problem.prior;
    if (prior.empty())
        prior.assign(k, k ? 1.0 / static_cast<double>(k) : 0.0);
    if (prior.size() != k)
        throw invalid_argument("prior size does not match the candidate count");

    RecognitionResult result;
    result.costs.resize(k);
    vector<double> log_weight(k, -numeric_limits<double>::infinity());
    for (size_t i = 0; i < k; ++i) {
        PlanningTask base{problem.facts, problem.actions, problem.init, problem.candidates[i]};
        PlanningTask yes = compile_observations(base, problem.observations, true);
        PlanningTask no = compile_observations(base, problem.observations, false);
        GoalCosts &c = result.costs[i];
        c.with_obs = optimal_cost(yes.init, yes.goal, yes.actions, *yes.facts, options.budget);
        if (!c.with_obs || prior[i] <= 0)
            continue;
        c.without_obs = optimal_cost(no.init, no.goal, no.actions, *no.facts, options.budget);
        c.delta = c.without_obs ? static_cast<double>(*c.with_obs - *c.without_obs)
                                : -numeric_limits<double>::infinity();
        // likelihood = 1 / (1 + e^{beta * delta})
        double ll = isinf(c.delta) ? 0.0 : -softplus(options.beta * c.delta);
        log_weight[i] = log(prior[i]) + ll;
    }
    double best = *max_element(log_weight.begin(), log_weight.end());
    if (k == 0 || isinf(best))
        throw RecognitionError("no consistent goal");
    double total = 0;
    result.posterior.assign(k, 0.0);
    for (size_t i = 0; i < k; ++i) {
        if (isinf(log_weight[i]))
            continue;
        result.posterior[i] = exp(log_weight[i] - best);
        total += result.posterior[i];
    }
    for (double &p : result.posterior)
        p /= total;
    double top = *max_element(result.posterior.begin(), result.posterior.end());
    for (size_t i = 0; i < k; ++i)
        if (result.posterior[i] > 0 && result.posterior[i] >= top - options.epsilon)
            result.most_probable.push_back(static_cast<int>(i));
    return result;
}

string recognition_csv(const RecognitionProblem &problem, const RecognitionResult &result, int iteration) {
    ostringstream out;
    auto cost = [](const optional<int> &c) { return c ? to_string(*c) : string("inf"); };
    for (size_t i = 0; i < problem.candidates.size(); ++i) {
        const GoalCosts &c = result.costs[i];
        out << iteration << ",\"" << goal_name(*problem.facts, problem.candidates[i]) << "\"," << cost(c.with_obs)
            << "," << cost(c.without_obs) << ",";
        if (!c.with_obs)
            out << "";
        else if (isinf(c.delta))
            out << "-inf";
        else
            out << c.delta;
        out << "," << result.posterior[i] << "\n";
    }
    return out.str();
}

}  // namespace counterplan
