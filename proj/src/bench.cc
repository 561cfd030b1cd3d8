#include "counterplan/bench.h"

#include <json.hpp>
#include <spdlog/spdlog.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

using namespace std;

namespace counterplan {

int worker_count(int requested) {
    if (requested > 0)
        return requested;
    if (const char *env = getenv("COUNTERPLAN_WORKERS")) {
        int n = atoi(env);
        if (n > 0)
            return n;
        spdlog::warn("ignoring COUNTERPLAN_WORKERS={}", env);
    }
    return max(1u, thread::hardware_concurrency());
}

MetricSummary summarize(const vector<double> &values) {
    MetricSummary s;
    s.n = static_cast<int>(values.size());
    if (values.empty())
        return s;
    double sum = 0;
    for (double v : values)
        sum += v;
    s.mean = sum / s.n;
    double sq = 0;
    for (double v : values)
        sq += (v - s.mean) * (v - s.mean);
    s.std = sqrt(sq / s.n);
    return s;
}

vector<AlgorithmSummary> SuiteReport::summary() const {
    vector<AlgorithmSummary> out;
    for (Mode m : algorithms) {
        AlgorithmSummary a;
        a.algorithm = m;
        vector<double> E, seek, len, ant, time;
        for (const TaskRow &r : rows) {
            if (r.algorithm != m)
                continue;
            ++a.tasks;
            if (!r.error.empty()) {
                ++a.errors;
                continue;
            }
            a.budget += r.metrics.status == "budget";
            E.push_back(r.metrics.E);
            time.push_back(r.metrics.time_avg_s);
            if (r.metrics.E == 1.0) {
                ++a.stopped;
                seek.push_back(r.metrics.ratio_seek);
                len.push_back(r.metrics.len_prev);
                ant.push_back(r.metrics.ratio_anticipatory);
            }
        }
        a.E = summarize(E);
        a.ratio_seek = summarize(seek);
        a.len_prev = summarize(len);
        a.ratio_anticipatory = summarize(ant);
        a.time_avg_s = summarize(time);
        out.push_back(a);
    }
    return out;
}

SuiteReport run_tasks(const vector<CounterplanningTask> &tasks, const SuiteConfig &config) {
    SuiteReport report;
    report.domain = domain_name(config.generator.domain);
    report.algorithms = config.algorithms;
    const size_t per_task = config.algorithms.size();
    report.rows.resize(tasks.size() * per_task);

    atomic<size_t> next{0};
    auto work = [&]() {
        for (size_t i = next++; i < tasks.size(); i = next++) {
            const CounterplanningTask &task = tasks[i];
            const uint64_t seed = config.generator.seed + i;
            TaskRow base;
            base.task_id = static_cast<int>(i);
            base.task = task.name;
            optional<Plan> seek;
            if (!task.true_goal) {
                base.error = "task has no true goal";
            } else {
                SearchResult r = solve_optimal(task.seek_task(*task.true_goal), config.budget);
                if (r.plan)
                    seek = *r.plan;
                else
                    base.error = string("seeker plan: ") + status_name(r.status);
            }
            if (seek)
                base.seeker_plan_length = seek->size();
            for (size_t k = 0; k < per_task; ++k) {
                TaskRow row = base;
                row.algorithm = config.algorithms[k];
                if (seek) {
                    AdicpConfig ac;
                    ac.mode = row.algorithm;
                    ac.strategy = config.strategy;
                    ac.seed = seed;
                    ac.budget = config.budget;
                    ac.recognition.budget = config.budget;
                    ac.centroid.budget = config.budget;
                    try {
                        row.metrics = run_episode(task, *seek, ac).metrics;
                    } catch (const exception &e) {
                        row.error = e.what();
                    }
                }
                if (!row.error.empty())
                    row.metrics.status = "error";
                report.rows[i * per_task + k] = move(row);
            }
        }
    };
    const int n = min<int>(worker_count(config.workers), max<size_t>(1, tasks.size()));
    vector<thread> pool;
    for (int w = 1; w < n; ++w)
        pool.emplace_back(work);
    work();
    for (thread &t : pool)
        t.join();
    return report;
}

SuiteReport run_suite(const SuiteConfig &config) {
    vector<CounterplanningTask> tasks(config.n_tasks);
    vector<string> errors(config.n_tasks);
    atomic<int> next{0};
    auto work = [&]() {
        for (int i = next++; i < config.n_tasks; i = next++) {
            GeneratorConfig g = config.generator;
            g.seed = config.generator.seed + i;
            try {
                tasks[i] = build_task(generate(g));
            } catch (const exception &e) {
                errors[i] = e.what();
            }
        }
    };
    const int n = min(worker_count(config.workers), max(1, config.n_tasks));
    vector<thread> pool;
    for (int w = 1; w < n; ++w)
        pool.emplace_back(work);
    work();
    for (thread &t : pool)
        t.join();

    SuiteReport report = run_tasks(tasks, config);
    for (int i = 0; i < config.n_tasks; ++i) {
        if (errors[i].empty())
            continue;
        for (size_t k = 0; k < config.algorithms.size(); ++k) {
            TaskRow &row = report.rows[i * config.algorithms.size() + k];
            row.error = "generator: " + errors[i];
            row.metrics = {};
            row.metrics.status = "error";
        }
    }
    return report;
}

ReportFormat parse_report_format(const string &name) {
    if (name == "csv")
        return ReportFormat::csv;
    if (name == "json")
        return ReportFormat::json;
    if (name == "markdown" || name == "md")
        return ReportFormat::markdown;
    throw invalid_argument("unknown report format: " + name);
}

namespace {

string fixed(double v, int digits) {
    ostringstream out;
    out << setprecision(digits) << std::fixed << v;
    return out.str();
}

string cell(const MetricSummary &m, int digits) {
    if (m.n == 0)
        return "-";
    return fixed(m.mean, digits) + " ± " + fixed(m.std, digits);
}

nlohmann::json to_json(const MetricSummary &m) { return {{"mean", m.mean}, {"std", m.std}, {"n", m.n}}; }

}  // namespace

string report(const SuiteReport &suite, ReportFormat format) {
    ostringstream out;
    switch (format) {
    case ReportFormat::csv:
        out << "task-id,algorithm,E,ratio_seek,len_prev,ratio_anticipatory,time_avg_s,status\n";
        for (const TaskRow &r : suite.rows) {
            const Metrics &m = r.metrics;
            out << r.task_id << ',' << mode_name(r.algorithm) << ',' << m.E << ',' << fixed(m.ratio_seek, 6) << ','
                << m.len_prev << ',' << fixed(m.ratio_anticipatory, 6) << ',' << fixed(m.time_avg_s, 6) << ','
                << m.status << '\n';
        }
        break;
    case ReportFormat::json: {
        nlohmann::json j = {{"domain", suite.domain}, {"summary", nlohmann::json::array()},
                            {"rows", nlohmann::json::array()}};
        for (const AlgorithmSummary &a : suite.summary())
            j["summary"].push_back({{"algorithm", mode_name(a.algorithm)},
                                    {"tasks", a.tasks},
                                    {"stopped", a.stopped},
                                    {"budget", a.budget},
                                    {"errors", a.errors},
                                    {"E", to_json(a.E)},
                                    {"ratio_seek", to_json(a.ratio_seek)},
                                    {"len_prev", to_json(a.len_prev)},
                                    {"ratio_anticipatory", to_json(a.ratio_anticipatory)},
                                    {"time_avg_s", to_json(a.time_avg_s)}});
        for (const TaskRow &r : suite.rows) {
            nlohmann::json row = {{"task_id", r.task_id},
                                  {"task", r.task},
                                  {"algorithm", mode_name(r.algorithm)},
                                  {"E", r.metrics.E},
                                  {"ratio_seek", r.metrics.ratio_seek},
                                  {"len_prev", r.metrics.len_prev},
                                  {"ratio_anticipatory", r.metrics.ratio_anticipatory},
                                  {"time_avg_s", r.metrics.time_avg_s},
                                  {"status", r.metrics.status}};
            if (!r.error.empty())
                row["error"] = r.error;
            j["rows"].push_back(row);
        }
        out << j.dump(2) << '\n';
        break;
    }
    case ReportFormat::markdown:
        out << "| Algorithm | Tasks | %E | %\\|π_seek\\| | \\|π_prev\\| | %\\|π_prev\\|_a | t_C (s) |\n"
            << "|---|---|---|---|---|---|---|\n";
        for (const AlgorithmSummary &a : suite.summary()) {
            if (a.tasks == 0)
                continue;
            out << "| " << mode_name(a.algorithm) << " | " << a.tasks << " | " << cell(a.E, 2) << " | "
                << cell(a.ratio_seek, 2) << " | " << cell(a.len_prev, 1) << " | " << cell(a.ratio_anticipatory, 2)
                << " | " << cell(a.time_avg_s, 3) << " |\n";
        }
        break;
    }
    return out.str();
}

}  // namespace counterplan
