#ifndef COUNTERPLAN_BENCH_H
#define COUNTERPLAN_BENCH_H

#include "counterplan/counterplanning.h"
#include "counterplan/simulator.h"
#include "counterplan/task.h"

#include <cstdint>
#include <string>
#include <vector>

namespace counterplan {

enum class Domain { police_control, painted_blocks };
const char *domain_name(Domain d);
Domain parse_domain_name(const std::string &name);

struct GeneratorConfig {
    Domain domain = Domain::police_control;
    std::uint64_t seed = 0;
    // police-control
    int grid = 10;
    double obstacles = 0.25;
    int booths = 10;
    int stations = 3;
    // painted-blocks-words
    int blocks = 8;
    int rooms = 5;
    int words = 5;
    int min_word = 3;
    int max_word = 6;

    int retries = 1000;
    SearchBudget budget;  // for the solvability check of every candidate
};

/*
  Bundles are emitted as PDDL text and checked by grounding them and solving
  every candidate goal in isolation. The true goal is drawn uniformly from
  the candidates. Throws std::runtime_error when no acceptable instance is
  found within `retries` attempts.
*/
TaskBundle gen_police_control(const GeneratorConfig &config);
TaskBundle gen_painted_blocks(const GeneratorConfig &config);
TaskBundle generate(const GeneratorConfig &config);

struct TaskRow {
    int task_id = 0;
    std::string task;
    Mode algorithm = Mode::adicp;
    Metrics metrics;
    std::size_t seeker_plan_length = 0;
    std::string error;  // non-empty when the task failed before scoring
};

struct MetricSummary {
    double mean = 0;
    double std = 0;  // population
    int n = 0;
};

struct AlgorithmSummary {
    Mode algorithm = Mode::adicp;
    int tasks = 0;
    int stopped = 0;
    int budget = 0;
    int errors = 0;
    MetricSummary E, ratio_seek, len_prev, ratio_anticipatory, time_avg_s;
};

struct SuiteReport {
    std::string domain;
    std::vector<Mode> algorithms;
    std::vector<TaskRow> rows;  // ordered by task id, then algorithm order

    // %E and t_C over every scored task; the other metrics over tasks the
    // algorithm stopped.
    std::vector<AlgorithmSummary> summary() const;
};

struct SuiteConfig {
    GeneratorConfig generator;
    int n_tasks = 50;
    std::vector<Mode> algorithms = {Mode::dicp, Mode::adicp, Mode::random, Mode::random_goal};
    Strategy strategy = Strategy::closest_to_seek;
    SearchBudget budget;
    int workers = 0;  // 0: COUNTERPLAN_WORKERS, else hardware concurrency
};

// Task i uses generator seed config.generator.seed + i and the same value as
// the seed of the random algorithm variants.
SuiteReport run_suite(const SuiteConfig &config);
// Same protocol over given tasks; each must carry its true goal.
SuiteReport run_tasks(const std::vector<CounterplanningTask> &tasks, const SuiteConfig &config);

int worker_count(int requested);

MetricSummary summarize(const std::vector<double> &values);

enum class ReportFormat { csv, json, markdown };
ReportFormat parse_report_format(const std::string &name);
std::string report(const SuiteReport &suite, ReportFormat format);

}  // namespace counterplan

#endif
