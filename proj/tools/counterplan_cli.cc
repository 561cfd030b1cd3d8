// counterplan: generate bundles, run episodes and suites, validate counterplans.
//
// Exit codes: 0 ok, 1 usage, 2 task failure, 3 search budget exhausted.

#include "counterplan/bench.h"
#include "counterplan/counterplanning.h"
#include "counterplan/simulator.h"
#include "counterplan/task.h"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace counterplan;

namespace {

constexpr int kOk = 0, kUsage = 1, kTaskFailure = 2, kBudget = 3;

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void add_generator_flags(CLI::App *cmd, GeneratorConfig &g, std::string &domain) {
    cmd->add_option("--domain", domain, "police-control or painted-blocks-words")->capture_default_str();
    cmd->add_option("--grid", g.grid, "police grid side")->capture_default_str();
    cmd->add_option("--obstacles", g.obstacles, "police obstacle fraction")->capture_default_str();
    cmd->add_option("--booths", g.booths)->capture_default_str();
    cmd->add_option("--stations", g.stations, "candidate goals in police-control")->capture_default_str();
    cmd->add_option("--blocks", g.blocks)->capture_default_str();
    cmd->add_option("--rooms", g.rooms)->capture_default_str();
    cmd->add_option("--words", g.words, "candidate goals in painted-blocks-words")->capture_default_str();
    cmd->add_option("--min-word", g.min_word)->capture_default_str();
    cmd->add_option("--max-word", g.max_word)->capture_default_str();
}

void add_budget_flags(CLI::App *cmd, SearchBudget &b) {
    cmd->add_option("--budget-nodes", b.max_nodes, "expansions per planner call")->capture_default_str();
    cmd->add_option("--budget-seconds", b.max_seconds, "seconds per planner call")->capture_default_str();
}

std::vector<Mode> parse_algorithms(const std::string &list) {
    std::vector<Mode> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(parse_mode(item));
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Anticipatory counterplanning engine"};
    app.require_subcommand(1);
    std::string log_level = "warn";
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")->capture_default_str();

    // gen
    GeneratorConfig gen;
    std::string gen_domain = "police-control", gen_out;
    CLI::App *gen_cmd = app.add_subcommand("gen", "Emit a task bundle");
    add_generator_flags(gen_cmd, gen, gen_domain);
    gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "bundle directory")->required();

    // run
    std::string run_bundle, run_algorithm = "adicp", run_strategy = "closest-to-seek", run_trace, run_plan;
    std::uint64_t run_seed = 0;
    SearchBudget run_budget;
    CLI::App *run_cmd = app.add_subcommand("run", "Run one episode on a bundle");
    run_cmd->add_option("bundle", run_bundle, "bundle directory")->required();
    run_cmd->add_option("--algorithm", run_algorithm, "dicp, adicp, random-adicp or random-goal-adicp")
        ->capture_default_str();
    run_cmd->add_option("--strategy", run_strategy, "closest-to-seek or closest-to-prev")->capture_default_str();
    run_cmd->add_option("--seed", run_seed)->capture_default_str();
    run_cmd->add_option("--trace", run_trace, "write the episode trace (JSON lines) here");
    run_cmd->add_option("--seeker-plan", run_plan, "seeker plan file; default is an optimal plan");
    add_budget_flags(run_cmd, run_budget);

    // suite
    SuiteConfig suite;
    std::string suite_domain = "police-control", suite_algorithms = "dicp,adicp,random-adicp,random-goal-adicp",
                suite_strategy = "closest-to-seek", suite_out;
    std::vector<std::string> suite_bundles;
    suite.generator.grid = 8;
    CLI::App *suite_cmd = app.add_subcommand("suite", "Run the benchmark protocol");
    add_generator_flags(suite_cmd, suite.generator, suite_domain);
    suite_cmd->add_option("--n", suite.n_tasks, "number of generated tasks")->capture_default_str();
    suite_cmd->add_option("--seed", suite.generator.seed, "seed of task 0; task i uses seed + i")
        ->capture_default_str();
    suite_cmd->add_option("--algorithms", suite_algorithms)->capture_default_str();
    suite_cmd->add_option("--strategy", suite_strategy)->capture_default_str();
    suite_cmd->add_option("--workers", suite.workers, "0 reads COUNTERPLAN_WORKERS")->capture_default_str();
    suite_cmd->add_option("--bundle", suite_bundles, "run these bundles instead of generating tasks");
    suite_cmd->add_option("--out", suite_out, "directory for report.csv, report.json and report.md");
    add_budget_flags(suite_cmd, suite.budget);

    // validate
    std::string val_bundle, val_plan, val_seek;
    SearchBudget val_budget;
    CLI::App *val_cmd = app.add_subcommand("validate", "Check a counterplan against a bundle");
    val_cmd->add_option("bundle", val_bundle, "bundle directory")->required();
    val_cmd->add_option("--plan", val_plan, "preventer plan file")->required();
    val_cmd->add_option("--seeker-plan", val_seek, "seeker plan file; default is an optimal plan");
    add_budget_flags(val_cmd, val_budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    spdlog::set_level(spdlog::level::from_str(log_level));

    CounterplanningTask task;
    auto load = [&](const std::string &dir) -> bool {
        try {
            task = build_task(read_bundle(dir));
        } catch (const std::exception &e) {
            std::cerr << "error: " << e.what() << "\n";
            return false;
        }
        if (!task.true_goal) {
            std::cerr << "error: " << dir << " has no truth.txt\n";
            return false;
        }
        return true;
    };
    // Returns nullopt and reports when no seeker plan is available.
    auto seeker_plan = [&](const std::string &file, const SearchBudget &budget, int &code) -> std::optional<Plan> {
        if (!file.empty())
            return parse_plan(slurp(file), task.seek_actions);
        SearchResult r = solve_optimal(task.seek_task(*task.true_goal), budget);
        if (!r.plan) {
            std::cerr << "error: seeker plan: " << status_name(r.status) << "\n";
            code = r.status == SearchStatus::resource_limit ? kBudget : kTaskFailure;
        }
        return r.plan;
    };

    try {
        if (*gen_cmd) {
            gen.domain = parse_domain_name(gen_domain);
            TaskBundle b = generate(gen);
            write_bundle(gen_out, b);
            std::cout << gen_out << "\n";
            return kOk;
        }

        if (*run_cmd) {
            AdicpConfig config;
            config.mode = parse_mode(run_algorithm);
            config.strategy = parse_strategy(run_strategy);
            config.seed = run_seed;
            config.budget = config.recognition.budget = config.centroid.budget = run_budget;
            if (!load(run_bundle))
                return kTaskFailure;
            int code = kOk;
            auto seek = seeker_plan(run_plan, run_budget, code);
            if (!seek)
                return code;
            Episode e = run_episode(task, *seek, config);
            std::string trace = format_trace(e.trace, task);
            if (!run_trace.empty())
                std::ofstream(run_trace) << trace;
            std::cout << format_plan(e.trace.prev_plan());
            const Metrics &m = e.metrics;
            std::cout << "E=" << m.E << " ratio_seek=" << m.ratio_seek << " len_prev=" << m.len_prev
                      << " ratio_anticipatory=" << m.ratio_anticipatory << " time_avg_s=" << m.time_avg_s
                      << " status=" << m.status << "\n";
            return m.status == "budget" ? kBudget : kOk;
        }

        if (*suite_cmd) {
            suite.generator.domain = parse_domain_name(suite_domain);
            suite.algorithms = parse_algorithms(suite_algorithms);
            suite.strategy = parse_strategy(suite_strategy);
            suite.generator.budget = suite.budget;
            SuiteReport r;
            if (suite_bundles.empty()) {
                r = run_suite(suite);
            } else {
                std::vector<CounterplanningTask> tasks;
                for (const std::string &dir : suite_bundles) {
                    if (!load(dir))
                        return kTaskFailure;
                    tasks.push_back(task);
                }
                r = run_tasks(tasks, suite);
            }
            if (!suite_out.empty()) {
                std::filesystem::create_directories(suite_out);
                std::ofstream(suite_out + "/report.csv") << report(r, ReportFormat::csv);
                std::ofstream(suite_out + "/report.json") << report(r, ReportFormat::json);
                std::ofstream(suite_out + "/report.md") << report(r, ReportFormat::markdown);
            }
            std::cout << report(r, ReportFormat::markdown);
            return kOk;
        }

        if (*val_cmd) {
            if (!load(val_bundle))
                return kTaskFailure;
            int code = kOk;
            auto seek = seeker_plan(val_seek, val_budget, code);
            if (!seek)
                return code;
            Plan prev = parse_plan(slurp(val_plan), task.prev_actions);
            const int truth[] = {*task.true_goal};
            Verdict v = validate_counterplan(task, task.init, prev, *seek, truth, val_budget);
            std::cout << verdict_name(v) << "\n";
            return v == Verdict::valid ? kOk : v == Verdict::invalid ? kTaskFailure : kBudget;
        }
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SearchLimitError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kTaskFailure;
    }
    return kUsage;
}
