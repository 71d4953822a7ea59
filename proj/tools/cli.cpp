#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fleet/baselines.hpp"
#include "fleet/errors.hpp"
#include "fleet/harness.hpp"
#include "fleet/milp.hpp"
#include "fleet/rng.hpp"
#include "fleet/scenarios.hpp"

namespace fleet::cli {
namespace {

void add_lns_flags(CLI::App* sub, CliConfig& c) {
    sub->add_option("--k", c.params.iterations, "LNS iterations K")->check(CLI::NonNegativeNumber);
    sub->add_option("--n-r", c.params.robot_removal_max_pct, "max % of active robots removed per robot removal")
        ->check(CLI::Range(0.0, 100.0));
    sub->add_option("--n-t", c.params.task_removal_max_pct, "max % of each tour removed per task removal")
        ->check(CLI::Range(0.0, 100.0));
    sub->add_option("--p-removal", c.params.removal_mode_bias, "probability of robot removal")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--p-discount", c.params.discount_prob, "probability of discounting an activation")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--noise-max", c.params.noise_max, "upper bound of the utility noise")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--sa-t0", c.params.sa_initial_temp, "initial annealing temperature")
        ->check(CLI::PositiveNumber);
    sub->add_option("--sa-cooling", c.params.sa_cooling, "geometric cooling factor per iteration")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--discount-denominator", c.discount_denominator, "activation discount divides by cost or battery")
        ->check(CLI::IsMember({"cost", "battery"}));
}

void add_seed(CLI::App* sub, CliConfig& c) {
    sub->add_option("--seed", c.seed, "random seed (default: hash of the input file)");
}

void add_scenario_in(CLI::App* sub, CliConfig& c) {
    sub->add_option("-s,--scenario", c.scenario_path, "scenario file")->required()->check(CLI::ExistingFile);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FleetError("cannot open '" + path + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FleetError("cannot open '" + path + "' for writing");
    }
    return out;
}

struct Session {
    CliConfig& c;
    std::ostream& out;
    std::ostream& err;

    void info(const std::string& line) const {
        if (!c.quiet) {
            out << line << '\n';
        }
    }
    void debug(const std::string& line) const {
        if (c.verbosity > 0 && !c.quiet) {
            err << line << '\n';
        }
    }

    LnsParams params() const {
        LnsParams p = c.params;
        p.discount_denominator = parse_discount_denominator(c.discount_denominator);
        return p;
    }

    std::uint64_t seed_for(const std::string& input) const {
        const std::uint64_t seed = c.seed ? *c.seed : stable_hash(slurp(input));
        out << "seed = " << seed << '\n';
        return seed;
    }

    void write_solution(const Problem& problem, const Solution& solution, const std::string& method,
                        std::uint64_t seed, std::size_t reward) const {
        const std::size_t checked = evaluate_reward(solution, problem);
        if (checked != reward) {
            throw InfeasibleSolution("internal: reward mismatch on re-evaluation");
        }
        save_solution_file(c.out_path, make_solution_file(problem, solution, method, seed, reward));
        info("reward = " + std::to_string(reward));
        info("wrote " + c.out_path);
    }

    int gen() const {
        ScenarioSpec spec = c.builtin.empty() ? load_spec_file(c.spec_path) : builtin_spec(c.builtin);
        if (c.tasks) spec.task_count = *c.tasks;
        if (c.budget) spec.budget = Money::parse(*c.budget);
        if (c.seed) spec.seed = *c.seed;
        out << "seed = " << spec.seed << '\n';
        const Problem problem = generate(spec);
        save_problem_file(c.out_path, problem);
        info("tasks = " + std::to_string(problem.task_count()));
        info("wrote " + c.out_path);
        return 0;
    }

    int write_spec() const {
        save_spec_file(c.out_path, builtin_spec(c.builtin));
        info("wrote " + c.out_path);
        return 0;
    }

    int solve() const {
        const Problem problem = load_problem_file(c.scenario_path);
        LnsParams p = params();
        p.seed = seed_for(c.scenario_path);
        LnsResult r = fleet::solve(problem, p);
        debug("initial reward = " + std::to_string(r.initial_reward));
        write_solution(problem, r.best, "lns", p.seed, r.best_reward);
        if (!c.log_path.empty()) {
            auto log = open_out(c.log_path);
            write_iteration_log(log, r.log);
            info("wrote " + c.log_path);
        }
        return 0;
    }

    int greedy() const {
        const Problem problem = load_problem_file(c.scenario_path);
        LnsParams p = params();
        p.seed = seed_for(c.scenario_path);
        GreedyResult r = greedy_fleet(problem, p);
        for (const GreedyStep& s : r.trace.steps) {
            debug("add type " + std::to_string(s.type) + " gain " + std::to_string(s.marginal_gain));
        }
        write_solution(problem, r.result.solution, "greedy", p.seed, r.result.reward);
        if (!c.trace_path.empty()) {
            auto trace = open_out(c.trace_path);
            write_greedy_trace(trace, r.trace);
            info("wrote " + c.trace_path);
        }
        return 0;
    }

    int random() const {
        const Problem problem = load_problem_file(c.scenario_path);
        LnsParams p = params();
        p.seed = seed_for(c.scenario_path);
        BaselineResult r = random_fleet(problem, p);
        write_solution(problem, r.solution, "random", p.seed, r.reward);
        return 0;
    }

    int oracle() const {
        const Problem problem = load_problem_file(c.scenario_path);
        OracleResult r = brute_force(problem, c.limits);
        write_solution(problem, r.solution, "oracle", 0, r.reward);
        return 0;
    }

    int export_milp() const {
        const Problem problem = load_problem_file(c.scenario_path);
        const MilpModel model = fleet::export_milp(problem);
        auto os = open_out(c.out_path);
        write_lp(os, model);
        info("variables = " + std::to_string(model.variables.size()));
        info("constraints = " + std::to_string(model.constraints.size()));
        info("wrote " + c.out_path);
        return 0;
    }

    int experiment(const CLI::App& sub) const {
        ExperimentSpec spec = load_experiment_file(c.spec_path);
        // Flags given on the command line override the file for both the
        // fleet LNS and the baselines' inner routing.
        auto given = [&](const char* flag) { return sub.get_option(flag)->count() > 0; };
        for (LnsParams* p : {&spec.lns, &spec.baseline}) {
            if (given("--k")) p->iterations = c.params.iterations;
            if (given("--n-r")) p->robot_removal_max_pct = c.params.robot_removal_max_pct;
            if (given("--n-t")) p->task_removal_max_pct = c.params.task_removal_max_pct;
            if (given("--noise-max")) p->noise_max = c.params.noise_max;
            if (given("--sa-t0")) p->sa_initial_temp = c.params.sa_initial_temp;
            if (given("--sa-cooling")) p->sa_cooling = c.params.sa_cooling;
            if (given("--discount-denominator")) {
                p->discount_denominator = parse_discount_denominator(c.discount_denominator);
            }
        }
        if (given("--p-removal")) spec.lns.removal_mode_bias = c.params.removal_mode_bias;
        if (given("--p-discount")) spec.lns.discount_prob = c.params.discount_prob;
        if (c.threads) spec.threads = *c.threads;
        if (c.timing) spec.record_timing = true;
        if (!c.solutions_dir.empty()) spec.solutions_dir = c.solutions_dir;
        if (c.seed) spec.scenario.seed = *c.seed;
        out << "seed = " << spec.scenario.seed << '\n';

        const std::vector<ResultRecord> records = run_experiment(spec);
        auto os = open_out(c.out_path);
        write_results_csv(os, records);
        std::size_t failed = 0;
        for (const ResultRecord& r : records) {
            if (!r.error.empty()) {
                ++failed;
                debug("cell " + to_string(r.method) + " N=" + std::to_string(r.n) + " B=" + r.budget.to_string() +
                      " trial=" + std::to_string(r.trial) + " failed: " + r.error);
            }
        }
        info("records = " + std::to_string(records.size()) + " (" + std::to_string(failed) + " failed)");
        info("wrote " + c.out_path);
        return 0;
    }

    int report() const {
        std::ifstream in(c.results_path);
        if (!in) {
            throw FleetError("cannot open '" + c.results_path + "' for reading");
        }
        const Summary summary = summarize(read_results_csv(in, c.results_path));
        if (!c.summary_csv.empty()) {
            auto os = open_out(c.summary_csv);
            write_summary_csv(os, summary);
        }
        if (!c.diff_csv.empty()) {
            auto os = open_out(c.diff_csv);
            write_differences_csv(os, summary);
        }
        if (!c.out_path.empty()) {
            auto os = open_out(c.out_path);
            write_summary_table(os, summary);
        } else {
            write_summary_table(out, summary);
        }
        return 0;
    }
};

}  // namespace

std::unique_ptr<CLI::App> build_app(CliConfig& c) {
    auto app = std::make_unique<CLI::App>("Budgeted heterogeneous robot fleet design: solver and benchmark tool",
                                          "fleetctl");
    app->require_subcommand(1);
    app->fallthrough();
    app->add_flag("-v,--verbose", c.verbosity, "print diagnostics to stderr (repeatable)");
    app->add_flag("-q,--quiet", c.quiet, "suppress informational output (the seed is still printed)");

    auto* gen = app->add_subcommand("gen", "generate a scenario file from a scenario spec");
    auto* spec_opt = gen->add_option("--spec", c.spec_path, "scenario spec file")->check(CLI::ExistingFile);
    auto* builtin_opt = gen->add_option("--builtin", c.builtin, "built-in spec name (exp1, exp2, exp3)")
                            ->check(CLI::IsMember(builtin_spec_names()));
    spec_opt->excludes(builtin_opt);
    gen->add_option("--tasks", c.tasks, "override the number of tasks N");
    gen->add_option("--budget", c.budget, "override the budget B (integer, fraction or decimal)");
    gen->add_option("--seed", c.seed, "override the spec seed");
    gen->add_option("-o,--out", c.out_path, "scenario file to write")->required();

    auto* spec = app->add_subcommand("spec", "write a built-in scenario spec to a file");
    spec->add_option("--builtin", c.builtin, "built-in spec name (exp1, exp2, exp3)")
        ->required()
        ->check(CLI::IsMember(builtin_spec_names()));
    spec->add_option("-o,--out", c.out_path, "spec file to write")->required();

    auto* solve = app->add_subcommand("solve", "fleet LNS: choose robots and tours");
    add_scenario_in(solve, c);
    solve->add_option("-o,--out", c.out_path, "solution file to write")->required();
    solve->add_option("--log-iterations", c.log_path, "write the per-iteration CSV log here");
    add_seed(solve, c);
    add_lns_flags(solve, c);

    auto* greedy = app->add_subcommand("greedy", "greedy fleet baseline");
    add_scenario_in(greedy, c);
    greedy->add_option("-o,--out", c.out_path, "solution file to write")->required();
    greedy->add_option("--trace", c.trace_path, "write the per-step CSV trace here");
    add_seed(greedy, c);
    add_lns_flags(greedy, c);

    auto* random = app->add_subcommand("random", "random fleet baseline");
    add_scenario_in(random, c);
    random->add_option("-o,--out", c.out_path, "solution file to write")->required();
    add_seed(random, c);
    add_lns_flags(random, c);

    auto* oracle = app->add_subcommand("oracle", "exact optimum for small instances");
    add_scenario_in(oracle, c);
    oracle->add_option("-o,--out", c.out_path, "solution file to write")->required();
    oracle->add_option("--max-tasks", c.limits.max_tasks, "refuse instances with more tasks");
    oracle->add_option("--max-base-fleet", c.limits.max_base_fleet, "refuse larger base fleets");
    oracle->add_option("--max-states", c.limits.max_states, "refuse instances needing more DP states");

    auto* milp = app->add_subcommand("export-milp", "write the routing MILP in LP format");
    add_scenario_in(milp, c);
    milp->add_option("-o,--out", c.out_path, "LP file to write")->required();

    auto* exp = app->add_subcommand("experiment", "run a sweep and write results.csv");
    exp->add_option("--spec", c.spec_path, "experiment file")->required()->check(CLI::ExistingFile);
    exp->add_option("-o,--out", c.out_path, "results CSV to write")->required();
    exp->add_option("--threads", c.threads, "worker threads (overrides the file)")->check(CLI::PositiveNumber);
    exp->add_flag("--timing", c.timing, "record wall time per cell (output is then not reproducible)");
    exp->add_option("--solutions-dir", c.solutions_dir, "write one solution file per cell here");
    exp->add_option("--seed", c.seed, "override the scenario family seed");
    add_lns_flags(exp, c);

    auto* report = app->add_subcommand("report", "summarize a results CSV");
    report->add_option("--results", c.results_path, "results CSV")->required()->check(CLI::ExistingFile);
    report->add_option("--summary-csv", c.summary_csv, "write per-cell statistics CSV here");
    report->add_option("--diff-csv", c.diff_csv, "write lns minus greedy mean differences CSV here");
    report->add_option("-o,--out", c.out_path, "write the text table here instead of stdout");

    for (CLI::App* sub : app->get_subcommands([](CLI::App*) { return true; })) {
        sub->final_callback([&c, sub] { c.subcommand = sub->get_name(); });
    }
    return app;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig config;
    std::unique_ptr<CLI::App> app = build_app(config);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app->parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app->exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    if (config.builtin.empty() && config.spec_path.empty() && config.subcommand == "gen") {
        err << "gen: one of --spec PATH or --builtin NAME is required\n";
        return 1;
    }

    Session session{config, out, err};
    try {
        const std::string& cmd = config.subcommand;
        if (cmd == "gen") return session.gen();
        if (cmd == "spec") return session.write_spec();
        if (cmd == "solve") return session.solve();
        if (cmd == "greedy") return session.greedy();
        if (cmd == "random") return session.random();
        if (cmd == "oracle") return session.oracle();
        if (cmd == "export-milp") return session.export_milp();
        if (cmd == "experiment") return session.experiment(*app->get_subcommand("experiment"));
        if (cmd == "report") return session.report();
        err << "unknown subcommand\n";
        return 1;
    } catch (const FleetError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace fleet::cli
