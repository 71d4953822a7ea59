#include <gtest/gtest.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fleet/feasibility.hpp"
#include "fleet/harness.hpp"
#include "fleet/lns.hpp"
#include "fleet/milp.hpp"
#include "fleet/scenarios.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = fleet::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Drops "wrote <path>" lines, which differ between runs writing to different files.
std::string without_paths(const std::string& out) {
    std::istringstream in(out);
    std::string kept;
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("wrote ", 0) != 0) {
            kept += line + '\n';
        }
    }
    return kept;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("fleet_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    // Small exp1 scenario with `tasks` tasks.
    std::string scenario(std::size_t tasks = 8) {
        const std::string p = path("scenario_" + std::to_string(tasks) + ".txt");
        const Outcome o = run_cli({"gen", "--builtin", "exp1", "--tasks", std::to_string(tasks), "-o", p, "-q"});
        EXPECT_EQ(o.code, 0) << o.err;
        return p;
    }

    fs::path dir_;
};

}  // namespace

TEST(CliHelp, EveryFlagIsDocumented) {
    fleet::cli::CliConfig config;
    auto app = fleet::cli::build_app(config);
    std::size_t flags = 0;
    for (CLI::App* sub : app->get_subcommands({})) {
        const std::string help = sub->help();
        EXPECT_FALSE(sub->get_description().empty()) << sub->get_name();
        for (const CLI::Option* opt : sub->get_options()) {
            for (const std::string& name : opt->get_lnames()) {
                EXPECT_NE(help.find("--" + name), std::string::npos) << sub->get_name() << " --" << name;
                ++flags;
            }
            EXPECT_FALSE(opt->get_description().empty()) << sub->get_name() << " " << opt->get_name();
        }
    }
    EXPECT_GT(flags, 40u);
    const std::string top = app->help();
    for (const char* name : {"gen", "solve", "greedy", "random", "oracle", "export-milp", "experiment", "report"}) {
        EXPECT_NE(top.find(name), std::string::npos) << name;
    }
}

TEST(CliHelp, LnsFlagsPresentOnSolvers) {
    for (const char* sub : {"solve", "greedy", "random", "experiment"}) {
        const Outcome o = run_cli({sub, "--help"});
        EXPECT_EQ(o.code, 0);
        for (const char* flag : {"--k", "--n-r", "--n-t", "--p-removal", "--p-discount", "--noise-max", "--sa-t0",
                                 "--sa-cooling", "--discount-denominator", "--seed"}) {
            EXPECT_NE(o.out.find(flag), std::string::npos) << sub << " " << flag;
        }
    }
}

TEST_F(CliTest, UsageErrorsExitOne) {
    EXPECT_EQ(run_cli({}).code, 1);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
    const std::string s = scenario();
    EXPECT_EQ(run_cli({"solve", "-s", s}).code, 1);  // -o missing
    EXPECT_EQ(run_cli({"solve", "-s", path("missing.txt"), "-o", path("x")}).code, 1);
    const Outcome bad = run_cli({"solve", "-s", s, "-o", path("x"), "--p-removal", "2"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("--p-removal"), std::string::npos) << bad.err;
    EXPECT_EQ(run_cli({"solve", "-s", s, "-o", path("x"), "--sa-cooling", "1"}).code, 1);
    EXPECT_EQ(run_cli({"solve", "-s", s, "-o", path("x"), "--discount-denominator", "weight"}).code, 1);
    EXPECT_EQ(run_cli({"gen", "-o", path("x")}).code, 1);
    EXPECT_EQ(run_cli({"gen", "--builtin", "exp1", "--spec", s, "-o", path("x")}).code, 1);
}

TEST_F(CliTest, DataErrorsExitTwo) {
    std::ofstream(path("broken.txt")) << "format_version = 1\nkind = scenario\n[problem]\n";
    const Outcome o = run_cli({"solve", "-s", path("broken.txt"), "-o", path("x")});
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find("broken.txt"), std::string::npos) << o.err;
}

TEST_F(CliTest, OracleRefusesLargeInstance) {
    const std::string s = scenario(7);
    const Outcome o = run_cli({"oracle", "-s", s, "-o", path("o.sol"), "--max-tasks", "6"});
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find("max_tasks"), std::string::npos) << o.err;
}

TEST_F(CliTest, SolveWithSeedIsReproducible) {
    const std::string s = scenario();
    const Outcome a = run_cli({"solve", "-s", s, "-o", path("a.sol"), "--seed", "7", "--k", "200", "--log-iterations",
                               path("a.csv")});
    const Outcome b = run_cli({"solve", "-s", s, "-o", path("b.sol"), "--seed", "7", "--k", "200", "--log-iterations",
                               path("b.csv")});
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_NE(a.out.find("seed = 7"), std::string::npos);
    EXPECT_EQ(slurp(path("a.sol")), slurp(path("b.sol")));
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    EXPECT_EQ(without_paths(a.out), without_paths(b.out));

    const fleet::Problem p = fleet::load_problem_file(s);
    const fleet::SolutionFile sol = fleet::load_solution_file(path("a.sol"));
    EXPECT_EQ(fleet::evaluate_reward(sol.solution, p), sol.reward);
}

TEST_F(CliTest, DefaultSeedIsPrintedAndStable) {
    const std::string s = scenario();
    const Outcome a = run_cli({"random", "-s", s, "-o", path("a.sol"), "--k", "50"});
    const Outcome b = run_cli({"random", "-s", s, "-o", path("b.sol"), "--k", "50"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_NE(a.out.find("seed = "), std::string::npos);
    EXPECT_EQ(without_paths(a.out), without_paths(b.out));
    EXPECT_EQ(slurp(path("a.sol")), slurp(path("b.sol")));
}

TEST_F(CliTest, EveryWrittenFileReloads) {
    const std::string s = scenario(5);
    ASSERT_EQ(run_cli({"spec", "--builtin", "exp3", "-o", path("exp3.spec")}).code, 0);
    EXPECT_EQ(fleet::load_spec_file(path("exp3.spec")), fleet::builtin_spec("exp3"));
    ASSERT_EQ(run_cli({"gen", "--spec", path("exp3.spec"), "--tasks", "4", "--budget", "25", "-o", path("g.txt")}).code, 0);
    EXPECT_EQ(fleet::load_problem_file(path("g.txt")).tasks.size(), 4u);

    ASSERT_EQ(run_cli({"greedy", "-s", s, "-o", path("g.sol"), "--k", "50", "--trace", path("trace.csv")}).code, 0);
    fleet::check_matches_base_fleet(fleet::load_solution_file(path("g.sol")), fleet::load_problem_file(s));
    EXPECT_EQ(slurp(path("trace.csv")).rfind("step,type_id,marginal_gain,cost,ratio,reward_after", 0), 0u);

    ASSERT_EQ(run_cli({"oracle", "-s", s, "-o", path("o.sol")}).code, 0);
    const fleet::SolutionFile oracle = fleet::load_solution_file(path("o.sol"));
    EXPECT_EQ(fleet::evaluate_reward(oracle.solution, fleet::load_problem_file(s)), oracle.reward);

    ASSERT_EQ(run_cli({"export-milp", "-s", s, "-o", path("m.lp")}).code, 0);
    std::ifstream lp(path("m.lp"));
    EXPECT_EQ(fleet::read_lp(lp), fleet::export_milp(fleet::load_problem_file(s)));
}

TEST_F(CliTest, ExperimentAndReportAreReproducible) {
    fleet::ExperimentSpec spec;
    spec.id = "cli";
    spec.scenario = fleet::builtin_spec("exp1");
    spec.budgets = {fleet::Money{30}, fleet::Money{50}};
    spec.task_counts = {6};
    spec.trials = 2;
    spec.lns.iterations = 40;
    spec.baseline.iterations = 20;
    {
        std::ofstream os(path("e.experiment"));
        fleet::save_experiment(os, spec);
    }
    ASSERT_EQ(run_cli({"experiment", "--spec", path("e.experiment"), "-o", path("r1.csv"), "-q"}).code, 0);
    ASSERT_EQ(run_cli({"experiment", "--spec", path("e.experiment"), "-o", path("r2.csv"), "-q", "--threads", "2"}).code,
              0);
    EXPECT_EQ(slurp(path("r1.csv")), slurp(path("r2.csv")));
    std::ifstream in(path("r1.csv"));
    EXPECT_EQ(fleet::read_results_csv(in).size(), 12u);

    const Outcome r = run_cli({"report", "--results", path("r1.csv"), "--summary-csv", path("s.csv"), "--diff-csv",
                               path("d.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("lns"), std::string::npos);
    EXPECT_EQ(slurp(path("s.csv")).rfind("method,N,B,count,errors,mean,sd,min,max", 0), 0u);
    EXPECT_EQ(slurp(path("d.csv")).rfind("N,B,lns_minus_greedy", 0), 0u);
}

TEST_F(CliTest, ExperimentOverridesApply) {
    const std::string spec = std::string(FLEET_DATA_DIR) + "/exp1.experiment";
    const Outcome o = run_cli({"experiment", "--spec", spec, "-o", path("r.csv"), "--k", "5", "--seed", "3", "-q"});
    ASSERT_EQ(o.code, 0) << o.err;
    std::ifstream in(path("r.csv"));
    const auto records = fleet::read_results_csv(in);
    ASSERT_FALSE(records.empty());
    for (const auto& r : records) {
        if (r.method == fleet::Method::Lns) {
            EXPECT_EQ(r.iterations, 5u);
        }
    }
}
