#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fleet/exact.hpp"
#include "fleet/lns.hpp"
#include "fleet/scenarios.hpp"

namespace fleet {

enum class Method { Lns, Greedy, Random, Oracle };

std::string to_string(Method method);
Method parse_method(const std::string& text);

struct ExperimentSpec {
    std::string id = "experiment";
    ScenarioSpec scenario;  // task_count and budget are overridden per cell
    std::vector<Money> budgets;
    std::vector<std::size_t> task_counts;
    std::size_t trials = 20;
    std::vector<Method> methods{Method::Lns, Method::Greedy, Method::Random};
    LnsParams lns;       // seed is derived per cell
    LnsParams baseline;  // inner routing of greedy and random
    OracleLimits oracle;
    std::size_t threads = 1;
    bool record_timing = false;   // wall_ms stays 0 when off, keeping output byte-identical
    std::string solutions_dir;    // when set, one solution file per cell is written here

    /// Throws InvalidProblem.
    void validate() const;
};

struct ResultRecord {
    std::string experiment;
    Method method = Method::Lns;
    std::size_t n = 0;
    Money budget;
    std::size_t trial = 0;
    std::optional<std::size_t> reward;  // empty when the cell failed
    std::map<TypeId, std::size_t> fleet;
    Money cost;
    double wall_ms = 0.0;
    std::size_t iterations = 0;
    std::string error;

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

/// Seed of the scenario shared by every method and budget of (N, trial).
std::uint64_t scenario_seed(const ExperimentSpec& spec, std::size_t n, std::size_t trial);
/// Solver seed of one cell.
std::uint64_t cell_seed(const std::string& experiment, Method method, std::size_t n, const Money& budget,
                        std::size_t trial);

/// Problem solved by every method in cell (n, budget, trial).
Problem cell_problem(const ExperimentSpec& spec, std::size_t n, const Money& budget, std::size_t trial);

/// Runs every (method, N, B, trial) cell on a pool of spec.threads workers.
/// Records come back ordered by (method as listed, N, B, trial). Cell
/// failures are recorded in ResultRecord::error.
std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec);

std::string format_fleet(const std::map<TypeId, std::size_t>& fleet);

/// Columns: experiment,method,N,B,trial,reward,fleet,cost,wall_ms,iters
void write_results_csv(std::ostream& os, const std::vector<ResultRecord>& records);
/// Throws ParseError.
std::vector<ResultRecord> read_results_csv(std::istream& is, const std::string& source = "<results>");

struct SummaryRow {
    Method method = Method::Lns;
    std::size_t n = 0;
    Money budget;
    std::size_t count = 0;   // successful records
    std::size_t errors = 0;
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation (n - 1), 0 for a single record
    double min = 0.0;
    double max = 0.0;
};

struct MeanDifference {
    std::size_t n = 0;
    Money budget;
    double lns_minus_greedy = 0.0;
};

struct Summary {
    std::vector<SummaryRow> rows;  // sorted by (method, N, B)
    std::vector<MeanDifference> differences;

    const SummaryRow* find(Method method, std::size_t n, const Money& budget) const;
    /// Smallest budget whose mean reward for `method` at N reaches `target`.
    std::optional<Money> first_budget_reaching(Method method, std::size_t n, double target) const;
};

/// Throws std::invalid_argument on an empty table. Invariant under record order.
Summary summarize(const std::vector<ResultRecord>& records);

void write_summary_csv(std::ostream& os, const Summary& summary);
void write_differences_csv(std::ostream& os, const Summary& summary);
void write_summary_table(std::ostream& os, const Summary& summary);

void save_experiment(std::ostream& os, const ExperimentSpec& spec);
ExperimentSpec load_experiment(std::istream& is, const std::string& source = "<experiment>");
ExperimentSpec load_experiment_file(const std::string& path);

}  // namespace fleet
