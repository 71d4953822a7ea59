#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fleet/exact.hpp"
#include "fleet/lns.hpp"

namespace CLI {
class App;
}

namespace fleet::cli {

struct CliConfig {
    std::string subcommand;
    std::string scenario_path;
    std::string spec_path;
    std::string builtin;
    std::string out_path;
    std::string log_path;      // --log-iterations
    std::string trace_path;    // greedy --trace
    std::string results_path;  // report --results
    std::string summary_csv;
    std::string diff_csv;
    std::string solutions_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> tasks;
    std::optional<std::string> budget;
    std::optional<std::size_t> threads;
    bool timing = false;
    LnsParams params;
    std::string discount_denominator = "cost";
    OracleLimits limits;
    int verbosity = 0;
    bool quiet = false;
};

/// The full command-line interface bound to `config`.
std::unique_ptr<CLI::App> build_app(CliConfig& config);

/// Parses and runs; returns the process exit code (0 ok, 1 usage, 2 data error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fleet::cli
