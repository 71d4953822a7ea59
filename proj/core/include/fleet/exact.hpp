#pragma once

#include <cstddef>
#include <cstdint>

#include "fleet/model.hpp"
#include "fleet/pathing.hpp"

namespace fleet {

/// Size guards for the exhaustive oracle, checked before any enumeration.
struct OracleLimits {
    std::size_t max_tasks = 12;
    std::size_t max_base_fleet = 64;
    std::uint64_t max_states = 50'000'000;
};

struct OracleResult {
    std::size_t reward = 0;
    Solution solution;  // indexed by the routed fleet (base fleet for brute_force)
};

/// Exact optimum of the budgeted fleet design problem.
///
/// For every robot type, every task subset and every last-visited task the
/// earliest deadline-respecting arrival is tabulated (all visit orders are
/// covered by the recursion), giving the shortest feasible depot-to-depot
/// tour per subset. Task sets are then partitioned into tours in every
/// possible way, pricing each tour at its cheapest capable type; the best
/// partition within the budget is the optimum. Any budget-feasible fleet uses
/// at most floor(B/b) robots of a type, so unlimited copies are equivalent to
/// the base fleet. Throws SizeExceeded when a limit would be violated.
OracleResult brute_force(const Problem& problem, const OracleLimits& limits = {});

/// Exact optimum for a given fleet (every robot usable, no budget).
OracleResult brute_force_fixed_fleet(const Problem& problem, const Fleet& fleet, const OracleLimits& limits = {});

}  // namespace fleet
