#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fleet/lns.hpp"
#include "fleet/model.hpp"
#include "fleet/pathing.hpp"

namespace fleet {

/// Result of a fleet-selection baseline, expressed over the base fleet so it
/// is directly comparable with the fleet LNS.
struct BaselineResult {
    Solution solution;        // indexed by base fleet
    Fleet purchased;          // robots bought, by position in the routed fleet
    std::size_t reward = 0;
    std::size_t iterations = 0;  // inner LNS iterations spent
};

struct GreedyCandidate {
    TypeId type = 0;
    std::size_t reward = 0;
    std::int64_t marginal_gain = 0;
    double ratio = 0.0;
};

struct GreedyStep {
    TypeId type = 0;
    std::int64_t marginal_gain = 0;
    Money cost;
    double ratio = 0.0;
    std::size_t reward_after = 0;
    std::vector<GreedyCandidate> evaluated;
};

struct GreedyTrace {
    std::vector<GreedyStep> steps;
    Money skipped_budget;  // budget left unspent when the search stopped on zero gain
};

struct GreedyResult {
    BaselineResult result;
    GreedyTrace trace;
};

/// Tour optimization for a fixed fleet: task removal only, every robot
/// usable, no activation discount, no budget constraint. The solution is
/// indexed by position in `fleet`.
LnsResult fixed_fleet_mrta(const Problem& problem, const Fleet& fleet, const TravelSet& travel,
                           const LnsParams& params);
LnsResult fixed_fleet_mrta(const Problem& problem, const Fleet& fleet, const LnsParams& params);

/// Adds, one robot at a time, the affordable type with the largest marginal
/// reward per unit cost, each candidate fleet routed by fixed_fleet_mrta.
GreedyResult greedy_fleet(const Problem& problem, const LnsParams& inner);

/// Buys uniformly random affordable types until none fits, then routes the
/// fleet with fixed_fleet_mrta. Randomness is drawn from `params.seed`.
BaselineResult random_fleet(const Problem& problem, const LnsParams& params);

/// CSV with header `step,type_id,marginal_gain,cost,ratio,reward_after`.
void write_greedy_trace(std::ostream& os, const GreedyTrace& trace);

}  // namespace fleet
