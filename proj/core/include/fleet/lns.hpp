#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fleet/feasibility.hpp"
#include "fleet/model.hpp"
#include "fleet/pathing.hpp"
#include "fleet/rng.hpp"

namespace fleet {

enum class DiscountDenominator { Cost, Battery };
enum class RemovalMode { Initial, RobotRemoval, TaskRemoval };

std::string to_string(RemovalMode mode);
std::string to_string(DiscountDenominator denominator);
DiscountDenominator parse_discount_denominator(const std::string& text);

/// Tuning knobs of the fleet LNS. Defaults follow the published setup;
/// the annealing schedule is our own choice.
struct LnsParams {
    std::size_t iterations = 1000;          // K
    double robot_removal_max_pct = 25.0;    // n^R
    double task_removal_max_pct = 50.0;     // n^T
    double removal_mode_bias = 1.0 / 3.0;   // probability of robot removal
    double discount_prob = 0.1;             // probability that an activation is cost-discounted
    double noise_max = 0.1;                 // eta ~ U[0, noise_max]
    double sa_initial_temp = 1.0;
    double sa_cooling = 0.995;
    DiscountDenominator discount_denominator = DiscountDenominator::Cost;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// How a search treats the fleet it routes.
struct SearchOptions {
    BudgetRule budget = BudgetRule::Enforce;  // Ignore: fleet is given, every robot may be used
    bool discount = true;                     // apply the activation discount in repair
};

/// Read-only view of everything a search needs, with deadlines and
/// batteries pre-converted to ticks. Holds references: the problem, fleet
/// and travel set must outlive it.
class SearchContext {
public:
    SearchContext(const Problem& problem, const Fleet& fleet, const TravelSet& travel, SearchOptions options = {});

    const Problem& problem() const noexcept { return *problem_; }
    const Fleet& fleet() const noexcept { return *fleet_; }
    const TravelSet& travel() const noexcept { return *travel_; }
    const SearchOptions& options() const noexcept { return options_; }

    const RobotType& type_of(RobotIndex robot) const { return problem_->type(fleet_->robots[robot].type); }
    const TravelMatrix& matrix_of(RobotIndex robot) const { return (*travel_)[fleet_->robots[robot].type]; }
    Ticks deadline(TaskId task) const noexcept { return deadline_[task]; }
    Ticks battery(RobotIndex robot) const noexcept { return battery_[fleet_->robots[robot].type]; }

private:
    const Problem* problem_;
    const Fleet* fleet_;
    const TravelSet* travel_;
    SearchOptions options_;
    std::vector<Ticks> deadline_;
    std::vector<Ticks> battery_;
};

/// Cached arrival ticks of one tour plus the suffix minimum of the deadline
/// slack, so an insertion can be checked in O(1).
struct TourTiming {
    std::vector<Ticks> arrival;
    std::vector<Ticks> slack_suffix;  // size visits + 1, last entry infinite
    Ticks duration = 0;

    static TourTiming of(const SearchContext& ctx, const Tour& tour);
};

struct Insertion {
    std::size_t position = 0;  // insert before visits[position]
    Ticks added = 0;           // increase of the tour duration
};

/// Cheapest feasible position for `task` in the robot's tour with respect to
/// capability, deadlines and battery (the budget is not considered here).
std::optional<Insertion> best_insertion(const SearchContext& ctx, const Tour& tour, const TourTiming& timing,
                                        TaskId task);

/// Repair utility of inserting a task into robot `robot`. Returns 0 for an
/// infeasible candidate. `activates` marks insertion into an empty tour.
double utility(const SearchContext& ctx, RobotIndex robot, bool feasible, bool activates, const LnsParams& params,
               Rng& rng);

struct RemovalOutcome {
    Solution partial;
    std::vector<TaskId> unassigned;
};

RemovalMode select_removal_mode(Rng& rng, const LnsParams& params);
RemovalOutcome robot_removal(const Solution& solution, const LnsParams& params, Rng& rng);
RemovalOutcome task_removal(const Solution& solution, const LnsParams& params, Rng& rng);

/// Insertion heuristic: pops unassigned tasks at random and places each one
/// with the robot of largest utility; tasks without a feasible insertion are
/// left out. `partial` must be feasible.
Solution repair(const SearchContext& ctx, Solution partial, std::vector<TaskId> unassigned, const LnsParams& params,
                Rng& rng);

/// Shuffled insertion of every task into an empty solution.
Solution initial_solution(const SearchContext& ctx, Rng& rng, const LnsParams& params);

double annealing_temperature(std::size_t iteration, const LnsParams& params);
double acceptance_probability(std::int64_t reward_delta, double temperature);
bool accept(std::size_t new_reward, std::size_t current_reward, std::size_t iteration, const LnsParams& params,
            Rng& rng);

struct IterationRecord {
    std::size_t iteration = 0;
    RemovalMode mode = RemovalMode::Initial;
    std::size_t current_reward = 0;
    std::size_t best_reward = 0;
    bool accepted = true;

    friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct LnsResult {
    Solution best;
    std::size_t best_reward = 0;
    std::size_t initial_reward = 0;
    Fleet fleet;  // robots with non-empty tours in `best`
    std::vector<IterationRecord> log;
};

/// Called with the initial solution and then once per iteration with the
/// repaired candidate, after the acceptance decision (see record.accepted).
using LnsObserver = std::function<void(const IterationRecord&, const Solution& candidate)>;

/// Fleet LNS over the problem's base fleet.
LnsResult solve(const Problem& problem, const LnsParams& params, const LnsObserver& observer = {});

/// The search loop on an explicit fleet and travel set.
LnsResult run_lns(const SearchContext& ctx, const LnsParams& params, const LnsObserver& observer = {});

/// CSV with header `iteration,mode,current_reward,best_reward,accepted`.
void write_iteration_log(std::ostream& os, const std::vector<IterationRecord>& log);

}  // namespace fleet
