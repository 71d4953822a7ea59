#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fleet/model.hpp"
#include "fleet/pathing.hpp"

namespace fleet {

struct Arrival {
    TaskId task = 0;
    Time time;

    friend bool operator==(const Arrival&, const Arrival&) = default;
};

struct TourSchedule {
    std::vector<Arrival> arrivals;
    Time duration;  // includes the return leg to the depot
};

/// Arrival times along a depot-to-depot tour (service time is zero).
/// Throws UnreachableVertex when a leg has no permitted path.
TourSchedule tour_schedule(const Tour& tour, const Problem& problem, const TravelMatrix& travel);

enum class ViolationKind { Budget, Battery, Capability, Deadline, DuplicateVisit, UnknownTask, Unreachable, Shape };

std::string to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    RobotIndex robot = 0;  // meaningless for Budget and Shape
    TaskId task = 0;       // meaningless for Budget, Battery and Shape
    std::string detail;
};

struct FeasibilityReport {
    std::vector<Violation> violations;

    bool feasible() const noexcept { return violations.empty(); }
    std::string describe() const;
};

enum class BudgetRule { Enforce, Ignore };

/// Full constraint check against an explicit fleet. BudgetRule::Ignore drops
/// constraint (a) for fixed-fleet routing where the fleet is a given.
FeasibilityReport check_feasibility(const Solution& solution, const Problem& problem, const Fleet& fleet,
                                    const TravelSet& travel, BudgetRule budget = BudgetRule::Enforce);

/// Check against the problem's base fleet.
FeasibilityReport is_feasible(const Solution& solution, const Problem& problem, const TravelSet& travel);
FeasibilityReport is_feasible(const Solution& solution, const Problem& problem);

/// Number of distinct tasks visited. Throws InfeasibleSolution if the
/// solution fails the feasibility check.
std::size_t evaluate_reward(const Solution& solution, const Problem& problem, const TravelSet& travel);
std::size_t evaluate_reward(const Solution& solution, const Problem& problem);
std::size_t evaluate_reward(const Solution& solution, const Problem& problem, const Fleet& fleet,
                            const TravelSet& travel, BudgetRule budget = BudgetRule::Enforce);

}  // namespace fleet
