#include "fleet/feasibility.hpp"

#include <sstream>

#include "fleet/errors.hpp"

namespace fleet {

TourSchedule tour_schedule(const Tour& tour, const Problem& problem, const TravelMatrix& travel) {
    TourSchedule schedule;
    schedule.arrivals.reserve(tour.visits.size());
    std::size_t prev = TravelMatrix::kDepotNode;
    Ticks clock = 0;
    for (TaskId task : tour.visits) {
        if (task >= problem.task_count()) {
            throw InvalidProblem("tour visits unknown task " + std::to_string(task));
        }
        std::size_t node = TravelMatrix::node_of(task);
        if (!travel.reachable(prev, node)) {
            throw UnreachableVertex("robot " + std::to_string(tour.robot_index) + " cannot reach task " +
                                    std::to_string(task));
        }
        clock += travel.ticks(prev, node);
        schedule.arrivals.push_back({task, travel.scale().to_time(clock)});
        prev = node;
    }
    if (!tour.visits.empty()) {
        if (!travel.reachable(prev, TravelMatrix::kDepotNode)) {
            throw UnreachableVertex("robot " + std::to_string(tour.robot_index) + " cannot return to the depot");
        }
        clock += travel.ticks(prev, TravelMatrix::kDepotNode);
    }
    schedule.duration = travel.scale().to_time(clock);
    return schedule;
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Budget: return "budget";
        case ViolationKind::Battery: return "battery";
        case ViolationKind::Capability: return "capability";
        case ViolationKind::Deadline: return "deadline";
        case ViolationKind::DuplicateVisit: return "duplicate-visit";
        case ViolationKind::UnknownTask: return "unknown-task";
        case ViolationKind::Unreachable: return "unreachable";
        case ViolationKind::Shape: return "shape";
    }
    return "unknown";
}

std::string FeasibilityReport::describe() const {
    std::ostringstream os;
    for (const Violation& v : violations) {
        os << to_string(v.kind) << " robot=" << v.robot << " task=" << v.task << ": " << v.detail << '\n';
    }
    return os.str();
}

FeasibilityReport check_feasibility(const Solution& solution, const Problem& problem, const Fleet& fleet,
                                    const TravelSet& travel, BudgetRule budget) {
    FeasibilityReport report;
    auto add = [&](ViolationKind kind, RobotIndex robot, TaskId task, std::string detail) {
        report.violations.push_back(Violation{kind, robot, task, std::move(detail)});
    };

    if (solution.tours.size() != fleet.size()) {
        add(ViolationKind::Shape, 0, 0,
            "solution has " + std::to_string(solution.tours.size()) + " tours for a fleet of " +
                std::to_string(fleet.size()));
        return report;
    }

    std::vector<int> seen(problem.task_count(), -1);
    Money cost{0};
    for (std::size_t i = 0; i < solution.tours.size(); ++i) {
        const Tour& tour = solution.tours[i];
        const auto robot = static_cast<RobotIndex>(i);
        if (tour.robot_index != robot) {
            add(ViolationKind::Shape, robot, 0, "tour robot_index does not match its position");
            continue;
        }
        if (tour.visits.empty()) {
            continue;
        }
        const RobotType& type = problem.type(fleet.robots[i].type);
        const TravelMatrix& matrix = travel[type.id];
        cost += type.deploy_cost;

        std::size_t prev = TravelMatrix::kDepotNode;
        Ticks clock = 0;
        bool broken = false;
        for (TaskId task : tour.visits) {
            if (task >= problem.task_count()) {
                add(ViolationKind::UnknownTask, robot, task, "task id out of range");
                broken = true;
                break;
            }
            if (seen[task] >= 0) {
                add(ViolationKind::DuplicateVisit, robot, task,
                    "already visited by robot " + std::to_string(seen[task]));
            } else {
                seen[task] = static_cast<int>(robot);
            }
            const Task& t = problem.tasks[task];
            if (!type.can_service(t)) {
                add(ViolationKind::Capability, robot, task, "requirements exceed capabilities");
            }
            std::size_t node = TravelMatrix::node_of(task);
            if (!matrix.reachable(prev, node)) {
                add(ViolationKind::Unreachable, robot, task, "no permitted path");
                broken = true;
                break;
            }
            clock += matrix.ticks(prev, node);
            if (clock > travel.scale.to_ticks(t.deadline)) {
                add(ViolationKind::Deadline, robot, task,
                    "arrival " + travel.scale.to_time(clock).to_string() + " > deadline " + t.deadline.to_string());
            }
            prev = node;
        }
        if (broken) {
            continue;
        }
        if (!matrix.reachable(prev, TravelMatrix::kDepotNode)) {
            add(ViolationKind::Unreachable, robot, tour.visits.back(), "no permitted path back to the depot");
            continue;
        }
        clock += matrix.ticks(prev, TravelMatrix::kDepotNode);
        if (clock > travel.scale.to_ticks(type.battery)) {
            add(ViolationKind::Battery, robot, 0,
                "duration " + travel.scale.to_time(clock).to_string() + " > battery " + type.battery.to_string());
        }
    }

    if (budget == BudgetRule::Enforce && cost > problem.budget) {
        add(ViolationKind::Budget, 0, 0, "active cost " + cost.to_string() + " > budget " + problem.budget.to_string());
    }
    return report;
}

FeasibilityReport is_feasible(const Solution& solution, const Problem& problem, const TravelSet& travel) {
    return check_feasibility(solution, problem, build_base_fleet(problem), travel, BudgetRule::Enforce);
}

std::size_t evaluate_reward(const Solution& solution, const Problem& problem, const Fleet& fleet,
                            const TravelSet& travel, BudgetRule budget) {
    FeasibilityReport report = check_feasibility(solution, problem, fleet, travel, budget);
    if (!report.feasible()) {
        throw InfeasibleSolution("solution is infeasible:\n" + report.describe());
    }
    return solution.visit_count();
}

std::size_t evaluate_reward(const Solution& solution, const Problem& problem, const TravelSet& travel) {
    return evaluate_reward(solution, problem, build_base_fleet(problem), travel, BudgetRule::Enforce);
}

FeasibilityReport is_feasible(const Solution& solution, const Problem& problem) {
    return is_feasible(solution, problem, build_travel_set(problem));
}

std::size_t evaluate_reward(const Solution& solution, const Problem& problem) {
    return evaluate_reward(solution, problem, build_travel_set(problem));
}

}  // namespace fleet
