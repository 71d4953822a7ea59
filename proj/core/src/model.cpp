#include "fleet/model.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "fleet/errors.hpp"

namespace fleet {

LabelSet::LabelSet(std::initializer_list<unsigned> labels) {
    for (unsigned label : labels) {
        insert(label);
    }
}

void LabelSet::insert(unsigned label) {
    if (label >= kMaxLabels) {
        throw InvalidProblem("requirement label " + std::to_string(label) + " out of range (max 63)");
    }
    bits_ |= std::uint64_t{1} << label;
}

std::vector<unsigned> LabelSet::labels() const {
    std::vector<unsigned> out;
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
        out.push_back(static_cast<unsigned>(std::countr_zero(rest)));
    }
    return out;
}

bool RobotType::allows(const std::string& edge_class) const {
    return std::find(allowed_edge_classes.begin(), allowed_edge_classes.end(), edge_class) !=
           allowed_edge_classes.end();
}

void EnvironmentGraph::validate() const {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        if (!has_vertex(e.u) || !has_vertex(e.v)) {
            throw InvalidProblem("edge " + std::to_string(i) + " has an endpoint out of range");
        }
        if (!(e.length > Rational(0)) || e.length.is_infinite()) {
            throw InvalidProblem("edge " + std::to_string(i) + " must have a finite positive length");
        }
    }
}

void Problem::validate() const {
    graph.validate();
    if (!graph.has_vertex(depot)) {
        throw InvalidProblem("depot vertex " + std::to_string(depot) + " does not exist");
    }
    if (budget < Rational(0) || budget.is_infinite()) {
        throw InvalidProblem("budget must be finite and non-negative");
    }
    if (robot_types.empty()) {
        throw InvalidProblem("at least one robot type is required");
    }
    for (std::size_t i = 0; i < robot_types.size(); ++i) {
        const RobotType& t = robot_types[i];
        if (t.id != i) {
            throw InvalidProblem("robot type ids must be dense and ordered (expected " + std::to_string(i) + ")");
        }
        if (!(t.deploy_cost > Rational(0)) || t.deploy_cost.is_infinite()) {
            throw InvalidProblem("robot type " + std::to_string(i) + ": deploy cost must be positive");
        }
        if (!(t.battery > Rational(0))) {
            throw InvalidProblem("robot type " + std::to_string(i) + ": battery must be positive");
        }
        if (!(t.speed_factor > Rational(0)) || t.speed_factor.is_infinite()) {
            throw InvalidProblem("robot type " + std::to_string(i) + ": speed factor must be positive");
        }
    }
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Task& t = tasks[i];
        if (t.id != i) {
            throw InvalidProblem("task ids must be dense and ordered (expected " + std::to_string(i) + ")");
        }
        if (!graph.has_vertex(t.vertex)) {
            throw InvalidProblem("task " + std::to_string(i) + ": vertex does not exist");
        }
        if (!(t.deadline > Rational(0))) {
            throw InvalidProblem("task " + std::to_string(i) + ": deadline must be positive");
        }
    }
}

Solution Solution::empty_for(const Fleet& fleet) {
    Solution s;
    s.tours.reserve(fleet.size());
    for (const Robot& r : fleet.robots) {
        s.tours.push_back(Tour{r.robot_index, {}});
    }
    return s;
}

std::vector<RobotIndex> Solution::active_robots() const {
    std::vector<RobotIndex> out;
    for (const Tour& t : tours) {
        if (!t.visits.empty()) {
            out.push_back(t.robot_index);
        }
    }
    return out;
}

std::size_t Solution::visit_count() const noexcept {
    std::size_t n = 0;
    for (const Tour& t : tours) {
        n += t.visits.size();
    }
    return n;
}

Fleet build_base_fleet(const Problem& problem) {
    Fleet fleet;
    for (const RobotType& type : problem.robot_types) {
        if (!(type.deploy_cost > Rational(0))) {
            throw InvalidProblem("deploy costs must be positive");
        }
        // ceil(B / b) for exact non-negative rationals
        Rational ratio = problem.budget / type.deploy_cost;
        std::int64_t copies = ratio.num() / ratio.den() + (ratio.num() % ratio.den() != 0 ? 1 : 0);
        for (std::int64_t c = 0; c < copies; ++c) {
            fleet.robots.push_back(Robot{static_cast<RobotIndex>(fleet.robots.size()), type.id});
        }
    }
    return fleet;
}

Money active_cost(const Solution& solution, const Problem& problem, const Fleet& fleet) {
    Money total{0};
    for (const Tour& tour : solution.tours) {
        if (!tour.visits.empty()) {
            total += problem.type(fleet.robots.at(tour.robot_index).type).deploy_cost;
        }
    }
    return total;
}

Solution embed_in_base_fleet(const Solution& solution, const Fleet& fleet, const Fleet& base_fleet) {
    std::map<TypeId, std::vector<RobotIndex>> free_copies;
    for (const Robot& r : base_fleet.robots) {
        free_copies[r.type].push_back(r.robot_index);
    }
    for (auto& [type, copies] : free_copies) {
        std::reverse(copies.begin(), copies.end());
    }
    Solution out = Solution::empty_for(base_fleet);
    for (const Robot& r : fleet.robots) {
        auto& copies = free_copies[r.type];
        if (copies.empty()) {
            throw InvalidProblem("fleet holds more robots of type " + std::to_string(r.type) +
                                 " than the base fleet");
        }
        RobotIndex target = copies.back();
        copies.pop_back();
        out.tours[target].visits = solution.tours.at(r.robot_index).visits;
    }
    return out;
}

}  // namespace fleet
