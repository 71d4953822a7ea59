#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "fleet/graph.hpp"
#include "fleet/rational.hpp"

namespace fleet {

using TaskId = std::uint32_t;
using TypeId = std::uint32_t;
using RobotIndex = std::uint32_t;

/// Set of requirement / capability labels. Labels are small dense ids
/// (0..63) shared by task requirements and robot capabilities.
class LabelSet {
public:
    static constexpr unsigned kMaxLabels = 64;

    constexpr LabelSet() noexcept = default;
    LabelSet(std::initializer_list<unsigned> labels);

    static constexpr LabelSet from_bits(std::uint64_t bits) noexcept {
        LabelSet s;
        s.bits_ = bits;
        return s;
    }

    void insert(unsigned label);
    constexpr bool contains(unsigned label) const noexcept {
        return label < kMaxLabels && ((bits_ >> label) & 1U) != 0;
    }
    constexpr bool is_subset_of(const LabelSet& other) const noexcept {
        return (bits_ & ~other.bits_) == 0;
    }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr std::uint64_t bits() const noexcept { return bits_; }
    std::vector<unsigned> labels() const;

    friend constexpr bool operator==(const LabelSet&, const LabelSet&) noexcept = default;

private:
    std::uint64_t bits_ = 0;
};

struct Task {
    TaskId id = 0;
    VertexId vertex = 0;
    Time deadline;  // > 0, may be infinite
    LabelSet requirements;

    friend bool operator==(const Task&, const Task&) = default;
};

struct RobotType {
    TypeId id = 0;
    std::string name;
    std::string kind;  // free-form label such as AGV or UAV
    LabelSet capabilities;
    Money deploy_cost;
    Time battery;
    Rational speed_factor{1};  // 1 = 100 %
    std::vector<std::string> allowed_edge_classes;

    bool can_service(const Task& task) const noexcept {
        return task.requirements.is_subset_of(capabilities);
    }
    bool allows(const std::string& edge_class) const;

    friend bool operator==(const RobotType&, const RobotType&) = default;
};

struct Robot {
    RobotIndex robot_index = 0;
    TypeId type = 0;

    friend bool operator==(const Robot&, const Robot&) = default;
};

/// Ordered multiset of robots. Solutions index their tours by position in
/// a fleet; the base fleet is the fleet every budget-feasible fleet embeds in.
struct Fleet {
    std::vector<Robot> robots;

    std::size_t size() const noexcept { return robots.size(); }
    bool empty() const noexcept { return robots.empty(); }

    friend bool operator==(const Fleet&, const Fleet&) = default;
};

struct Problem {
    std::string name;
    EnvironmentGraph graph;
    VertexId depot = 0;
    std::vector<Task> tasks;
    std::vector<RobotType> robot_types;
    Money budget;

    std::size_t task_count() const noexcept { return tasks.size(); }
    const RobotType& type(TypeId id) const { return robot_types.at(id); }

    /// Checks every structural invariant; throws InvalidProblem.
    void validate() const;

    friend bool operator==(const Problem&, const Problem&) = default;
};

struct Tour {
    RobotIndex robot_index = 0;
    std::vector<TaskId> visits;

    bool empty() const noexcept { return visits.empty(); }

    friend bool operator==(const Tour&, const Tour&) = default;
};

/// One tour per robot of a fleet; tours[i].robot_index == i.
struct Solution {
    std::vector<Tour> tours;

    static Solution empty_for(const Fleet& fleet);

    bool is_active(RobotIndex robot) const { return !tours.at(robot).visits.empty(); }
    std::vector<RobotIndex> active_robots() const;
    std::size_t visit_count() const noexcept;

    friend bool operator==(const Solution&, const Solution&) = default;
};

/// ceil(B / b_i) robots of every type, ordered by (type id, copy index).
Fleet build_base_fleet(const Problem& problem);

/// Sum of deploy costs over robots with non-empty tours.
Money active_cost(const Solution& solution, const Problem& problem, const Fleet& fleet);

/// Maps a solution over a sub-fleet of the base fleet onto base-fleet
/// indices: each robot takes the lowest unused base-fleet copy of its type.
/// Throws InvalidProblem when the fleet uses more copies of a type than the
/// base fleet holds.
Solution embed_in_base_fleet(const Solution& solution, const Fleet& fleet, const Fleet& base_fleet);

}  // namespace fleet
