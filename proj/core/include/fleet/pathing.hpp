#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fleet/graph.hpp"
#include "fleet/model.hpp"
#include "fleet/rational.hpp"

namespace fleet {

/// Integer time ticks. Every travel time, deadline and battery of a problem
/// is an exact multiple of 1/ticks_per_unit, so comparisons in the solvers
/// are plain integer comparisons.
using Ticks = std::int64_t;
inline constexpr Ticks kInfiniteTicks = std::numeric_limits<Ticks>::max() / 4;

class TimeScale {
public:
    TimeScale() = default;
    explicit TimeScale(std::int64_t ticks_per_unit);

    /// Smallest scale on which every edge length divided by every speed
    /// factor, every deadline and every battery is integral.
    static TimeScale for_problem(const Problem& problem);
    static TimeScale for_instance(const EnvironmentGraph& graph, std::span<const Task> tasks,
                                  std::span<const RobotType> types);

    std::int64_t ticks_per_unit() const noexcept { return ticks_per_unit_; }

    /// Throws std::domain_error if the value is not representable exactly.
    Ticks to_ticks(const Time& t) const;
    Time to_time(Ticks ticks) const;

    friend bool operator==(const TimeScale&, const TimeScale&) = default;

private:
    std::int64_t ticks_per_unit_ = 1;
};

/// Complete meta-graph for one robot type: shortest travel times between the
/// depot (node 0) and every task (node task_id + 1).
class TravelMatrix {
public:
    TravelMatrix() = default;
    TravelMatrix(TypeId type, std::size_t nodes, TimeScale scale);

    static constexpr std::size_t kDepotNode = 0;
    static constexpr std::size_t node_of(TaskId task) noexcept { return static_cast<std::size_t>(task) + 1; }

    TypeId robot_type() const noexcept { return type_; }
    std::size_t nodes() const noexcept { return nodes_; }
    const TimeScale& scale() const noexcept { return scale_; }

    Ticks ticks(std::size_t a, std::size_t b) const noexcept { return ticks_[a * nodes_ + b]; }
    void set_ticks(std::size_t a, std::size_t b, Ticks value) noexcept { ticks_[a * nodes_ + b] = value; }
    bool reachable(std::size_t a, std::size_t b) const noexcept { return ticks(a, b) < kInfiniteTicks; }

    /// Exact travel time; Rational::infinity() when unreachable.
    Time time(std::size_t a, std::size_t b) const;

    friend bool operator==(const TravelMatrix&, const TravelMatrix&) = default;

private:
    TypeId type_ = 0;
    std::size_t nodes_ = 0;
    TimeScale scale_;
    std::vector<Ticks> ticks_;
};

/// Travel matrices for every robot type of a problem on one shared scale.
struct TravelSet {
    TimeScale scale;
    std::vector<TravelMatrix> matrices;  // indexed by type id

    const TravelMatrix& operator[](TypeId type) const { return matrices.at(type); }
};

/// Shortest-path lengths from `source` over edges the type may use, in
/// exact length units; infinity where no permitted path exists.
std::vector<Rational> shortest_path_lengths(const EnvironmentGraph& graph, VertexId source,
                                            const RobotType& rtype);

TravelMatrix build_travel_matrix(const EnvironmentGraph& graph, VertexId depot, std::span<const Task> tasks,
                                 const RobotType& rtype, const TimeScale& scale);
TravelMatrix build_travel_matrix(const EnvironmentGraph& graph, VertexId depot, std::span<const Task> tasks,
                                 const RobotType& rtype);

TravelSet build_travel_set(const Problem& problem);

}  // namespace fleet
