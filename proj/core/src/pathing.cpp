#include "fleet/pathing.hpp"

#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <utility>

#include "fleet/errors.hpp"

namespace fleet {
namespace {

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
    std::int64_t l = std::lcm(a, b);
    if (l <= 0 || l > (std::int64_t{1} << 40)) {
        throw InvalidProblem("time scale too fine: use coarser rationals for lengths, speeds or deadlines");
    }
    return l;
}

std::int64_t checked_product(std::int64_t a, std::int64_t b) {
    std::int64_t p = 0;
    if (__builtin_mul_overflow(a, b, &p) || p <= 0 || p > (std::int64_t{1} << 40)) {
        throw InvalidProblem("time scale too fine: use coarser rationals for lengths, speeds or deadlines");
    }
    return p;
}

std::int64_t length_denominator(const EnvironmentGraph& graph) {
    std::int64_t den = 1;
    for (const Edge& e : graph.edges) {
        den = checked_lcm(den, e.length.den());
    }
    return den;
}

}  // namespace

TimeScale::TimeScale(std::int64_t ticks_per_unit) : ticks_per_unit_(ticks_per_unit) {
    if (ticks_per_unit <= 0) {
        throw std::invalid_argument("time scale must be positive");
    }
}

TimeScale TimeScale::for_problem(const Problem& problem) {
    return for_instance(problem.graph, problem.tasks, problem.robot_types);
}

TimeScale TimeScale::for_instance(const EnvironmentGraph& graph, std::span<const Task> tasks,
                                  std::span<const RobotType> types) {
    // Path lengths are multiples of 1/D; a travel time length * q / p is
    // then a multiple of 1/(D * p).
    const std::int64_t lengths = length_denominator(graph);
    std::int64_t scale = lengths;
    for (const RobotType& t : types) {
        scale = checked_lcm(scale, checked_product(lengths, t.speed_factor.num()));
        if (t.battery.is_finite()) {
            scale = checked_lcm(scale, t.battery.den());
        }
    }
    for (const Task& t : tasks) {
        if (t.deadline.is_finite()) {
            scale = checked_lcm(scale, t.deadline.den());
        }
    }
    return TimeScale(scale);
}

Ticks TimeScale::to_ticks(const Time& t) const {
    if (t.is_infinite()) {
        return kInfiniteTicks;
    }
    Rational scaled = t * Rational(ticks_per_unit_);
    if (!scaled.is_integer()) {
        throw std::domain_error("time " + t.to_string() + " is not representable on scale 1/" +
                                std::to_string(ticks_per_unit_));
    }
    if (scaled.num() >= kInfiniteTicks) {
        throw std::overflow_error("time " + t.to_string() + " exceeds the tick range");
    }
    return scaled.num();
}

Time TimeScale::to_time(Ticks ticks) const {
    if (ticks >= kInfiniteTicks) {
        return Time::infinity();
    }
    return Time(ticks, ticks_per_unit_);
}

TravelMatrix::TravelMatrix(TypeId type, std::size_t nodes, TimeScale scale)
    : type_(type), nodes_(nodes), scale_(scale), ticks_(nodes * nodes, kInfiniteTicks) {
    for (std::size_t i = 0; i < nodes; ++i) {
        ticks_[i * nodes + i] = 0;
    }
}

Time TravelMatrix::time(std::size_t a, std::size_t b) const {
    return scale_.to_time(ticks(a, b));
}

namespace {

// Dijkstra over integral length units; returns kInfiniteTicks-like sentinel
// (-1) for unreachable vertices.
std::vector<std::int64_t> dijkstra_units(const EnvironmentGraph& graph, VertexId source, const RobotType& rtype,
                                         std::int64_t units_per_length) {
    struct Arc {
        VertexId to;
        std::int64_t length;
    };
    std::vector<std::vector<Arc>> adjacency(graph.vertex_count);
    for (const Edge& e : graph.edges) {
        if (!rtype.allows(e.edge_class)) {
            continue;
        }
        Rational units = e.length * Rational(units_per_length);
        adjacency[e.u].push_back({e.v, units.num()});
        adjacency[e.v].push_back({e.u, units.num()});
    }

    std::vector<std::int64_t> dist(graph.vertex_count, -1);
    using Entry = std::pair<std::int64_t, VertexId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[source] = 0;
    queue.emplace(0, source);
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (d != dist[v]) {
            continue;
        }
        for (const Arc& arc : adjacency[v]) {
            std::int64_t nd = d + arc.length;
            if (dist[arc.to] < 0 || nd < dist[arc.to]) {
                dist[arc.to] = nd;
                queue.emplace(nd, arc.to);
            }
        }
    }
    return dist;
}

}  // namespace

std::vector<Rational> shortest_path_lengths(const EnvironmentGraph& graph, VertexId source, const RobotType& rtype) {
    if (!graph.has_vertex(source)) {
        throw InvalidProblem("source vertex out of range");
    }
    std::int64_t den = length_denominator(graph);
    std::vector<std::int64_t> units = dijkstra_units(graph, source, rtype, den);
    std::vector<Rational> out;
    out.reserve(units.size());
    for (std::int64_t u : units) {
        out.push_back(u < 0 ? Rational::infinity() : Rational(u, den));
    }
    return out;
}

TravelMatrix build_travel_matrix(const EnvironmentGraph& graph, VertexId depot, std::span<const Task> tasks,
                                 const RobotType& rtype, const TimeScale& scale) {
    graph.validate();
    if (!graph.has_vertex(depot)) {
        throw InvalidProblem("depot vertex out of range");
    }
    std::vector<VertexId> node_vertex;
    node_vertex.reserve(tasks.size() + 1);
    node_vertex.push_back(depot);
    for (const Task& t : tasks) {
        if (!graph.has_vertex(t.vertex)) {
            throw InvalidProblem("task vertex out of range");
        }
        node_vertex.push_back(t.vertex);
    }

    const std::size_t nodes = node_vertex.size();
    TravelMatrix matrix(rtype.id, nodes, scale);
    const std::int64_t den = length_denominator(graph);
    std::vector<std::vector<std::int64_t>> cache(graph.vertex_count);
    for (std::size_t a = 0; a < nodes; ++a) {
        auto& dist = cache[node_vertex[a]];
        if (dist.empty()) {
            dist = dijkstra_units(graph, node_vertex[a], rtype, den);
        }
        for (std::size_t b = 0; b < nodes; ++b) {
            if (a == b) {
                continue;
            }
            std::int64_t units = dist[node_vertex[b]];
            if (units < 0) {
                continue;
            }
            matrix.set_ticks(a, b, scale.to_ticks(Rational(units, den) / rtype.speed_factor));
        }
    }
    return matrix;
}

TravelMatrix build_travel_matrix(const EnvironmentGraph& graph, VertexId depot, std::span<const Task> tasks,
                                 const RobotType& rtype) {
    return build_travel_matrix(graph, depot, tasks, rtype,
                               TimeScale::for_instance(graph, tasks, std::span<const RobotType>(&rtype, 1)));
}

TravelSet build_travel_set(const Problem& problem) {
    TravelSet set;
    set.scale = TimeScale::for_problem(problem);
    set.matrices.reserve(problem.robot_types.size());
    for (const RobotType& type : problem.robot_types) {
        set.matrices.push_back(build_travel_matrix(problem.graph, problem.depot, problem.tasks, type, set.scale));
    }
    return set;
}

}  // namespace fleet
