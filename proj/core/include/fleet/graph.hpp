#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fleet/rational.hpp"

namespace fleet {

using VertexId = std::uint32_t;

struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    Rational length;  // > 0
    std::string edge_class;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph. Each edge carries a class label ("ground",
/// "air", ...) that robot types may or may not traverse.
struct EnvironmentGraph {
    std::size_t vertex_count = 0;
    std::vector<Edge> edges;

    bool has_vertex(VertexId v) const noexcept { return v < vertex_count; }

    /// Throws InvalidProblem on out-of-range endpoints or non-positive lengths.
    void validate() const;

    friend bool operator==(const EnvironmentGraph&, const EnvironmentGraph&) = default;
};

}  // namespace fleet
