#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fleet/model.hpp"

namespace fleet {

/// Extra edges of class "air" laid over the grid.
enum class AirEdges {
    None,
    Grid,      // 8-neighbourhood over every cell, obstacles included
    Complete,  // straight line between every pair of free cells
};

std::string to_string(AirEdges policy);
AirEdges parse_air_edges(const std::string& text);

/// Grid of width x height cells; vertex id = row * width + column. Ground
/// edges join 4-neighbouring free cells. Obstacle cells keep their vertex but
/// receive no ground edges.
struct GridSpec {
    std::size_t width = 20;
    std::size_t height = 20;
    Rational spacing{1};
    double obstacle_density = 0.0;
    AirEdges air = AirEdges::None;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct RequirementCategory {
    LabelSet labels;
    double weight = 1.0;

    friend bool operator==(const RequirementCategory&, const RequirementCategory&) = default;
};

struct ScenarioSpec {
    std::string name = "scenario";
    std::optional<EnvironmentGraph> graph;  // used instead of the grid when set
    GridSpec grid;
    std::optional<VertexId> depot;  // default: centre cell of the grid, vertex 0 of an inline graph
    std::size_t task_count = 0;
    std::vector<RequirementCategory> requirements;
    Time deadline{150};  // may be infinite
    std::vector<RobotType> robot_types;
    Money budget;
    std::uint64_t seed = 0;

    /// Throws InvalidProblem.
    void validate() const;
    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Samples N distinct task vertices uniformly among free cells reachable from
/// the depot over ground edges (any vertex but the depot for an inline graph)
/// and draws one requirement set per task. Deterministic in spec.seed.
/// Throws InsufficientVertices when fewer than N candidate vertices exist.
Problem generate(const ScenarioSpec& spec);

/// Rounded Euclidean distance used for air edges, as a multiple of 1/100.
Rational euclidean_length(std::size_t dx, std::size_t dy, const Rational& spacing);

/// Spec files shipped with the library, by name: exp1, exp2, exp3.
ScenarioSpec builtin_spec(const std::string& name);
std::vector<std::string> builtin_spec_names();

// Persistence. All loaders throw ParseError with the line and field at fault;
// savers throw std::invalid_argument for values the format cannot hold.

void save_problem(std::ostream& os, const Problem& problem);
Problem load_problem(std::istream& is, const std::string& source = "<scenario>");

struct SolutionFile {
    std::string method = "lns";
    std::uint64_t seed = 0;
    std::size_t reward = 0;
    std::vector<TypeId> robot_types;  // type of every fleet position
    Solution solution;

    friend bool operator==(const SolutionFile&, const SolutionFile&) = default;
};

/// Solution over the problem's base fleet.
SolutionFile make_solution_file(const Problem& problem, const Solution& solution, std::string method,
                                std::uint64_t seed, std::size_t reward);
/// Throws InvalidProblem when the recorded fleet differs from the problem's base fleet.
void check_matches_base_fleet(const SolutionFile& file, const Problem& problem);

void save_solution(std::ostream& os, const SolutionFile& file);
SolutionFile load_solution(std::istream& is, const std::string& source = "<solution>");

void save_spec(std::ostream& os, const ScenarioSpec& spec);
ScenarioSpec load_spec(std::istream& is, const std::string& source = "<spec>");

Problem load_problem_file(const std::string& path);
void save_problem_file(const std::string& path, const Problem& problem);
SolutionFile load_solution_file(const std::string& path);
void save_solution_file(const std::string& path, const SolutionFile& file);
ScenarioSpec load_spec_file(const std::string& path);
void save_spec_file(const std::string& path, const ScenarioSpec& spec);

}  // namespace fleet
