#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "fleet/model.hpp"

namespace fleet {

enum class VarKind { Binary, Continuous };
enum class Sense { LessEqual, Equal, GreaterEqual };

struct MilpVariable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();

    friend bool operator==(const MilpVariable&, const MilpVariable&) = default;
};

struct MilpTerm {
    std::size_t var = 0;
    double coef = 0.0;

    friend bool operator==(const MilpTerm&, const MilpTerm&) = default;
};

struct MilpConstraint {
    std::string name;
    std::vector<MilpTerm> terms;
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;

    friend bool operator==(const MilpConstraint&, const MilpConstraint&) = default;
};

/// A linear program with binary and continuous variables, as exchanged
/// through the textual LP format.
struct MilpModel {
    std::vector<MilpVariable> variables;
    std::string objective_name = "obj";
    bool maximize = true;
    std::vector<MilpTerm> objective;
    std::vector<MilpConstraint> constraints;
    double big_m = 0.0;

    std::size_t add_variable(std::string name, VarKind kind, double lower, double upper);
    /// Throws std::out_of_range for unknown names.
    std::size_t index_of(const std::string& name) const;
    bool has_variable(const std::string& name) const { return index_.count(name) != 0; }

    std::size_t count_kind(VarKind kind) const;
    /// Number of constraints whose name starts with `prefix`.
    std::size_t count_constraints(const std::string& prefix) const;

    friend bool operator==(const MilpModel& a, const MilpModel& b) {
        return a.variables == b.variables && a.objective_name == b.objective_name && a.maximize == b.maximize &&
               a.objective == b.objective && a.constraints == b.constraints && a.big_m == b.big_m;
    }

private:
    std::unordered_map<std::string, std::size_t> index_;
};

/// Routing MILP over the base fleet: start depot 0, tasks 1..N, end depot
/// copy N+1, robots k = 1..K. Variables x_i_j_k, y_i_k, z_k (binary) and
/// s_i_k (continuous). Rows are named after the constraint family they
/// implement: c3b (depot flow), c3c (degree coupling), c3d (time
/// propagation), c3e (unique service), c3f (capability), c3g (deadline),
/// c3h (battery), c3i (budget). Arcs into the start depot, out of the end
/// depot, self loops and unreachable legs are fixed to zero.
MilpModel export_milp(const Problem& problem);

void write_lp(std::ostream& os, const MilpModel& model);
std::string to_lp(const MilpModel& model);

/// Reads the subset of the LP format produced by write_lp. Every variable must
/// appear in the Bounds section, which defines the variable order. Throws
/// ParseError.
MilpModel read_lp(std::istream& is, const std::string& source = "<lp>");

}  // namespace fleet
