#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "fleet/errors.hpp"
#include "fleet/milp.hpp"
#include "oracles.hpp"

using namespace fleet;
using fleet::testing::make_task;
using fleet::testing::make_type;

namespace {

struct Counts {
    std::size_t x, y, z, s, rows;
    std::size_t c3b, c3c, c3d, c3e, c3f, c3g, c3h, c3i;
};

// Variable and row counts for N tasks and K robots when every leg is
// reachable: nodes 0..N+1; arcs into 0, out of N+1 and self loops fixed.
Counts expected(std::size_t n, std::size_t k) {
    Counts c{};
    c.x = (n + 2) * (n + 2) * k;
    c.y = n * k;
    c.z = k;
    c.s = (n + 2) * k;
    c.c3b = 2 * k;
    c.c3c = 2 * n * k;
    c.c3d = ((n + 1) * (n + 1) - n) * k;
    c.c3e = n;
    c.c3f = n * k;
    c.c3g = n * k;
    c.c3h = k;
    c.c3i = 1;
    c.rows = c.c3b + c.c3c + c.c3d + c.c3e + c.c3f + c.c3g + c.c3h + c.c3i;
    return c;
}

void expect_counts(const MilpModel& m, const Counts& c) {
    std::size_t x = 0, y = 0, z = 0, s = 0;
    for (const MilpVariable& v : m.variables) {
        x += v.name[0] == 'x';
        y += v.name[0] == 'y';
        z += v.name[0] == 'z';
        s += v.name[0] == 's';
    }
    EXPECT_EQ(x, c.x);
    EXPECT_EQ(y, c.y);
    EXPECT_EQ(z, c.z);
    EXPECT_EQ(s, c.s);
    EXPECT_EQ(m.count_kind(VarKind::Binary), c.x + c.y + c.z);
    EXPECT_EQ(m.count_kind(VarKind::Continuous), c.s);
    EXPECT_EQ(m.count_constraints("c3b"), c.c3b);
    EXPECT_EQ(m.count_constraints("c3c"), c.c3c);
    EXPECT_EQ(m.count_constraints("c3d"), c.c3d);
    EXPECT_EQ(m.count_constraints("c3e"), c.c3e);
    EXPECT_EQ(m.count_constraints("c3f"), c.c3f);
    EXPECT_EQ(m.count_constraints("c3g"), c.c3g);
    EXPECT_EQ(m.count_constraints("c3h"), c.c3h);
    EXPECT_EQ(m.count_constraints("c3i"), c.c3i);
    EXPECT_EQ(m.constraints.size(), c.rows);
}

Problem two_by_two() {
    Problem p = fleet::testing::line_problem();
    p.tasks.pop_back();
    p.robot_types = {make_type(0, LabelSet{0}, Money{10}, Time{30}), make_type(1, LabelSet{0, 1}, Money{15}, Time{40})};
    p.budget = Money{10};  // one robot of each type
    return p;
}

}  // namespace

TEST(Milp, SingleTaskSingleRobotCounts) {
    const Problem p = fleet::testing::one_task_problem(Rational{2}, Time{5}, Money{1}, Time{10}, Money{1});
    const MilpModel m = export_milp(p);
    expect_counts(m, expected(1, 1));
    EXPECT_EQ(m.variables.size(), 9u + 1u + 1u + 3u);
}

TEST(Milp, TwoTasksTwoRobotsCounts) {
    const Problem p = two_by_two();
    ASSERT_EQ(build_base_fleet(p).size(), 2u);
    const MilpModel m = export_milp(p);
    expect_counts(m, expected(2, 2));
    EXPECT_EQ(m.variables.size(), 46u);
    EXPECT_EQ(m.constraints.size(), 39u);
    EXPECT_TRUE(m.maximize);
    EXPECT_EQ(m.objective.size(), 4u);
}

TEST(Milp, FixedArcsHaveZeroUpperBound) {
    const MilpModel m = export_milp(two_by_two());
    EXPECT_EQ(m.variables[m.index_of("x_1_1_1")].upper, 0.0);
    EXPECT_EQ(m.variables[m.index_of("x_1_0_2")].upper, 0.0);
    EXPECT_EQ(m.variables[m.index_of("x_3_1_1")].upper, 0.0);
    EXPECT_EQ(m.variables[m.index_of("x_0_1_1")].upper, 1.0);
    EXPECT_EQ(m.variables[m.index_of("x_0_3_2")].upper, 1.0);
}

TEST(Milp, UnreachableLegsDropTimeRows) {
    Problem p = two_by_two();
    p.robot_types[1].allowed_edge_classes = {"air"};  // robot 2 cannot move
    const MilpModel m = export_milp(p);
    // Robot 2 keeps only the empty tour 0 -> 3.
    EXPECT_EQ(m.count_constraints("c3d"), expected(2, 1).c3d + 1);
    EXPECT_EQ(m.variables[m.index_of("x_0_1_2")].upper, 0.0);
}

TEST(Milp, CapabilityConstants) {
    Problem p = fleet::testing::one_task_problem(Rational{1}, Time{5}, Money{1}, Time{10}, Money{1});
    p.robot_types[0].capabilities = LabelSet{1, 2};
    p.tasks[0].requirements = LabelSet{2};
    MilpModel m = export_milp(p);
    auto rhs = [&](const std::string& name) {
        for (const MilpConstraint& c : m.constraints) {
            if (c.name == name) {
                return c.rhs;
            }
        }
        ADD_FAILURE() << "no row " << name;
        return -1.0;
    };
    EXPECT_EQ(rhs("c3f_1_1"), 1.0);
    p.tasks[0].requirements = LabelSet{3};
    m = export_milp(p);
    EXPECT_EQ(rhs("c3f_1_1"), 0.0);
}

TEST(Milp, BigMCoversDeadlinePlusLongestLeg) {
    const Problem p = two_by_two();
    const MilpModel m = export_milp(p);
    // Deadlines 100, longest leg on the path 0-1-2 is 5.
    EXPECT_EQ(m.big_m, 100.0 + 5.0 + 1.0);
}

TEST(Milp, BudgetRowUsesDeployCosts) {
    const MilpModel m = export_milp(two_by_two());
    const MilpConstraint& budget = m.constraints.back();
    EXPECT_EQ(budget.name, "c3i");
    EXPECT_EQ(budget.rhs, 10.0);
    ASSERT_EQ(budget.terms.size(), 2u);
    EXPECT_EQ(m.variables[budget.terms[0].var].name, "z_1");
    EXPECT_EQ(budget.terms[0].coef, 10.0);
    EXPECT_EQ(budget.terms[1].coef, 15.0);
}

TEST(Milp, LpRoundTrip) {
    const MilpModel m = export_milp(two_by_two());
    const std::string text = to_lp(m);
    EXPECT_NE(text.find("Maximize"), std::string::npos);
    EXPECT_NE(text.find("Subject To"), std::string::npos);
    EXPECT_NE(text.find("Bounds"), std::string::npos);
    EXPECT_NE(text.find("Binaries"), std::string::npos);
    std::istringstream in(text);
    const MilpModel back = read_lp(in);
    EXPECT_EQ(back, m);
    EXPECT_EQ(to_lp(back), text);
}

TEST(Milp, RoundTripOnRandomInstances) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Problem p = fleet::testing::tiny_instance(seed);
        const MilpModel m = export_milp(p);
        std::istringstream in(to_lp(m));
        EXPECT_EQ(read_lp(in), m) << "seed " << seed;
    }
}

TEST(Milp, ReaderRejectsMalformedText) {
    std::istringstream garbage("Maximize\n obj: 3 q\nSubject To\n c: q <= 1\nEnd\n");
    EXPECT_THROW(read_lp(garbage), ParseError);
    std::istringstream truncated("Maximize\n obj: y_1_1\n");
    EXPECT_THROW(read_lp(truncated), ParseError);
}
