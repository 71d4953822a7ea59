// Hand-checked values for the reference implementations in tests/support.

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fleet;
using namespace fleet::testing;

TEST(Oracles, KnapsackByHand) {
    EXPECT_EQ(knapsack_dp({1, 3, 4, 5}, {1, 4, 5, 7}, 7), 9);
    EXPECT_EQ(knapsack_dp({5}, {10}, 4), 0);
    EXPECT_EQ(knapsack_dp({}, {}, 10), 0);
    EXPECT_EQ(knapsack_dp({2, 2, 2}, {1, 1, 1}, 5), 2);
}

TEST(Oracles, KnapsackProblemShape) {
    const Problem p = knapsack_problem({3, 4}, {2, 1}, 5);
    EXPECT_NO_THROW(p.validate());
    EXPECT_EQ(p.tasks.size(), 3u);
    EXPECT_EQ(p.tasks[0].vertex, p.tasks[1].vertex);
    EXPECT_EQ(p.robot_types[1].deploy_cost, Money{4});
    EXPECT_EQ(permutation_optimum(p), 2u);
}

TEST(Oracles, FloydWarshallOnLine) {
    const Problem p = line_problem();
    const RationalMatrix d = floyd_warshall(p.graph, p.robot_types[0]);
    EXPECT_EQ(d[0][3], Rational{10});
    EXPECT_EQ(d[3][1], Rational{8});
    RobotType air = p.robot_types[0];
    air.allowed_edge_classes = {"air"};
    EXPECT_TRUE(floyd_warshall(p.graph, air)[0][1].is_infinite());
}

TEST(Oracles, PermutationOptimumByHand) {
    // Worked out in fixtures.hpp: three tasks within budget, four with two {0,1} robots.
    const Problem p = four_task_problem();
    EXPECT_EQ(reference_base_fleet(p), (std::vector<TypeId>{0, 0, 0, 1, 1}));
    EXPECT_EQ(permutation_optimum(p), 3u);
    EXPECT_EQ(permutation_optimum(p, {1, 1}, false), 4u);
    EXPECT_EQ(permutation_optimum(p, {0}, false), 1u);
}

TEST(Oracles, ReferenceViolationCatchesEachKind) {
    const Problem p = line_problem();
    const std::vector<TypeId> fleet{0};
    Solution s;
    s.tours = {Tour{0, {0, 1, 2}}};
    EXPECT_FALSE(reference_violation(s, p, fleet, true));

    Problem late = p;
    late.tasks[2].deadline = Time{9};
    EXPECT_TRUE(reference_violation(s, late, fleet, true));

    Problem weak = p;
    weak.robot_types[0].battery = Time{19};
    EXPECT_TRUE(reference_violation(s, weak, fleet, true));

    Problem poor = p;
    poor.budget = Money{9};
    EXPECT_TRUE(reference_violation(s, poor, fleet, true));
    EXPECT_FALSE(reference_violation(s, poor, fleet, false));

    Problem picky = p;
    picky.tasks[1].requirements = LabelSet{1};
    EXPECT_TRUE(reference_violation(s, picky, fleet, true));

    s.tours = {Tour{0, {0, 0}}};
    EXPECT_TRUE(reference_violation(s, p, fleet, true));
}

TEST(Oracles, InstanceGeneratorsRespectBounds) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Problem p = tiny_instance(seed);
        EXPECT_NO_THROW(p.validate());
        EXPECT_LE(p.graph.vertex_count, 16u);
        EXPECT_LE(p.tasks.size(), 5u);
        EXPECT_LE(p.robot_types.size(), 2u);
        EXPECT_LE(reference_base_fleet(p).size(), 4u);
        EXPECT_NO_THROW(fuzz_instance(seed).validate());
    }
}
