#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "fleet/errors.hpp"
#include "fleet/exact.hpp"
#include "fleet/feasibility.hpp"
#include "fleet/lns.hpp"
#include "oracles.hpp"

using namespace fleet;

TEST(BruteForce, NoTasks) {
    Problem p = fleet::testing::line_problem();
    p.tasks.clear();
    EXPECT_EQ(brute_force(p).reward, 0u);
}

TEST(BruteForce, SingleServiceableTask) {
    const Problem p = fleet::testing::one_task_problem(Rational{2}, Time{3}, Money{5}, Time{4}, Money{5});
    const OracleResult r = brute_force(p);
    EXPECT_EQ(r.reward, 1u);
    EXPECT_EQ(evaluate_reward(r.solution, p), 1u);
}

TEST(BruteForce, FrozenFourTaskOptimum) {
    // Two robots of the {0,1} type would serve all four tasks but cost 30.
    const Problem p = fleet::testing::four_task_problem();
    EXPECT_EQ(brute_force(p).reward, 3u);
    Fleet two_b;
    two_b.robots = {{0, 1}, {1, 1}};
    EXPECT_EQ(brute_force_fixed_fleet(p, two_b).reward, 4u);
}

TEST(BruteForce, EqualsKnapsackOnStarReduction) {
    std::mt19937_64 gen(23);
    for (int instance = 0; instance < 10; ++instance) {
        const auto n = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 5)(gen));
        std::vector<std::int64_t> w(n), v(n);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = std::uniform_int_distribution<std::int64_t>(1, 9)(gen);
            v[i] = std::uniform_int_distribution<std::int64_t>(1, 2)(gen);
        }
        const std::int64_t cap = std::uniform_int_distribution<std::int64_t>(1, 20)(gen);
        const Problem p = fleet::testing::knapsack_problem(w, v, cap);
        OracleLimits limits;
        limits.max_base_fleet = 1000;
        const OracleResult r = brute_force(p, limits);
        EXPECT_EQ(static_cast<std::int64_t>(r.reward), fleet::testing::knapsack_dp(w, v, cap));
        EXPECT_EQ(evaluate_reward(r.solution, p), r.reward);
    }
}

TEST(BruteForce, MatchesPermutationEnumeration) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Problem p = fleet::testing::tiny_instance(seed);
        const OracleResult r = brute_force(p);
        ASSERT_EQ(r.reward, fleet::testing::permutation_optimum(p)) << "seed " << seed;
        EXPECT_FALSE(fleet::testing::reference_violation(r.solution, p, fleet::testing::reference_base_fleet(p), true));
        EXPECT_EQ(r.solution.visit_count(), r.reward);
    }
}

TEST(BruteForce, FixedFleetMatchesPermutationEnumeration) {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        const Problem p = fleet::testing::tiny_instance(seed);
        Fleet f;
        std::vector<TypeId> types;
        for (RobotIndex i = 0; i < 3; ++i) {
            const auto t = static_cast<TypeId>(i % p.robot_types.size());
            f.robots.push_back({i, t});
            types.push_back(t);
        }
        const OracleResult r = brute_force_fixed_fleet(p, f);
        ASSERT_EQ(r.reward, fleet::testing::permutation_optimum(p, types, false)) << "seed " << seed;
        EXPECT_FALSE(fleet::testing::reference_violation(r.solution, p, types, false));
    }
}

TEST(BruteForce, UpperBoundsLns) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Problem p = fleet::testing::fuzz_instance(seed);
        if (p.tasks.size() > 8) {
            continue;
        }
        LnsParams params;
        params.iterations = 200;
        params.seed = seed;
        EXPECT_LE(solve(p, params).best_reward, brute_force(p).reward) << "seed " << seed;
    }
}

TEST(BruteForce, LimitsCheckedFirst) {
    Problem p = fleet::testing::line_problem();
    OracleLimits limits;
    limits.max_tasks = 2;
    EXPECT_THROW(brute_force(p, limits), SizeExceeded);
    limits = OracleLimits{};
    limits.max_base_fleet = 0;
    EXPECT_THROW(brute_force(p, limits), SizeExceeded);
    limits = OracleLimits{};
    limits.max_states = 1;
    EXPECT_THROW(brute_force(p, limits), SizeExceeded);
}
