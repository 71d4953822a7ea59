#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "fixtures.hpp"
#include "fleet/baselines.hpp"
#include "oracles.hpp"

using namespace fleet;
using fleet::testing::make_type;

namespace {

LnsParams quick(std::uint64_t seed, std::size_t k = 300) {
    LnsParams p;
    p.iterations = k;
    p.seed = seed;
    return p;
}

Money fleet_cost(const Problem& p, const Fleet& f) {
    Money total{0};
    for (const Robot& r : f.robots) {
        total = total + p.type(r.type).deploy_cost;
    }
    return total;
}

}  // namespace

TEST(FixedFleet, EmptyFleetServesNothing) {
    const Problem p = fleet::testing::line_problem();
    const LnsResult r = fixed_fleet_mrta(p, Fleet{}, quick(1));
    EXPECT_EQ(r.best_reward, 0u);
    EXPECT_TRUE(r.best.tours.empty());
}

TEST(FixedFleet, SingleRobotSingleTask) {
    const Problem p = fleet::testing::one_task_problem(Rational{2}, Time{5}, Money{10}, Time{4}, Money{0});
    Fleet f;
    f.robots = {{0, 0}};
    const LnsResult r = fixed_fleet_mrta(p, f, quick(2));
    EXPECT_EQ(r.best_reward, 1u);
    EXPECT_EQ(r.best.tours[0].visits, (std::vector<TaskId>{0}));
}

TEST(FixedFleet, IgnoresBudgetAndUsesOnlyTaskRemoval) {
    const Problem p = fleet::testing::four_task_problem();
    Fleet f;
    f.robots = {{0, 1}, {1, 1}};  // 30 > B = 25
    const LnsResult r = fixed_fleet_mrta(p, f, quick(3));
    for (const IterationRecord& rec : r.log) {
        EXPECT_NE(rec.mode, RemovalMode::RobotRemoval);
    }
    const TravelSet set = build_travel_set(p);
    EXPECT_TRUE(check_feasibility(r.best, p, f, set, BudgetRule::Ignore).feasible());
    EXPECT_EQ(r.best_reward, 4u);
}

TEST(FixedFleet, MatchesFixedFleetOracle) {
    int hits = 0;
    int total = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Problem p = fleet::testing::tiny_instance(seed);
        while (p.tasks.size() > 4) {
            p.tasks.pop_back();
        }
        Fleet f;
        f.robots = {{0, 0}, {1, static_cast<TypeId>(p.robot_types.size() - 1)}};
        const std::size_t optimum =
            fleet::testing::permutation_optimum(p, {f.robots[0].type, f.robots[1].type}, false);
        const LnsResult r = fixed_fleet_mrta(p, f, quick(seed, 1000));
        EXPECT_LE(r.best_reward, optimum);
        hits += r.best_reward == optimum;
        ++total;
    }
    EXPECT_GE(hits, 9) << hits << "/" << total;
}

TEST(Greedy, BudgetBelowCheapestType) {
    const Problem p = fleet::testing::one_task_problem(Rational{1}, Time{5}, Money{10}, Time{5}, Money{9});
    const GreedyResult g = greedy_fleet(p, quick(4));
    EXPECT_EQ(g.result.reward, 0u);
    EXPECT_TRUE(g.result.purchased.empty());
    EXPECT_TRUE(g.trace.steps.empty());
}

TEST(Greedy, TraceInvariants) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const Problem p = fleet::testing::fuzz_instance(seed);
        const GreedyResult g = greedy_fleet(p, quick(seed, 100));
        EXPECT_LE(fleet_cost(p, g.result.purchased), p.budget);
        std::size_t previous = 0;
        Money spent{0};
        for (const GreedyStep& step : g.trace.steps) {
            EXPECT_GE(step.reward_after, previous);
            EXPECT_EQ(static_cast<std::int64_t>(step.reward_after) - static_cast<std::int64_t>(previous),
                      step.marginal_gain);
            EXPECT_GT(step.marginal_gain, 0);
            spent = spent + step.cost;
            EXPECT_LE(spent, p.budget);
            for (const GreedyCandidate& c : step.evaluated) {
                EXPECT_LE(c.ratio, step.ratio);
            }
            previous = step.reward_after;
        }
        EXPECT_EQ(g.result.reward, previous);
        EXPECT_TRUE(is_feasible(g.result.solution, p).feasible());
        EXPECT_EQ(evaluate_reward(g.result.solution, p), g.result.reward);
    }
}

TEST(Greedy, NeverBeatsOracle) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const Problem p = fleet::testing::tiny_instance(seed);
        const GreedyResult g = greedy_fleet(p, quick(seed));
        EXPECT_LE(g.result.reward, fleet::testing::permutation_optimum(p));
    }
}

TEST(Greedy, Deterministic) {
    const Problem p = fleet::testing::fuzz_instance(8);
    const GreedyResult a = greedy_fleet(p, quick(5, 100));
    const GreedyResult b = greedy_fleet(p, quick(5, 100));
    EXPECT_EQ(a.result.solution, b.result.solution);
    std::ostringstream ta, tb;
    write_greedy_trace(ta, a.trace);
    write_greedy_trace(tb, b.trace);
    EXPECT_EQ(ta.str(), tb.str());
    EXPECT_EQ(ta.str().substr(0, ta.str().find('\n')), "step,type_id,marginal_gain,cost,ratio,reward_after");
}

TEST(RandomFleet, BudgetBelowMinimum) {
    const Problem p = fleet::testing::one_task_problem(Rational{1}, Time{5}, Money{10}, Time{5}, Money{9});
    const BaselineResult r = random_fleet(p, quick(6));
    EXPECT_TRUE(r.purchased.empty());
    EXPECT_EQ(r.reward, 0u);
}

TEST(RandomFleet, SingleTypeBuysFloor) {
    Problem p = fleet::testing::line_problem();
    p.robot_types[0].deploy_cost = Money{20};
    p.budget = Money{70};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        EXPECT_EQ(random_fleet(p, quick(seed, 10)).purchased.size(), 3u);
    }
}

TEST(RandomFleet, SpendsUntilNothingFits) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Problem p = fleet::testing::fuzz_instance(seed);
        const BaselineResult r = random_fleet(p, quick(seed, 30));
        const Money spent = fleet_cost(p, r.purchased);
        EXPECT_LE(spent, p.budget);
        for (const RobotType& t : p.robot_types) {
            EXPECT_GT(spent + t.deploy_cost, p.budget);
        }
        EXPECT_TRUE(is_feasible(r.solution, p).feasible());
    }
}
