#include "fleet/baselines.hpp"

#include <ostream>

#include "fleet/rng.hpp"

namespace fleet {
namespace {

Fleet make_fleet(const std::vector<TypeId>& types) {
    Fleet fleet;
    for (TypeId t : types) {
        fleet.robots.push_back(Robot{static_cast<RobotIndex>(fleet.robots.size()), t});
    }
    return fleet;
}

}  // namespace

LnsResult fixed_fleet_mrta(const Problem& problem, const Fleet& fleet, const TravelSet& travel,
                           const LnsParams& params) {
    LnsParams fixed = params;
    fixed.removal_mode_bias = 0.0;
    const SearchContext ctx(problem, fleet, travel, SearchOptions{BudgetRule::Ignore, false});
    return run_lns(ctx, fixed, {});
}

LnsResult fixed_fleet_mrta(const Problem& problem, const Fleet& fleet, const LnsParams& params) {
    problem.validate();
    return fixed_fleet_mrta(problem, fleet, build_travel_set(problem), params);
}

GreedyResult greedy_fleet(const Problem& problem, const LnsParams& inner) {
    problem.validate();
    inner.validate();
    const TravelSet travel = build_travel_set(problem);
    const Fleet base = build_base_fleet(problem);

    GreedyResult out;
    std::vector<TypeId> chosen;
    Money spent{0};
    std::size_t reward = 0;
    Solution routed;  // over make_fleet(chosen)
    const std::uint64_t outer = mix64(inner.seed);

    for (std::size_t step = 0;; ++step) {
        GreedyStep best_step;
        bool have_best = false;
        Rational best_ratio{0};
        std::size_t best_reward = 0;
        Solution best_solution;

        for (const RobotType& type : problem.robot_types) {
            if (spent + type.deploy_cost > problem.budget) {
                continue;
            }
            std::vector<TypeId> trial = chosen;
            trial.push_back(type.id);
            const Fleet fleet = make_fleet(trial);
            LnsParams params = inner;
            params.seed = hash_combine(hash_combine(outer, step), type.id);
            LnsResult run = fixed_fleet_mrta(problem, fleet, travel, params);
            out.result.iterations += params.iterations;

            const auto gain = static_cast<std::int64_t>(run.best_reward) - static_cast<std::int64_t>(reward);
            const Rational ratio = Rational(gain) / type.deploy_cost;
            best_step.evaluated.push_back(GreedyCandidate{type.id, run.best_reward, gain, ratio.to_double()});
            if (!have_best || ratio > best_ratio) {
                have_best = true;
                best_ratio = ratio;
                best_step.type = type.id;
                best_step.marginal_gain = gain;
                best_step.cost = type.deploy_cost;
                best_step.ratio = ratio.to_double();
                best_reward = run.best_reward;
                best_solution = std::move(run.best);
            }
        }
        if (!have_best) {
            break;
        }
        if (best_step.marginal_gain <= 0) {
            out.trace.skipped_budget = problem.budget - spent;
            break;
        }
        chosen.push_back(best_step.type);
        spent += best_step.cost;
        reward = best_reward;
        routed = std::move(best_solution);
        best_step.reward_after = reward;
        out.trace.steps.push_back(std::move(best_step));
    }

    const Fleet purchased = make_fleet(chosen);
    out.result.purchased = purchased;
    out.result.reward = reward;
    out.result.solution =
        chosen.empty() ? Solution::empty_for(base) : embed_in_base_fleet(routed, purchased, base);
    return out;
}

BaselineResult random_fleet(const Problem& problem, const LnsParams& params) {
    problem.validate();
    params.validate();
    Rng rng(hash_combine(mix64(params.seed), 0x72616e646f6dULL));

    std::vector<TypeId> chosen;
    Money spent{0};
    for (;;) {
        std::vector<TypeId> affordable;
        for (const RobotType& type : problem.robot_types) {
            if (spent + type.deploy_cost <= problem.budget) {
                affordable.push_back(type.id);
            }
        }
        if (affordable.empty()) {
            break;
        }
        const TypeId pick = affordable[rng.index(affordable.size())];
        chosen.push_back(pick);
        spent += problem.type(pick).deploy_cost;
    }

    const Fleet base = build_base_fleet(problem);
    const Fleet purchased = make_fleet(chosen);
    BaselineResult out;
    out.purchased = purchased;
    if (chosen.empty()) {
        out.solution = Solution::empty_for(base);
        return out;
    }
    LnsResult run = fixed_fleet_mrta(problem, purchased, params);
    out.iterations = params.iterations;
    out.reward = run.best_reward;
    out.solution = embed_in_base_fleet(run.best, purchased, base);
    return out;
}

void write_greedy_trace(std::ostream& os, const GreedyTrace& trace) {
    os << "step,type_id,marginal_gain,cost,ratio,reward_after\n";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const GreedyStep& s = trace.steps[i];
        os << i + 1 << ',' << s.type << ',' << s.marginal_gain << ',' << s.cost << ',' << s.ratio << ','
           << s.reward_after << '\n';
    }
}

}  // namespace fleet
