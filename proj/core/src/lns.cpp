#include "fleet/lns.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "fleet/errors.hpp"

namespace fleet {

std::string to_string(RemovalMode mode) {
    switch (mode) {
        case RemovalMode::Initial: return "init";
        case RemovalMode::RobotRemoval: return "robot";
        case RemovalMode::TaskRemoval: return "task";
    }
    return "unknown";
}

std::string to_string(DiscountDenominator denominator) {
    return denominator == DiscountDenominator::Cost ? "cost" : "battery";
}

DiscountDenominator parse_discount_denominator(const std::string& text) {
    if (text == "cost") {
        return DiscountDenominator::Cost;
    }
    if (text == "battery") {
        return DiscountDenominator::Battery;
    }
    throw std::invalid_argument("discount denominator must be 'cost' or 'battery', got '" + text + "'");
}

void LnsParams::validate() const {
    auto probability = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
        }
    };
    auto percent = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 100.0)) {
            throw std::invalid_argument(std::string(name) + " must lie in [0, 100]");
        }
    };
    if (iterations < 1) {
        throw std::invalid_argument("iterations must be at least 1");
    }
    percent(robot_removal_max_pct, "robot_removal_max_pct");
    percent(task_removal_max_pct, "task_removal_max_pct");
    probability(removal_mode_bias, "removal_mode_bias");
    probability(discount_prob, "discount_prob");
    if (!(noise_max >= 0.0) || !std::isfinite(noise_max)) {
        throw std::invalid_argument("noise_max must be finite and non-negative");
    }
    if (!(sa_initial_temp >= 0.0) || !std::isfinite(sa_initial_temp)) {
        throw std::invalid_argument("sa_initial_temp must be finite and non-negative");
    }
    if (!(sa_cooling > 0.0 && sa_cooling < 1.0)) {
        throw std::invalid_argument("sa_cooling must lie in (0, 1)");
    }
}

SearchContext::SearchContext(const Problem& problem, const Fleet& fleet, const TravelSet& travel,
                             SearchOptions options)
    : problem_(&problem), fleet_(&fleet), travel_(&travel), options_(options) {
    deadline_.reserve(problem.task_count());
    for (const Task& t : problem.tasks) {
        deadline_.push_back(travel.scale.to_ticks(t.deadline));
    }
    battery_.reserve(problem.robot_types.size());
    for (const RobotType& t : problem.robot_types) {
        battery_.push_back(travel.scale.to_ticks(t.battery));
    }
    for (std::size_t i = 0; i < fleet.size(); ++i) {
        if (fleet.robots[i].robot_index != i || fleet.robots[i].type >= problem.robot_types.size()) {
            throw InvalidProblem("fleet robots must be indexed by position and reference known types");
        }
    }
}

TourTiming TourTiming::of(const SearchContext& ctx, const Tour& tour) {
    TourTiming timing;
    const TravelMatrix& matrix = ctx.matrix_of(tour.robot_index);
    const std::size_t n = tour.visits.size();
    timing.arrival.resize(n);
    timing.slack_suffix.assign(n + 1, kInfiniteTicks);
    std::size_t prev = TravelMatrix::kDepotNode;
    Ticks clock = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t node = TravelMatrix::node_of(tour.visits[i]);
        clock += matrix.ticks(prev, node);
        timing.arrival[i] = clock;
        prev = node;
    }
    timing.duration = n == 0 ? 0 : clock + matrix.ticks(prev, TravelMatrix::kDepotNode);
    for (std::size_t i = n; i-- > 0;) {
        Ticks dl = ctx.deadline(tour.visits[i]);
        Ticks slack = dl >= kInfiniteTicks ? kInfiniteTicks : dl - timing.arrival[i];
        timing.slack_suffix[i] = std::min(slack, timing.slack_suffix[i + 1]);
    }
    return timing;
}

std::optional<Insertion> best_insertion(const SearchContext& ctx, const Tour& tour, const TourTiming& timing,
                                        TaskId task) {
    const RobotType& type = ctx.type_of(tour.robot_index);
    if (!type.can_service(ctx.problem().tasks[task])) {
        return std::nullopt;
    }
    const TravelMatrix& matrix = ctx.matrix_of(tour.robot_index);
    const std::size_t u = TravelMatrix::node_of(task);
    const std::size_t n = tour.visits.size();
    const Ticks deadline = ctx.deadline(task);
    const Ticks battery = ctx.battery(tour.robot_index);

    std::optional<Insertion> best;
    for (std::size_t p = 0; p <= n; ++p) {
        const std::size_t prev = p == 0 ? TravelMatrix::kDepotNode : TravelMatrix::node_of(tour.visits[p - 1]);
        const std::size_t next = p == n ? TravelMatrix::kDepotNode : TravelMatrix::node_of(tour.visits[p]);
        const Ticks in = matrix.ticks(prev, u);
        const Ticks out = matrix.ticks(u, next);
        if (in >= kInfiniteTicks || out >= kInfiniteTicks) {
            continue;
        }
        const Ticks arrive = (p == 0 ? 0 : timing.arrival[p - 1]) + in;
        if (arrive > deadline) {
            continue;
        }
        const Ticks added = in + out - matrix.ticks(prev, next);
        if (added > timing.slack_suffix[p]) {
            continue;
        }
        if (timing.duration + added > battery) {
            continue;
        }
        if (!best || added < best->added) {
            best = Insertion{p, added};
        }
    }
    return best;
}

double utility(const SearchContext& ctx, RobotIndex robot, bool feasible, bool activates, const LnsParams& params,
               Rng& rng) {
    if (!feasible) {
        return 0.0;
    }
    // Every feasible insertion services exactly one more task.
    constexpr double marginal_gain = 1.0;
    double discount = 1.0;
    if (activates && ctx.options().discount && rng.bernoulli(params.discount_prob)) {
        const RobotType& type = ctx.type_of(robot);
        const Rational& denom =
            params.discount_denominator == DiscountDenominator::Cost ? type.deploy_cost : type.battery;
        discount = 1.0 / denom.to_double();
    }
    const double noise = rng.uniform_real(0.0, params.noise_max);
    return (1.0 + noise) * discount * marginal_gain;
}

RemovalMode select_removal_mode(Rng& rng, const LnsParams& params) {
    return rng.bernoulli(params.removal_mode_bias) ? RemovalMode::RobotRemoval : RemovalMode::TaskRemoval;
}

namespace {

// floor(pct% of count) with a guard against binary rounding of exact cases.
std::size_t percent_of(double pct, std::size_t count) {
    return static_cast<std::size_t>(std::floor(pct * static_cast<double>(count) / 100.0 + 1e-9));
}

}  // namespace

RemovalOutcome robot_removal(const Solution& solution, const LnsParams& params, Rng& rng) {
    RemovalOutcome out{solution, {}};
    std::vector<RobotIndex> active = solution.active_robots();
    if (active.empty()) {
        return out;
    }
    const std::size_t limit = std::max<std::size_t>(1, percent_of(params.robot_removal_max_pct, active.size()));
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(limit)));
    // partial Fisher-Yates: the first m entries are a uniform sample
    for (std::size_t i = 0; i < m; ++i) {
        std::swap(active[i], active[i + rng.index(active.size() - i)]);
    }
    for (std::size_t i = 0; i < m; ++i) {
        Tour& tour = out.partial.tours[active[i]];
        out.unassigned.insert(out.unassigned.end(), tour.visits.begin(), tour.visits.end());
        tour.visits.clear();
    }
    return out;
}

RemovalOutcome task_removal(const Solution& solution, const LnsParams& params, Rng& rng) {
    RemovalOutcome out{solution, {}};
    for (Tour& tour : out.partial.tours) {
        if (tour.visits.empty()) {
            continue;
        }
        const std::size_t n = tour.visits.size();
        const std::size_t limit = percent_of(params.task_removal_max_pct, n);
        const auto k = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(limit)));
        if (k == 0) {
            continue;
        }
        std::vector<std::size_t> positions(n);
        std::iota(positions.begin(), positions.end(), 0);
        for (std::size_t i = 0; i < k; ++i) {
            std::swap(positions[i], positions[i + rng.index(n - i)]);
        }
        std::vector<bool> drop(n, false);
        for (std::size_t i = 0; i < k; ++i) {
            drop[positions[i]] = true;
        }
        std::vector<TaskId> kept;
        kept.reserve(n - k);
        for (std::size_t i = 0; i < n; ++i) {
            if (drop[i]) {
                out.unassigned.push_back(tour.visits[i]);
            } else {
                kept.push_back(tour.visits[i]);
            }
        }
        tour.visits = std::move(kept);
    }
    return out;
}

Solution repair(const SearchContext& ctx, Solution partial, std::vector<TaskId> unassigned, const LnsParams& params,
                Rng& rng) {
    const Fleet& fleet = ctx.fleet();
    const Problem& problem = ctx.problem();
    const bool enforce_budget = ctx.options().budget == BudgetRule::Enforce;

    std::vector<TourTiming> timings;
    timings.reserve(partial.tours.size());
    for (const Tour& tour : partial.tours) {
        timings.push_back(TourTiming::of(ctx, tour));
    }
    Money spent = active_cost(partial, problem, fleet);

    struct Choice {
        double utility = 0.0;
        Ticks added = 0;
        RobotIndex robot = 0;
        std::size_t position = 0;
    };

    while (!unassigned.empty()) {
        const std::size_t pick = rng.index(unassigned.size());
        const TaskId task = unassigned[pick];
        unassigned[pick] = unassigned.back();
        unassigned.pop_back();

        std::optional<Choice> chosen;
        for (std::size_t i = 0; i < partial.tours.size(); ++i) {
            const auto robot = static_cast<RobotIndex>(i);
            const Tour& tour = partial.tours[i];
            const bool activates = tour.visits.empty();
            std::optional<Insertion> ins = best_insertion(ctx, tour, timings[i], task);
            bool feasible = ins.has_value();
            if (feasible && activates && enforce_budget) {
                feasible = spent + ctx.type_of(robot).deploy_cost <= problem.budget;
            }
            const double z = utility(ctx, robot, feasible, activates, params, rng);
            if (z <= 0.0) {
                continue;
            }
            Choice c{z, ins->added, robot, ins->position};
            if (!chosen || c.utility > chosen->utility ||
                (c.utility == chosen->utility && c.added < chosen->added)) {
                chosen = c;
            }
        }
        if (!chosen) {
            continue;
        }
        Tour& tour = partial.tours[chosen->robot];
        if (tour.visits.empty()) {
            spent += ctx.type_of(chosen->robot).deploy_cost;
        }
        tour.visits.insert(tour.visits.begin() + static_cast<std::ptrdiff_t>(chosen->position), task);
        timings[chosen->robot] = TourTiming::of(ctx, tour);
    }
    return partial;
}

Solution initial_solution(const SearchContext& ctx, Rng& rng, const LnsParams& params) {
    std::vector<TaskId> tasks(ctx.problem().task_count());
    std::iota(tasks.begin(), tasks.end(), 0);
    std::shuffle(tasks.begin(), tasks.end(), rng.engine());
    return repair(ctx, Solution::empty_for(ctx.fleet()), std::move(tasks), params, rng);
}

double annealing_temperature(std::size_t iteration, const LnsParams& params) {
    return params.sa_initial_temp * std::pow(params.sa_cooling, static_cast<double>(iteration));
}

double acceptance_probability(std::int64_t reward_delta, double temperature) {
    if (reward_delta >= 0) {
        return 1.0;
    }
    if (!(temperature > 0.0)) {
        return 0.0;
    }
    return std::exp(static_cast<double>(reward_delta) / temperature);
}

bool accept(std::size_t new_reward, std::size_t current_reward, std::size_t iteration, const LnsParams& params,
            Rng& rng) {
    if (new_reward >= current_reward) {
        return true;
    }
    const auto delta = static_cast<std::int64_t>(new_reward) - static_cast<std::int64_t>(current_reward);
    return rng.bernoulli(acceptance_probability(delta, annealing_temperature(iteration, params)));
}

LnsResult run_lns(const SearchContext& ctx, const LnsParams& params, const LnsObserver& observer) {
    params.validate();
    Rng rng(params.seed);
    const std::size_t task_count = ctx.problem().task_count();

    Solution current = initial_solution(ctx, rng, params);
    std::size_t current_reward = current.visit_count();

    LnsResult result;
    result.best = current;
    result.best_reward = current_reward;
    result.initial_reward = current_reward;
    result.log.reserve(params.iterations + 1);
    result.log.push_back(IterationRecord{0, RemovalMode::Initial, current_reward, current_reward, true});
    if (observer) {
        observer(result.log.back(), current);
    }

    std::vector<char> visited(task_count);
    for (std::size_t k = 1; k <= params.iterations; ++k) {
        const RemovalMode mode = select_removal_mode(rng, params);
        RemovalOutcome removal =
            mode == RemovalMode::RobotRemoval ? robot_removal(current, params, rng) : task_removal(current, params, rng);

        // Tasks left out by earlier repairs rejoin the pool alongside the removed ones.
        std::fill(visited.begin(), visited.end(), 0);
        for (const Tour& tour : removal.partial.tours) {
            for (TaskId t : tour.visits) {
                visited[t] = 1;
            }
        }
        for (TaskId t : removal.unassigned) {
            visited[t] = 1;
        }
        for (TaskId t = 0; t < task_count; ++t) {
            if (!visited[t]) {
                removal.unassigned.push_back(t);
            }
        }

        Solution candidate = repair(ctx, std::move(removal.partial), std::move(removal.unassigned), params, rng);
        const std::size_t candidate_reward = candidate.visit_count();

        if (candidate_reward > result.best_reward) {
            result.best = candidate;
            result.best_reward = candidate_reward;
        }
        const bool accepted = accept(candidate_reward, current_reward, k, params, rng);
        IterationRecord record{k, mode, accepted ? candidate_reward : current_reward, result.best_reward, accepted};
        if (observer) {
            observer(record, candidate);
        }
        if (accepted) {
            current = std::move(candidate);
            current_reward = candidate_reward;
        }
        result.log.push_back(record);
    }

    for (const Tour& tour : result.best.tours) {
        if (!tour.visits.empty()) {
            result.fleet.robots.push_back(ctx.fleet().robots[tour.robot_index]);
        }
    }
    return result;
}

LnsResult solve(const Problem& problem, const LnsParams& params, const LnsObserver& observer) {
    problem.validate();
    const Fleet base = build_base_fleet(problem);
    const TravelSet travel = build_travel_set(problem);
    const SearchContext ctx(problem, base, travel, SearchOptions{BudgetRule::Enforce, true});
    return run_lns(ctx, params, observer);
}

void write_iteration_log(std::ostream& os, const std::vector<IterationRecord>& log) {
    os << "iteration,mode,current_reward,best_reward,accepted\n";
    for (const IterationRecord& r : log) {
        os << r.iteration << ',' << to_string(r.mode) << ',' << r.current_reward << ',' << r.best_reward << ','
           << (r.accepted ? 1 : 0) << '\n';
    }
}

}  // namespace fleet
