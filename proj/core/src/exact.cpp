#include "fleet/exact.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <vector>

#include "fleet/errors.hpp"

namespace fleet {
namespace {

using Mask = std::uint32_t;

/// Shortest feasible tours of one robot type over every task subset.
struct SubsetTours {
    std::vector<Ticks> arrival;   // [mask * n + last], kInfiniteTicks if infeasible
    std::vector<Ticks> duration;  // [mask], kInfiniteTicks if no feasible tour
    std::size_t n = 0;

    bool feasible(Mask mask) const { return duration[mask] < kInfiniteTicks; }
};

SubsetTours tabulate(const Problem& problem, const TravelSet& travel, const RobotType& type) {
    const std::size_t n = problem.task_count();
    const TravelMatrix& m = travel[type.id];
    const Ticks battery = travel.scale.to_ticks(type.battery);
    std::vector<Ticks> deadline(n);
    for (std::size_t t = 0; t < n; ++t) {
        deadline[t] = travel.scale.to_ticks(problem.tasks[t].deadline);
    }

    SubsetTours out;
    out.n = n;
    const std::size_t masks = std::size_t{1} << n;
    out.arrival.assign(masks * std::max<std::size_t>(n, 1), kInfiniteTicks);
    out.duration.assign(masks, kInfiniteTicks);
    out.duration[0] = 0;

    for (std::size_t t = 0; t < n; ++t) {
        if (!type.can_service(problem.tasks[t]) || !m.reachable(0, TravelMatrix::node_of(t))) {
            continue;
        }
        Ticks a = m.ticks(0, TravelMatrix::node_of(t));
        if (a <= deadline[t]) {
            out.arrival[(Mask{1} << t) * n + t] = a;
        }
    }
    for (Mask mask = 1; mask < masks; ++mask) {
        for (std::size_t last = 0; last < n; ++last) {
            const Ticks at = out.arrival[mask * n + last];
            if (at >= kInfiniteTicks) {
                continue;
            }
            const std::size_t from = TravelMatrix::node_of(last);
            if (m.reachable(from, 0)) {
                out.duration[mask] = std::min(out.duration[mask], at + m.ticks(from, 0));
            }
            for (std::size_t next = 0; next < n; ++next) {
                if ((mask >> next) & 1U || !type.can_service(problem.tasks[next])) {
                    continue;
                }
                const std::size_t to = TravelMatrix::node_of(next);
                if (!m.reachable(from, to)) {
                    continue;
                }
                const Ticks a = at + m.ticks(from, to);
                Ticks& slot = out.arrival[(mask | (Mask{1} << next)) * n + next];
                if (a <= deadline[next] && a < slot) {
                    slot = a;
                }
            }
        }
    }
    for (Mask mask = 1; mask < masks; ++mask) {
        if (out.duration[mask] > battery) {
            out.duration[mask] = kInfiniteTicks;
        }
    }
    return out;
}

/// Recovers a visit order realizing the tabulated duration of `mask`.
std::vector<TaskId> order_of(const SubsetTours& tours, const TravelMatrix& m, Mask mask) {
    const std::size_t n = tours.n;
    std::size_t last = n;
    for (std::size_t t = 0; t < n; ++t) {
        const Ticks at = tours.arrival[mask * n + t];
        if (at < kInfiniteTicks && m.reachable(TravelMatrix::node_of(t), 0) &&
            at + m.ticks(TravelMatrix::node_of(t), 0) == tours.duration[mask]) {
            last = t;
            break;
        }
    }
    std::vector<TaskId> reversed;
    while (mask != 0) {
        reversed.push_back(static_cast<TaskId>(last));
        const Ticks at = tours.arrival[mask * n + last];
        const Mask rest = mask & ~(Mask{1} << last);
        std::size_t prev = n;
        if (rest != 0) {
            for (std::size_t p = 0; p < n; ++p) {
                const Ticks ap = tours.arrival[rest * n + p];
                if (((rest >> p) & 1U) && ap < kInfiniteTicks &&
                    m.reachable(TravelMatrix::node_of(p), TravelMatrix::node_of(last)) &&
                    ap + m.ticks(TravelMatrix::node_of(p), TravelMatrix::node_of(last)) == at) {
                    prev = p;
                    break;
                }
            }
        }
        mask = rest;
        last = prev;
    }
    return {reversed.rbegin(), reversed.rend()};
}

std::uint64_t pow3(std::size_t n) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < n; ++i) {
        v *= 3;
    }
    return v;
}

void check_limits(const Problem& problem, std::size_t fleet_size, std::uint64_t states, const OracleLimits& limits) {
    if (problem.task_count() > limits.max_tasks) {
        throw SizeExceeded("oracle: " + std::to_string(problem.task_count()) + " tasks exceed max_tasks=" +
                           std::to_string(limits.max_tasks));
    }
    if (fleet_size > limits.max_base_fleet) {
        throw SizeExceeded("oracle: fleet of " + std::to_string(fleet_size) + " robots exceeds max_base_fleet=" +
                           std::to_string(limits.max_base_fleet));
    }
    if (states > limits.max_states) {
        throw SizeExceeded("oracle: " + std::to_string(states) + " states exceed max_states=" +
                           std::to_string(limits.max_states));
    }
}

std::uint64_t tabulation_states(const Problem& problem) {
    const std::uint64_t n = problem.task_count();
    return problem.robot_types.size() * (std::uint64_t{1} << n) * std::max<std::uint64_t>(n * n, 1);
}

}  // namespace

OracleResult brute_force(const Problem& problem, const OracleLimits& limits) {
    problem.validate();
    const Fleet base = build_base_fleet(problem);
    const std::size_t n = problem.task_count();
    if (n <= 20) {
        check_limits(problem, base.size(), tabulation_states(problem) + pow3(n), limits);
    } else {
        check_limits(problem, base.size(), std::numeric_limits<std::uint64_t>::max(), limits);
    }

    const TravelSet travel = build_travel_set(problem);
    std::vector<SubsetTours> tours;
    for (const RobotType& type : problem.robot_types) {
        tours.push_back(tabulate(problem, travel, type));
    }

    const std::size_t masks = std::size_t{1} << n;
    // cheapest capable type per feasible subset
    const Money none = Money::infinity();
    std::vector<Money> tour_cost(masks, none);
    std::vector<TypeId> tour_type(masks, 0);
    for (Mask s = 1; s < masks; ++s) {
        for (const RobotType& type : problem.robot_types) {
            if (tours[type.id].feasible(s) && type.deploy_cost < tour_cost[s]) {
                tour_cost[s] = type.deploy_cost;
                tour_type[s] = type.id;
            }
        }
    }

    // cheapest partition of every task set into feasible tours
    std::vector<Money> cover(masks, none);
    std::vector<Mask> part(masks, 0);
    cover[0] = Money{0};
    for (Mask mask = 1; mask < masks; ++mask) {
        const Mask low = mask & (~mask + 1);
        const Mask rest_bits = mask & ~low;
        // every subset containing the lowest bit
        for (Mask sub = rest_bits;; sub = (sub - 1) & rest_bits) {
            const Mask s = sub | low;
            if (tour_cost[s].is_finite() && cover[mask & ~s].is_finite()) {
                Money c = tour_cost[s] + cover[mask & ~s];
                if (c < cover[mask]) {
                    cover[mask] = c;
                    part[mask] = s;
                }
            }
            if (sub == 0) {
                break;
            }
        }
    }

    Mask best = 0;
    for (Mask mask = 1; mask < masks; ++mask) {
        if (cover[mask] <= problem.budget && std::popcount(mask) > std::popcount(best)) {
            best = mask;
        }
    }

    OracleResult result;
    result.reward = static_cast<std::size_t>(std::popcount(best));
    result.solution = Solution::empty_for(base);
    std::vector<std::size_t> used(problem.robot_types.size(), 0);
    for (Mask mask = best; mask != 0; mask &= ~part[mask]) {
        const Mask s = part[mask];
        const TypeId type = tour_type[s];
        std::size_t copy = 0;
        RobotIndex robot = 0;
        bool placed = false;
        for (const Robot& r : base.robots) {
            if (r.type == type && copy++ == used[type]) {
                robot = r.robot_index;
                placed = true;
                break;
            }
        }
        if (!placed) {
            throw InvalidProblem("oracle: base fleet too small for the optimal partition");
        }
        ++used[type];
        result.solution.tours[robot].visits = order_of(tours[type], travel[type], s);
    }
    return result;
}

OracleResult brute_force_fixed_fleet(const Problem& problem, const Fleet& fleet, const OracleLimits& limits) {
    problem.validate();
    const std::size_t n = problem.task_count();
    if (n <= 20) {
        check_limits(problem, fleet.size(), tabulation_states(problem) + fleet.size() * pow3(n), limits);
    } else {
        check_limits(problem, fleet.size(), std::numeric_limits<std::uint64_t>::max(), limits);
    }

    const TravelSet travel = build_travel_set(problem);
    std::vector<SubsetTours> tours;
    for (const RobotType& type : problem.robot_types) {
        tours.push_back(tabulate(problem, travel, type));
    }

    const std::size_t masks = std::size_t{1} << n;
    constexpr Mask kUnreached = std::numeric_limits<Mask>::max();
    // via[r][mask]: tour of robot r on some path reaching `mask` after robots 0..r
    std::vector<std::vector<Mask>> via(fleet.size(), std::vector<Mask>(masks, kUnreached));
    std::vector<char> reach(masks, 0);
    reach[0] = 1;
    for (std::size_t r = 0; r < fleet.size(); ++r) {
        const SubsetTours& own = tours[fleet.robots[r].type];
        std::vector<char> next(masks, 0);
        for (Mask mask = 0; mask < masks; ++mask) {
            if (!reach[mask]) {
                continue;
            }
            const Mask free = static_cast<Mask>(masks - 1) & ~mask;
            for (Mask s = free;; s = (s - 1) & free) {
                if (own.feasible(s) && !next[mask | s]) {
                    next[mask | s] = 1;
                    via[r][mask | s] = s;
                }
                if (s == 0) {
                    break;
                }
            }
        }
        reach = std::move(next);
    }

    Mask best = 0;
    for (Mask mask = 0; mask < masks; ++mask) {
        if (reach[mask] && std::popcount(mask) > std::popcount(best)) {
            best = mask;
        }
    }

    OracleResult result;
    result.reward = static_cast<std::size_t>(std::popcount(best));
    result.solution = Solution::empty_for(fleet);
    Mask mask = best;
    for (std::size_t r = fleet.size(); r-- > 0;) {
        const Mask s = via[r][mask];
        if (s != 0) {
            const TypeId type = fleet.robots[r].type;
            result.solution.tours[r].visits = order_of(tours[type], travel[type], s);
        }
        mask &= ~s;
    }
    return result;
}

}  // namespace fleet
