#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fleet/model.hpp"

namespace fleet::testing {

inline RobotType make_type(TypeId id, LabelSet caps, Money cost, Time battery, Rational speed = Rational{1},
                           std::vector<std::string> classes = {"ground"}) {
    RobotType t;
    t.id = id;
    t.name = "type" + std::to_string(id);
    t.kind = "AGV";
    t.capabilities = caps;
    t.deploy_cost = cost;
    t.battery = battery;
    t.speed_factor = speed;
    t.allowed_edge_classes = std::move(classes);
    return t;
}

inline Task make_task(TaskId id, VertexId vertex, Time deadline, LabelSet req = LabelSet{0}) {
    Task t;
    t.id = id;
    t.vertex = vertex;
    t.deadline = deadline;
    t.requirements = req;
    return t;
}

// Path 0 -2- 1 -3- 2 -5- 3 with the depot at 0 and one task on each of 1, 2, 3.
inline Problem line_problem() {
    Problem p;
    p.name = "line";
    p.graph.vertex_count = 4;
    p.graph.edges = {{0, 1, Rational{2}, "ground"}, {1, 2, Rational{3}, "ground"}, {2, 3, Rational{5}, "ground"}};
    p.depot = 0;
    p.tasks = {make_task(0, 1, Time{100}), make_task(1, 2, Time{100}), make_task(2, 3, Time{100})};
    p.robot_types = {make_type(0, LabelSet{0}, Money{10}, Time{100})};
    p.budget = Money{10};
    return p;
}

// Depot 0 and a single task on vertex 1 at distance `length`.
inline Problem one_task_problem(Rational length, Time deadline, Money cost, Time battery, Money budget) {
    Problem p;
    p.name = "one";
    p.graph.vertex_count = 2;
    p.graph.edges = {{0, 1, length, "ground"}};
    p.tasks = {make_task(0, 1, deadline)};
    p.robot_types = {make_type(0, LabelSet{0}, cost, battery)};
    p.budget = budget;
    return p;
}

// Two-type instance with four tasks; used as a frozen reference.
//   0 -1- 1 -1- 2 -1- 3 -1- 4, depot at 2.
inline Problem four_task_problem() {
    Problem p;
    p.name = "four";
    p.graph.vertex_count = 5;
    for (VertexId v = 0; v + 1 < 5; ++v) {
        p.graph.edges.push_back({v, v + 1, Rational{1}, "ground"});
    }
    p.depot = 2;
    p.tasks = {make_task(0, 0, Time{2}, LabelSet{0}), make_task(1, 1, Time{3}, LabelSet{1}),
               make_task(2, 3, Time{1}, LabelSet{0}), make_task(3, 4, Time{4}, LabelSet{1})};
    p.robot_types = {make_type(0, LabelSet{0}, Money{10}, Time{6}),
                     make_type(1, LabelSet{0, 1}, Money{15}, Time{8}, Rational{1})};
    p.budget = Money{25};
    return p;
}

}  // namespace fleet::testing
