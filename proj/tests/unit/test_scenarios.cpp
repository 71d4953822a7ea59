#include <gtest/gtest.h>

#include <array>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "fleet/errors.hpp"
#include "fleet/exact.hpp"
#include "fleet/feasibility.hpp"
#include "fleet/harness.hpp"
#include "fleet/scenarios.hpp"
#include "oracles.hpp"

using namespace fleet;

namespace {

std::string saved(const Problem& p) {
    std::ostringstream os;
    save_problem(os, p);
    return os.str();
}

Problem loaded(const std::string& text) {
    std::istringstream in(text);
    return load_problem(in, "test");
}

std::string parse_error_of(const std::string& text) {
    try {
        loaded(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Builtin, ExperimentOneTypes) {
    const ScenarioSpec s = builtin_spec("exp1");
    ASSERT_EQ(s.robot_types.size(), 3u);
    EXPECT_EQ(s.robot_types[0].capabilities, LabelSet{0});
    EXPECT_EQ(s.robot_types[1].capabilities, LabelSet{1});
    EXPECT_EQ(s.robot_types[2].capabilities, (LabelSet{0, 1}));
    EXPECT_EQ(s.robot_types[2].speed_factor, Rational(3, 2));
    EXPECT_EQ(s.robot_types[0].battery, Time{200});
    EXPECT_EQ(s.robot_types[2].battery, Time{500});
    EXPECT_EQ(s.robot_types[0].deploy_cost, Money{20});
    EXPECT_EQ(s.robot_types[2].deploy_cost, Money{25});
    EXPECT_EQ(s.deadline, Time{150});
    EXPECT_EQ(s.requirements.size(), 2u);
}

TEST(Builtin, ExperimentThreeAerialType) {
    const ScenarioSpec s = builtin_spec("exp3");
    const RobotType& uav = s.robot_types.at(3);
    EXPECT_EQ(uav.kind, "UAV");
    EXPECT_EQ(uav.capabilities, LabelSet{2});
    EXPECT_EQ(uav.speed_factor, Rational{2});
    EXPECT_EQ(uav.battery, Time{250});
    EXPECT_EQ(uav.deploy_cost, Money{10});
    EXPECT_EQ(uav.allowed_edge_classes, std::vector<std::string>{"air"});
}

TEST(Builtin, ExperimentTwoHasNoDeadlines) {
    const Problem p = generate(builtin_spec("exp2"));
    for (const Task& t : p.tasks) {
        EXPECT_TRUE(t.deadline.is_infinite());
    }
    EXPECT_THROW(builtin_spec("exp9"), std::invalid_argument);
}

TEST(Builtin, DataFilesMatch) {
    for (const std::string& name : builtin_spec_names()) {
        const std::string dir = FLEET_DATA_DIR;
        EXPECT_EQ(load_spec_file(dir + "/" + name + ".spec"), builtin_spec(name)) << name;
        EXPECT_EQ(load_experiment_file(dir + "/" + name + ".experiment").scenario, builtin_spec(name)) << name;
    }
}

TEST(Generate, DeterministicAndValid) {
    for (const std::string& name : builtin_spec_names()) {
        const ScenarioSpec s = builtin_spec(name);
        const Problem a = generate(s);
        EXPECT_EQ(a, generate(s));
        EXPECT_NO_THROW(a.validate());
        std::set<VertexId> vertices;
        for (const Task& t : a.tasks) {
            EXPECT_NE(t.vertex, a.depot);
            vertices.insert(t.vertex);
        }
        EXPECT_EQ(vertices.size(), a.tasks.size());
        ScenarioSpec other = s;
        other.seed = s.seed + 1;
        EXPECT_NE(generate(other).tasks, a.tasks);
    }
}

TEST(Generate, TasksReachableOnGround) {
    const Problem p = generate(builtin_spec("exp3"));
    const TravelSet set = build_travel_set(p);
    for (std::size_t t = 0; t < p.tasks.size(); ++t) {
        EXPECT_TRUE(set[0].reachable(0, TravelMatrix::node_of(static_cast<TaskId>(t))));
    }
}

TEST(Generate, InlineGraph) {
    ScenarioSpec s;
    s.graph = fleet::testing::line_problem().graph;
    s.task_count = 3;
    s.requirements = {{LabelSet{0}, 1.0}};
    s.robot_types = fleet::testing::line_problem().robot_types;
    s.budget = Money{10};
    const Problem p = generate(s);
    EXPECT_EQ(p.depot, 0u);
    EXPECT_EQ(p.tasks.size(), 3u);
    s.task_count = 4;
    EXPECT_THROW(generate(s), InsufficientVertices);
}

TEST(Generate, SpecValidation) {
    ScenarioSpec s = builtin_spec("exp1");
    s.requirements = {{LabelSet{0}, 0.0}};
    EXPECT_THROW(generate(s), InvalidProblem);
    s = builtin_spec("exp1");
    s.requirements[0].weight = -1.0;
    EXPECT_THROW(s.validate(), InvalidProblem);
}

TEST(Generate, RequirementFrequenciesFollowWeights) {
    ScenarioSpec s;
    s.grid = GridSpec{101, 101, Rational{1}, 0.0, AirEdges::None};
    s.task_count = 10000;
    s.requirements = {{LabelSet{0}, 1.0}, {LabelSet{1}, 2.0}, {LabelSet{0, 1}, 1.0}};
    s.robot_types = builtin_spec("exp1").robot_types;
    s.budget = Money{50};
    s.seed = 77;
    const Problem p = generate(s);
    std::array<double, 3> observed{};
    for (const Task& t : p.tasks) {
        for (std::size_t c = 0; c < 3; ++c) {
            if (t.requirements == s.requirements[c].labels) {
                observed[c] += 1;
            }
        }
    }
    const std::array<double, 3> expected{2500, 5000, 2500};
    double chi2 = 0;
    for (std::size_t c = 0; c < 3; ++c) {
        chi2 += (observed[c] - expected[c]) * (observed[c] - expected[c]) / expected[c];
    }
    EXPECT_LT(chi2, 9.21);  // 99th percentile, 2 degrees of freedom
}

TEST(ProblemFile, RoundTrip) {
    for (const std::string& name : builtin_spec_names()) {
        const Problem p = generate(builtin_spec(name));
        EXPECT_EQ(loaded(saved(p)), p) << name;
    }
    const Problem line = fleet::testing::line_problem();
    EXPECT_EQ(loaded(saved(line)), line);
}

TEST(ProblemFile, TruncatedNamesMissingSection) {
    const std::string text = saved(fleet::testing::line_problem());
    EXPECT_NE(parse_error_of(text.substr(0, text.find("[tasks]"))).find("missing section [tasks]"), std::string::npos);
    EXPECT_NE(parse_error_of(text.substr(0, text.find("[end]"))).find("missing section [end]"), std::string::npos);
}

TEST(ProblemFile, UnknownFieldRejected) {
    std::string text = saved(fleet::testing::line_problem());
    text.insert(text.find("[problem]\n") + 10, "colour = blue\n");
    const std::string err = parse_error_of(text);
    EXPECT_NE(err.find("colour"), std::string::npos) << err;
    EXPECT_NE(err.find("test:"), std::string::npos) << err;
}

TEST(ProblemFile, WrongKindRejected) {
    std::ostringstream os;
    save_spec(os, builtin_spec("exp1"));
    EXPECT_NE(parse_error_of(os.str()), "");
}

TEST(SpecFile, RoundTrip) {
    for (const std::string& name : builtin_spec_names()) {
        std::ostringstream os;
        save_spec(os, builtin_spec(name));
        std::istringstream in(os.str());
        EXPECT_EQ(load_spec(in), builtin_spec(name));
    }
    ScenarioSpec inline_spec;
    inline_spec.graph = fleet::testing::line_problem().graph;
    inline_spec.depot = 1;
    inline_spec.task_count = 2;
    inline_spec.requirements = {{LabelSet{0}, 0.5}};
    inline_spec.robot_types = fleet::testing::line_problem().robot_types;
    inline_spec.budget = Money(21, 2);
    inline_spec.deadline = Time::infinity();
    std::ostringstream os;
    save_spec(os, inline_spec);
    std::istringstream in(os.str());
    EXPECT_EQ(load_spec(in), inline_spec);
}

TEST(SolutionFile, OracleSolutionReloadsWithSameReward) {
    const Problem p = fleet::testing::four_task_problem();
    const OracleResult r = brute_force(p);
    const SolutionFile file = make_solution_file(p, r.solution, "oracle", 0, r.reward);
    std::ostringstream os;
    save_solution(os, file);
    std::istringstream in(os.str());
    const SolutionFile back = load_solution(in);
    EXPECT_EQ(back, file);
    EXPECT_NO_THROW(check_matches_base_fleet(back, p));
    EXPECT_EQ(evaluate_reward(back.solution, p), r.reward);
}

TEST(SolutionFile, FleetMismatchDetected) {
    const Problem p = fleet::testing::four_task_problem();
    SolutionFile file = make_solution_file(p, Solution::empty_for(build_base_fleet(p)), "lns", 1, 0);
    file.robot_types.pop_back();
    file.solution.tours.pop_back();
    EXPECT_THROW(check_matches_base_fleet(file, p), InvalidProblem);
}

TEST(AirEdges, NamesRoundTrip) {
    for (AirEdges a : {AirEdges::None, AirEdges::Grid, AirEdges::Complete}) {
        EXPECT_EQ(parse_air_edges(to_string(a)), a);
    }
    EXPECT_EQ(euclidean_length(1, 1, Rational{1}), Rational(141, 100));
    EXPECT_EQ(euclidean_length(3, 4, Rational{2}), Rational{10});
}
