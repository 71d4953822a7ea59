#include "fleet/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "fleet/errors.hpp"
#include "fleet/rng.hpp"
#include "scenario_io.hpp"

namespace fleet {

std::string to_string(AirEdges policy) {
    switch (policy) {
        case AirEdges::None: return "none";
        case AirEdges::Grid: return "grid";
        case AirEdges::Complete: return "complete";
    }
    return "none";
}

AirEdges parse_air_edges(const std::string& text) {
    if (text == "none") return AirEdges::None;
    if (text == "grid") return AirEdges::Grid;
    if (text == "complete") return AirEdges::Complete;
    throw std::invalid_argument("air edge policy must be none, grid or complete, got '" + text + "'");
}

void ScenarioSpec::validate() const {
    if (requirements.empty()) {
        throw InvalidProblem("scenario spec: at least one requirement category is required");
    }
    double total = 0.0;
    for (const RequirementCategory& c : requirements) {
        if (!(c.weight >= 0.0) || !std::isfinite(c.weight)) {
            throw InvalidProblem("scenario spec: requirement weights must be finite and non-negative");
        }
        total += c.weight;
    }
    if (total <= 0.0) {
        throw InvalidProblem("scenario spec: requirement weights must not all be zero");
    }
    if (!(deadline > Time{0})) {
        throw InvalidProblem("scenario spec: deadline must be positive");
    }
    if (graph) {
        graph->validate();
        if (depot && !graph->has_vertex(*depot)) {
            throw InvalidProblem("scenario spec: depot vertex does not exist");
        }
        if (graph->vertex_count == 0) {
            throw InvalidProblem("scenario spec: graph has no vertices");
        }
    } else {
        if (grid.width == 0 || grid.height == 0) {
            throw InvalidProblem("scenario spec: grid must have at least one cell");
        }
        if (!grid.spacing.is_finite() || !(grid.spacing > Rational{0})) {
            throw InvalidProblem("scenario spec: grid spacing must be finite and positive");
        }
        if (!(grid.obstacle_density >= 0.0 && grid.obstacle_density < 1.0)) {
            throw InvalidProblem("scenario spec: obstacle density must lie in [0, 1)");
        }
        if (depot && *depot >= grid.width * grid.height) {
            throw InvalidProblem("scenario spec: depot vertex does not exist");
        }
    }
    // Robot types and budget are checked by Problem::validate on an empty instance.
    Problem probe;
    probe.graph.vertex_count = 1;
    probe.robot_types = robot_types;
    probe.budget = budget;
    probe.validate();
}

Rational euclidean_length(std::size_t dx, std::size_t dy, const Rational& spacing) {
    const double d = std::sqrt(static_cast<double>(dx * dx + dy * dy)) * spacing.to_double();
    return Rational(std::max<std::int64_t>(1, std::llround(d * 100.0)), 100);
}

namespace {

std::vector<VertexId> reachable_from(const EnvironmentGraph& graph, VertexId source, const char* edge_class) {
    std::vector<std::vector<VertexId>> adj(graph.vertex_count);
    for (const Edge& e : graph.edges) {
        if (edge_class == nullptr || e.edge_class == edge_class) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    }
    std::vector<char> seen(graph.vertex_count, 0);
    std::vector<VertexId> order;
    std::queue<VertexId> queue;
    seen[source] = 1;
    queue.push(source);
    while (!queue.empty()) {
        const VertexId v = queue.front();
        queue.pop();
        order.push_back(v);
        for (VertexId w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                queue.push(w);
            }
        }
    }
    std::sort(order.begin(), order.end());
    return order;
}

}  // namespace

Problem generate(const ScenarioSpec& spec) {
    spec.validate();
    Rng rng(mix64(spec.seed));

    Problem problem;
    problem.name = spec.name;
    problem.budget = spec.budget;
    problem.robot_types = spec.robot_types;

    std::vector<VertexId> candidates;
    if (spec.graph) {
        problem.graph = *spec.graph;
        problem.depot = spec.depot.value_or(0);
        for (VertexId v = 0; v < problem.graph.vertex_count; ++v) {
            if (v != problem.depot) {
                candidates.push_back(v);
            }
        }
    } else {
        const GridSpec& g = spec.grid;
        const std::size_t cells = g.width * g.height;
        problem.graph.vertex_count = cells;
        problem.depot = spec.depot.value_or(static_cast<VertexId>((g.height / 2) * g.width + g.width / 2));
        auto id = [&](std::size_t row, std::size_t col) { return static_cast<VertexId>(row * g.width + col); };

        std::vector<char> blocked(cells, 0);
        for (std::size_t c = 0; c < cells; ++c) {
            blocked[c] = c != problem.depot && rng.bernoulli(g.obstacle_density);
        }
        for (std::size_t r = 0; r < g.height; ++r) {
            for (std::size_t c = 0; c < g.width; ++c) {
                if (blocked[id(r, c)]) {
                    continue;
                }
                if (c + 1 < g.width && !blocked[id(r, c + 1)]) {
                    problem.graph.edges.push_back(Edge{id(r, c), id(r, c + 1), g.spacing, "ground"});
                }
                if (r + 1 < g.height && !blocked[id(r + 1, c)]) {
                    problem.graph.edges.push_back(Edge{id(r, c), id(r + 1, c), g.spacing, "ground"});
                }
            }
        }
        for (VertexId v : reachable_from(problem.graph, problem.depot, "ground")) {
            if (v != problem.depot) {
                candidates.push_back(v);
            }
        }

        if (g.air == AirEdges::Grid) {
            const Rational diagonal = euclidean_length(1, 1, g.spacing);
            for (std::size_t r = 0; r < g.height; ++r) {
                for (std::size_t c = 0; c < g.width; ++c) {
                    if (c + 1 < g.width) {
                        problem.graph.edges.push_back(Edge{id(r, c), id(r, c + 1), g.spacing, "air"});
                    }
                    if (r + 1 < g.height) {
                        problem.graph.edges.push_back(Edge{id(r, c), id(r + 1, c), g.spacing, "air"});
                        if (c + 1 < g.width) {
                            problem.graph.edges.push_back(Edge{id(r, c), id(r + 1, c + 1), diagonal, "air"});
                        }
                        if (c > 0) {
                            problem.graph.edges.push_back(Edge{id(r, c), id(r + 1, c - 1), diagonal, "air"});
                        }
                    }
                }
            }
        } else if (g.air == AirEdges::Complete) {
            std::vector<VertexId> free_cells;
            for (VertexId v = 0; v < cells; ++v) {
                if (!blocked[v]) {
                    free_cells.push_back(v);
                }
            }
            for (std::size_t a = 0; a < free_cells.size(); ++a) {
                for (std::size_t b = a + 1; b < free_cells.size(); ++b) {
                    const std::size_t ra = free_cells[a] / g.width, ca = free_cells[a] % g.width;
                    const std::size_t rb = free_cells[b] / g.width, cb = free_cells[b] % g.width;
                    const std::size_t dx = ca > cb ? ca - cb : cb - ca;
                    const std::size_t dy = ra > rb ? ra - rb : rb - ra;
                    problem.graph.edges.push_back(
                        Edge{free_cells[a], free_cells[b], euclidean_length(dx, dy, g.spacing), "air"});
                }
            }
        }
    }

    if (spec.task_count > candidates.size()) {
        throw InsufficientVertices("scenario '" + spec.name + "': " + std::to_string(spec.task_count) +
                                   " tasks requested but only " + std::to_string(candidates.size()) +
                                   " candidate vertices exist");
    }
    // partial Fisher-Yates: the first N entries are a uniform sample
    for (std::size_t i = 0; i < spec.task_count; ++i) {
        const std::size_t j = i + rng.index(candidates.size() - i);
        std::swap(candidates[i], candidates[j]);
    }

    std::vector<double> cumulative;
    double total = 0.0;
    for (const RequirementCategory& c : spec.requirements) {
        total += c.weight;
        cumulative.push_back(total);
    }
    for (std::size_t i = 0; i < spec.task_count; ++i) {
        const double u = rng.uniform_real(0.0, total);
        std::size_t pick = 0;
        while (pick + 1 < cumulative.size() && !(u < cumulative[pick])) {
            ++pick;
        }
        // skip trailing zero-weight categories when u lands exactly on a boundary
        while (spec.requirements[pick].weight == 0.0 && pick > 0) {
            --pick;
        }
        problem.tasks.push_back(
            Task{static_cast<TaskId>(i), candidates[i], spec.deadline, spec.requirements[pick].labels});
    }
    problem.validate();
    return problem;
}

namespace {

RobotType make_type(TypeId id, std::string name, std::string kind, LabelSet caps, Rational speed, Rational battery,
                    Rational cost, std::string edges) {
    RobotType t;
    t.id = id;
    t.name = std::move(name);
    t.kind = std::move(kind);
    t.capabilities = caps;
    t.speed_factor = speed;
    t.battery = battery;
    t.deploy_cost = cost;
    t.allowed_edge_classes = {std::move(edges)};
    return t;
}

}  // namespace

std::vector<std::string> builtin_spec_names() { return {"exp1", "exp2", "exp3"}; }

ScenarioSpec builtin_spec(const std::string& name) {
    ScenarioSpec spec;
    spec.name = name;
    spec.grid = GridSpec{21, 21, Rational{4}, 0.0, AirEdges::None};
    spec.deadline = Time{150};
    spec.task_count = 20;
    spec.budget = Money{70};
    spec.seed = 1;
    if (name == "exp1") {
        spec.requirements = {{LabelSet{0}, 1.0}, {LabelSet{1}, 1.0}};
        spec.robot_types = {
            make_type(0, "agv_a", "AGV", {0}, Rational{1}, Rational{200}, Rational{20}, "ground"),
            make_type(1, "agv_b", "AGV", {1}, Rational{1}, Rational{200}, Rational{20}, "ground"),
            make_type(2, "agv_ab", "AGV", {0, 1}, Rational(3, 2), Rational{500}, Rational{25}, "ground"),
        };
    } else if (name == "exp2") {
        spec.task_count = 40;  // 20 tasks saturate every method once deadlines are gone
        spec.deadline = Time::infinity();
        spec.requirements = {{LabelSet{0}, 1.0}, {LabelSet{1}, 1.0}, {LabelSet{2}, 1.0}};
        spec.robot_types = {
            make_type(0, "agv_a", "AGV", {0}, Rational{1}, Rational{300}, Rational{20}, "ground"),
            make_type(1, "agv_b", "AGV", {1}, Rational{1}, Rational{300}, Rational{20}, "ground"),
            make_type(2, "agv_c", "AGV", {2}, Rational{1}, Rational{300}, Rational{20}, "ground"),
            make_type(3, "agv_abc", "AGV", {0, 1, 2}, Rational(3, 2), Rational{300}, Rational{30}, "ground"),
            make_type(4, "agv_ab", "AGV", {0, 1}, Rational{1}, Rational{250}, Rational{25}, "ground"),
        };
    } else if (name == "exp3") {
        spec.grid.obstacle_density = 0.15;
        spec.grid.air = AirEdges::Grid;
        spec.requirements = {{LabelSet{0}, 1.0}, {LabelSet{1}, 1.0}, {LabelSet{2}, 1.0}};
        spec.robot_types = {
            make_type(0, "agv_a", "AGV", {0}, Rational{1}, Rational{300}, Rational{20}, "ground"),
            make_type(1, "agv_ab", "AGV", {0, 1}, Rational(3, 2), Rational{300}, Rational{25}, "ground"),
            make_type(2, "uav_ac", "UAV", {0, 2}, Rational{2}, Rational{300}, Rational{20}, "air"),
            make_type(3, "uav_c", "UAV", {2}, Rational{2}, Rational{250}, Rational{10}, "air"),
            make_type(4, "uav_a", "UAV", {0}, Rational{3}, Rational{250}, Rational{15}, "air"),
        };
    } else {
        throw std::invalid_argument("unknown built-in scenario '" + name + "' (expected exp1, exp2 or exp3)");
    }
    return spec;
}

// ---------------------------------------------------------------------------
// persistence

namespace {

using textio::FieldReader;

void write_graph(std::ostream& os, const EnvironmentGraph& graph) {
    os << "[graph]\n";
    os << "vertices = " << graph.vertex_count << '\n';
    for (const Edge& e : graph.edges) {
        textio::check_token(e.edge_class, "edge class");
        os << "edge u=" << e.u << " v=" << e.v << " length=" << e.length << " class=" << e.edge_class << '\n';
    }
}

EnvironmentGraph read_graph(const textio::Document& doc, const textio::Section& section) {
    EnvironmentGraph graph;
    FieldReader settings(doc.source, section.settings, section.line, "[graph]");
    graph.vertex_count = settings.unsigned_int("vertices");
    settings.finish();
    graph.edges.reserve(section.records.size());
    for (const textio::Record& rec : section.records) {
        if (rec.tag != "edge") {
            throw ParseError(doc.source, rec.line, "[graph]: unknown record '" + rec.tag + "'");
        }
        FieldReader r(doc.source, rec.fields, rec.line, "edge");
        Edge e;
        e.u = static_cast<VertexId>(r.unsigned_int("u"));
        e.v = static_cast<VertexId>(r.unsigned_int("v"));
        e.length = r.rational("length");
        e.edge_class = r.text("class");
        r.finish();
        if (!graph.has_vertex(e.u) || !graph.has_vertex(e.v)) {
            throw ParseError(doc.source, rec.line, "edge: endpoint out of range");
        }
        graph.edges.push_back(std::move(e));
    }
    return graph;
}

void write_robot_types(std::ostream& os, const std::vector<RobotType>& types) {
    os << "[robot_types]\n";
    for (const RobotType& t : types) {
        textio::check_token(t.name, "robot type name");
        textio::check_token(t.kind, "robot kind");
        for (const std::string& c : t.allowed_edge_classes) {
            textio::check_token(c, "edge class");
        }
        os << "type id=" << t.id << " name=" << t.name << " kind=" << t.kind
           << " caps=" << textio::format_labels(t.capabilities) << " speed=" << t.speed_factor
           << " battery=" << t.battery << " cost=" << t.deploy_cost
           << " edges=" << textio::join(t.allowed_edge_classes) << '\n';
    }
}

std::vector<RobotType> read_robot_types(const textio::Document& doc) {
    const textio::Section& section = textio::require_section(doc, "robot_types");
    FieldReader(doc.source, section.settings, section.line, "[robot_types]").finish();
    std::vector<RobotType> types;
    for (const textio::Record& rec : section.records) {
        if (rec.tag != "type") {
            throw ParseError(doc.source, rec.line, "[robot_types]: unknown record '" + rec.tag + "'");
        }
        FieldReader r(doc.source, rec.fields, rec.line, "type");
        RobotType t;
        t.id = static_cast<TypeId>(r.unsigned_int("id"));
        t.name = r.text("name");
        t.kind = r.text("kind");
        t.capabilities = r.labels("caps");
        t.speed_factor = r.rational("speed");
        t.battery = r.rational("battery");
        t.deploy_cost = r.rational("cost");
        t.allowed_edge_classes = r.list("edges");
        r.finish();
        if (t.id != types.size()) {
            r.fail("id", "robot type ids must be 0, 1, 2, ... in order");
        }
        types.push_back(std::move(t));
    }
    return types;
}

template <typename Fn>
auto wrap_invalid(const textio::Document& doc, int line, Fn&& fn) {
    try {
        return fn();
    } catch (const InvalidProblem& e) {
        throw ParseError(doc.source, line, e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(doc.source, line, e.what());
    }
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FleetError("cannot open '" + path + "' for reading");
    }
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw FleetError("cannot open '" + path + "' for writing");
    }
    return out;
}

void check_written(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw FleetError("failed writing '" + path + "'");
    }
}

}  // namespace

void save_problem(std::ostream& os, const Problem& problem) {
    problem.validate();
    textio::check_token(problem.name, "problem name");
    textio::write_header(os, "scenario");
    os << "[problem]\n";
    os << "name = " << problem.name << '\n';
    os << "depot = " << problem.depot << '\n';
    os << "budget = " << problem.budget << '\n';
    write_graph(os, problem.graph);
    write_robot_types(os, problem.robot_types);
    os << "[tasks]\n";
    for (const Task& t : problem.tasks) {
        os << "task id=" << t.id << " vertex=" << t.vertex << " deadline=" << t.deadline
           << " req=" << textio::format_labels(t.requirements) << '\n';
    }
    os << "[end]\n";
}

Problem load_problem(std::istream& is, const std::string& source) {
    const textio::Document doc = textio::parse(is, source);
    textio::expect_kind(doc, "scenario");
    textio::check_sections(doc, {"problem", "graph", "robot_types", "tasks"},
                           {"problem", "graph", "robot_types", "tasks"});

    Problem problem;
    const textio::Section& head = textio::require_section(doc, "problem");
    FieldReader settings(doc.source, head.settings, head.line, "[problem]");
    problem.name = settings.text("name");
    problem.depot = static_cast<VertexId>(settings.unsigned_int("depot"));
    problem.budget = settings.rational("budget");
    settings.finish();
    if (!head.records.empty()) {
        throw ParseError(doc.source, head.records.front().line, "[problem]: unexpected record");
    }

    problem.graph = read_graph(doc, textio::require_section(doc, "graph"));
    problem.robot_types = read_robot_types(doc);

    const textio::Section& tasks = textio::require_section(doc, "tasks");
    FieldReader(doc.source, tasks.settings, tasks.line, "[tasks]").finish();
    for (const textio::Record& rec : tasks.records) {
        if (rec.tag != "task") {
            throw ParseError(doc.source, rec.line, "[tasks]: unknown record '" + rec.tag + "'");
        }
        FieldReader r(doc.source, rec.fields, rec.line, "task");
        Task t;
        t.id = static_cast<TaskId>(r.unsigned_int("id"));
        t.vertex = static_cast<VertexId>(r.unsigned_int("vertex"));
        t.deadline = r.rational("deadline");
        t.requirements = r.labels("req");
        r.finish();
        if (t.id != problem.tasks.size()) {
            r.fail("id", "task ids must be 0, 1, 2, ... in order");
        }
        problem.tasks.push_back(std::move(t));
    }
    wrap_invalid(doc, head.line, [&] {
        problem.validate();
        return 0;
    });
    return problem;
}

SolutionFile make_solution_file(const Problem& problem, const Solution& solution, std::string method,
                                std::uint64_t seed, std::size_t reward) {
    SolutionFile file;
    file.method = std::move(method);
    file.seed = seed;
    file.reward = reward;
    for (const Robot& r : build_base_fleet(problem).robots) {
        file.robot_types.push_back(r.type);
    }
    if (solution.tours.size() != file.robot_types.size()) {
        throw InvalidProblem("solution has " + std::to_string(solution.tours.size()) + " tours, base fleet has " +
                             std::to_string(file.robot_types.size()) + " robots");
    }
    file.solution = solution;
    return file;
}

void check_matches_base_fleet(const SolutionFile& file, const Problem& problem) {
    const Fleet base = build_base_fleet(problem);
    bool same = base.size() == file.robot_types.size();
    for (std::size_t i = 0; same && i < base.size(); ++i) {
        same = base.robots[i].type == file.robot_types[i];
    }
    if (!same) {
        throw InvalidProblem("solution fleet does not match the scenario's base fleet");
    }
}

void save_solution(std::ostream& os, const SolutionFile& file) {
    textio::check_token(file.method, "method");
    if (file.solution.tours.size() != file.robot_types.size()) {
        throw std::invalid_argument("solution file: one robot type per tour is required");
    }
    textio::write_header(os, "solution");
    os << "[solution]\n";
    os << "method = " << file.method << '\n';
    os << "seed = " << file.seed << '\n';
    os << "reward = " << file.reward << '\n';
    os << "robots = " << file.robot_types.size() << '\n';
    os << "[tours]\n";
    for (std::size_t i = 0; i < file.solution.tours.size(); ++i) {
        std::vector<std::string> visits;
        for (TaskId t : file.solution.tours[i].visits) {
            visits.push_back(std::to_string(t));
        }
        os << "tour robot=" << i << " type=" << file.robot_types[i] << " visits=" << textio::join(visits) << '\n';
    }
    os << "[end]\n";
}

SolutionFile load_solution(std::istream& is, const std::string& source) {
    const textio::Document doc = textio::parse(is, source);
    textio::expect_kind(doc, "solution");
    textio::check_sections(doc, {"solution", "tours"}, {"solution", "tours"});

    SolutionFile file;
    const textio::Section& head = textio::require_section(doc, "solution");
    FieldReader settings(doc.source, head.settings, head.line, "[solution]");
    file.method = settings.text("method");
    file.seed = settings.unsigned_int("seed");
    file.reward = settings.unsigned_int("reward");
    const std::size_t robots = settings.unsigned_int("robots");
    settings.finish();

    const textio::Section& tours = textio::require_section(doc, "tours");
    FieldReader(doc.source, tours.settings, tours.line, "[tours]").finish();
    for (const textio::Record& rec : tours.records) {
        if (rec.tag != "tour") {
            throw ParseError(doc.source, rec.line, "[tours]: unknown record '" + rec.tag + "'");
        }
        FieldReader r(doc.source, rec.fields, rec.line, "tour");
        Tour tour;
        tour.robot_index = static_cast<RobotIndex>(r.unsigned_int("robot"));
        const TypeId type = static_cast<TypeId>(r.unsigned_int("type"));
        for (const std::string& item : r.list("visits")) {
            try {
                std::size_t used = 0;
                const unsigned long v = std::stoul(item, &used);
                if (used != item.size()) {
                    throw std::invalid_argument(item);
                }
                tour.visits.push_back(static_cast<TaskId>(v));
            } catch (const std::logic_error&) {
                r.fail("visits", "bad task id '" + item + "'");
            }
        }
        r.finish();
        if (tour.robot_index != file.solution.tours.size()) {
            r.fail("robot", "tours must be listed for robots 0, 1, 2, ... in order");
        }
        file.solution.tours.push_back(std::move(tour));
        file.robot_types.push_back(type);
    }
    if (file.solution.tours.size() != robots) {
        throw ParseError(doc.source, tours.line,
                         "[tours]: expected " + std::to_string(robots) + " tours, found " +
                             std::to_string(file.solution.tours.size()));
    }
    return file;
}

namespace scenario_io {

void write_spec_sections(std::ostream& os, const ScenarioSpec& spec) {
    spec.validate();
    textio::check_token(spec.name, "scenario name");
    os << "[spec]\n";
    os << "name = " << spec.name << '\n';
    os << "seed = " << spec.seed << '\n';
    os << "task_count = " << spec.task_count << '\n';
    os << "deadline = " << spec.deadline << '\n';
    os << "budget = " << spec.budget << '\n';
    if (spec.depot) {
        os << "depot = " << *spec.depot << '\n';
    }
    if (spec.graph) {
        write_graph(os, *spec.graph);
    } else {
        os << "[grid]\n";
        os << "width = " << spec.grid.width << '\n';
        os << "height = " << spec.grid.height << '\n';
        os << "spacing = " << spec.grid.spacing << '\n';
        char density[32];
        std::snprintf(density, sizeof density, "%.17g", spec.grid.obstacle_density);
        os << "obstacle_density = " << density << '\n';
        os << "air = " << to_string(spec.grid.air) << '\n';
    }
    os << "[requirements]\n";
    for (const RequirementCategory& c : spec.requirements) {
        char weight[32];
        std::snprintf(weight, sizeof weight, "%.17g", c.weight);
        os << "category labels=" << textio::format_labels(c.labels) << " weight=" << weight << '\n';
    }
    write_robot_types(os, spec.robot_types);
}

ScenarioSpec read_spec_sections(const textio::Document& doc) {
    ScenarioSpec spec;
    const textio::Section& head = textio::require_section(doc, "spec");
    FieldReader settings(doc.source, head.settings, head.line, "[spec]");
    spec.name = settings.text("name");
    spec.seed = settings.unsigned_int("seed");
    spec.task_count = settings.unsigned_int("task_count");
    spec.deadline = settings.rational("deadline");
    spec.budget = settings.rational("budget");
    if (settings.has("depot")) {
        spec.depot = static_cast<VertexId>(settings.unsigned_int("depot"));
    }
    settings.finish();

    const textio::Section* grid = textio::find_section(doc, "grid");
    const textio::Section* graph = textio::find_section(doc, "graph");
    if ((grid == nullptr) == (graph == nullptr)) {
        throw ParseError(doc.source, head.line, "exactly one of [grid] or [graph] is required");
    }
    if (graph != nullptr) {
        spec.graph = read_graph(doc, *graph);
    } else {
        FieldReader g(doc.source, grid->settings, grid->line, "[grid]");
        spec.grid.width = g.unsigned_int("width");
        spec.grid.height = g.unsigned_int("height");
        spec.grid.spacing = g.rational("spacing");
        spec.grid.obstacle_density = g.real("obstacle_density");
        const std::string air = g.text("air");
        try {
            spec.grid.air = parse_air_edges(air);
        } catch (const std::invalid_argument& e) {
            g.fail("air", e.what());
        }
        g.finish();
    }

    const textio::Section& reqs = textio::require_section(doc, "requirements");
    FieldReader(doc.source, reqs.settings, reqs.line, "[requirements]").finish();
    for (const textio::Record& rec : reqs.records) {
        if (rec.tag != "category") {
            throw ParseError(doc.source, rec.line, "[requirements]: unknown record '" + rec.tag + "'");
        }
        FieldReader r(doc.source, rec.fields, rec.line, "category");
        RequirementCategory c;
        c.labels = r.labels("labels");
        c.weight = r.real("weight");
        r.finish();
        spec.requirements.push_back(c);
    }
    spec.robot_types = read_robot_types(doc);
    wrap_invalid(doc, head.line, [&] {
        spec.validate();
        return 0;
    });
    return spec;
}

}  // namespace scenario_io

void save_spec(std::ostream& os, const ScenarioSpec& spec) {
    textio::write_header(os, "scenario_spec");
    scenario_io::write_spec_sections(os, spec);
    os << "[end]\n";
}

ScenarioSpec load_spec(std::istream& is, const std::string& source) {
    const textio::Document doc = textio::parse(is, source);
    textio::expect_kind(doc, "scenario_spec");
    textio::check_sections(doc, {std::begin(scenario_io::kSpecSections), std::end(scenario_io::kSpecSections)},
                           {"spec", "requirements", "robot_types"});
    return scenario_io::read_spec_sections(doc);
}

Problem load_problem_file(const std::string& path) {
    auto in = open_in(path);
    return load_problem(in, path);
}

void save_problem_file(const std::string& path, const Problem& problem) {
    auto out = open_out(path);
    save_problem(out, problem);
    check_written(out, path);
}

SolutionFile load_solution_file(const std::string& path) {
    auto in = open_in(path);
    return load_solution(in, path);
}

void save_solution_file(const std::string& path, const SolutionFile& file) {
    auto out = open_out(path);
    save_solution(out, file);
    check_written(out, path);
}

ScenarioSpec load_spec_file(const std::string& path) {
    auto in = open_in(path);
    return load_spec(in, path);
}

void save_spec_file(const std::string& path, const ScenarioSpec& spec) {
    auto out = open_out(path);
    save_spec(out, spec);
    check_written(out, path);
}

}  // namespace fleet
