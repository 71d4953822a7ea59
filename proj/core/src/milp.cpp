#include "fleet/milp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fleet/errors.hpp"
#include "fleet/pathing.hpp"

namespace fleet {

std::size_t MilpModel::add_variable(std::string name, VarKind kind, double lower, double upper) {
    if (index_.count(name) != 0) {
        throw std::invalid_argument("duplicate variable " + name);
    }
    index_.emplace(name, variables.size());
    variables.push_back(MilpVariable{std::move(name), kind, lower, upper});
    return variables.size() - 1;
}

std::size_t MilpModel::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
        throw std::out_of_range("unknown variable " + name);
    }
    return it->second;
}

std::size_t MilpModel::count_kind(VarKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(variables.begin(), variables.end(), [kind](const MilpVariable& v) { return v.kind == kind; }));
}

std::size_t MilpModel::count_constraints(const std::string& prefix) const {
    return static_cast<std::size_t>(std::count_if(constraints.begin(), constraints.end(), [&](const MilpConstraint& c) {
        return c.name.compare(0, prefix.size(), prefix) == 0;
    }));
}

namespace {

std::string idx(std::size_t a) { return std::to_string(a); }

}  // namespace

MilpModel export_milp(const Problem& problem) {
    problem.validate();
    const Fleet fleet = build_base_fleet(problem);
    const TravelSet travel = build_travel_set(problem);
    const std::size_t n = problem.task_count();
    const std::size_t end = n + 1;
    const std::size_t robots = fleet.size();

    // meta-graph distance for robot k between MILP vertices 0..N+1
    auto distance = [&](std::size_t k, std::size_t i, std::size_t j) -> double {
        const TravelMatrix& m = travel[fleet.robots[k].type];
        const std::size_t a = i == end ? TravelMatrix::kDepotNode : i;
        const std::size_t b = j == end ? TravelMatrix::kDepotNode : j;
        return m.reachable(a, b) ? m.time(a, b).to_double() : std::numeric_limits<double>::infinity();
    };
    auto deadline_for = [&](std::size_t k, std::size_t task) -> double {
        const Time& dl = problem.tasks[task].deadline;
        return dl.is_finite() ? dl.to_double() : problem.type(fleet.robots[k].type).battery.to_double();
    };
    auto arc_fixed = [&](std::size_t k, std::size_t i, std::size_t j) {
        return i == j || j == 0 || i == end || !std::isfinite(distance(k, i, j));
    };

    double horizon = 0.0;
    double longest = 0.0;
    for (std::size_t k = 0; k < robots; ++k) {
        for (std::size_t t = 0; t < n; ++t) {
            horizon = std::max(horizon, deadline_for(k, t));
        }
        for (std::size_t i = 0; i <= end; ++i) {
            for (std::size_t j = 0; j <= end; ++j) {
                double d = distance(k, i, j);
                if (std::isfinite(d)) {
                    longest = std::max(longest, d);
                }
            }
        }
    }

    MilpModel model;
    model.big_m = horizon + longest + 1.0;
    const double big_m = model.big_m;
    const double inf = std::numeric_limits<double>::infinity();

    auto x = [&](std::size_t i, std::size_t j, std::size_t k) { return "x_" + idx(i) + "_" + idx(j) + "_" + idx(k + 1); };
    auto y = [&](std::size_t i, std::size_t k) { return "y_" + idx(i) + "_" + idx(k + 1); };
    auto z = [&](std::size_t k) { return "z_" + idx(k + 1); };
    auto s = [&](std::size_t i, std::size_t k) { return "s_" + idx(i) + "_" + idx(k + 1); };

    for (std::size_t k = 0; k < robots; ++k) {
        for (std::size_t i = 0; i <= end; ++i) {
            for (std::size_t j = 0; j <= end; ++j) {
                model.add_variable(x(i, j, k), VarKind::Binary, 0.0, arc_fixed(k, i, j) ? 0.0 : 1.0);
            }
        }
    }
    for (std::size_t k = 0; k < robots; ++k) {
        for (std::size_t i = 1; i <= n; ++i) {
            model.add_variable(y(i, k), VarKind::Binary, 0.0, 1.0);
        }
    }
    for (std::size_t k = 0; k < robots; ++k) {
        model.add_variable(z(k), VarKind::Binary, 0.0, 1.0);
    }
    for (std::size_t k = 0; k < robots; ++k) {
        for (std::size_t i = 0; i <= end; ++i) {
            model.add_variable(s(i, k), VarKind::Continuous, 0.0, inf);  // (3j)
        }
    }
    auto v = [&](const std::string& name) { return model.index_of(name); };
    auto row = [&](std::string name, std::vector<MilpTerm> terms, Sense sense, double rhs) {
        model.constraints.push_back(MilpConstraint{std::move(name), std::move(terms), sense, rhs});
    };

    // (3a) serviced tasks
    for (std::size_t k = 0; k < robots; ++k) {
        for (std::size_t i = 1; i <= n; ++i) {
            model.objective.push_back({v(y(i, k)), 1.0});
        }
    }

    for (std::size_t k = 0; k < robots; ++k) {
        const std::string kk = idx(k + 1);
        // (3b) only activated robots leave the start depot and reach the end copy
        std::vector<MilpTerm> start, finish;
        for (std::size_t j = 1; j <= n; ++j) {
            start.push_back({v(x(0, j, k)), 1.0});
            finish.push_back({v(x(j, end, k)), 1.0});
        }
        start.push_back({v(z(k)), -1.0});
        finish.push_back({v(z(k)), -1.0});
        row("c3b_start_" + kk, std::move(start), Sense::Equal, 0.0);
        row("c3b_end_" + kk, std::move(finish), Sense::Equal, 0.0);

        // (3c) in-degree = out-degree = y
        for (std::size_t l = 1; l <= n; ++l) {
            std::vector<MilpTerm> in, out;
            for (std::size_t i = 0; i <= end; ++i) {
                if (i != l) {
                    in.push_back({v(x(i, l, k)), 1.0});
                    out.push_back({v(x(l, i, k)), 1.0});
                }
            }
            in.push_back({v(y(l, k)), -1.0});
            out.push_back({v(y(l, k)), -1.0});
            row("c3c_in_" + idx(l) + "_" + kk, std::move(in), Sense::Equal, 0.0);
            row("c3c_out_" + idx(l) + "_" + kk, std::move(out), Sense::Equal, 0.0);
        }

        // (3d) s_i + D_ij - s_j <= M (1 - x_ij)
        for (std::size_t i = 0; i <= end; ++i) {
            for (std::size_t j = 0; j <= end; ++j) {
                if (arc_fixed(k, i, j)) {
                    continue;
                }
                row("c3d_" + idx(i) + "_" + idx(j) + "_" + kk,
                    {{v(s(i, k)), 1.0}, {v(s(j, k)), -1.0}, {v(x(i, j, k)), big_m}}, Sense::LessEqual,
                    big_m - distance(k, i, j));
            }
        }
    }

    // (3e) each task serviced at most once
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<MilpTerm> terms;
        for (std::size_t k = 0; k < robots; ++k) {
            terms.push_back({v(y(i, k)), 1.0});
        }
        row("c3e_" + idx(i), std::move(terms), Sense::LessEqual, 1.0);
    }

    for (std::size_t k = 0; k < robots; ++k) {
        const std::string kk = idx(k + 1);
        const RobotType& type = problem.type(fleet.robots[k].type);
        for (std::size_t i = 1; i <= n; ++i) {
            // (3f) y <= c with c the static capability indicator
            const double c = type.can_service(problem.tasks[i - 1]) ? 1.0 : 0.0;
            row("c3f_" + idx(i) + "_" + kk, {{v(y(i, k)), 1.0}}, Sense::LessEqual, c);
        }
        for (std::size_t i = 1; i <= n; ++i) {
            // (3g) s_i <= y_i * deadline
            row("c3g_" + idx(i) + "_" + kk, {{v(s(i, k)), 1.0}, {v(y(i, k)), -deadline_for(k, i - 1)}},
                Sense::LessEqual, 0.0);
        }
        // (3h) battery over every traversed arc, both depot legs included
        std::vector<MilpTerm> legs;
        for (std::size_t i = 0; i <= end; ++i) {
            for (std::size_t j = 0; j <= end; ++j) {
                if (!arc_fixed(k, i, j) && distance(k, i, j) != 0.0) {
                    legs.push_back({v(x(i, j, k)), distance(k, i, j)});
                }
            }
        }
        row("c3h_" + kk, std::move(legs), Sense::LessEqual, type.battery.to_double());
    }

    // (3i) budget over activated robots
    std::vector<MilpTerm> budget;
    for (std::size_t k = 0; k < robots; ++k) {
        budget.push_back({v(z(k)), problem.type(fleet.robots[k].type).deploy_cost.to_double()});
    }
    row("c3i", std::move(budget), Sense::LessEqual, problem.budget.to_double());
    return model;
}

namespace {

std::string number(double value) {
    if (std::isinf(value)) {
        return value > 0 ? "+inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

const char* sense_text(Sense s) {
    switch (s) {
        case Sense::LessEqual: return "<=";
        case Sense::Equal: return "=";
        case Sense::GreaterEqual: return ">=";
    }
    return "=";
}

void write_terms(std::ostream& os, const MilpModel& model, const std::vector<MilpTerm>& terms) {
    constexpr std::size_t kTermsPerLine = 8;
    if (terms.empty()) {
        os << " 0 " << model.variables.front().name;
    }
    for (std::size_t t = 0; t < terms.size(); ++t) {
        if (t > 0 && t % kTermsPerLine == 0) {
            os << "\n   ";
        }
        const MilpTerm& term = terms[t];
        const bool negative = term.coef < 0;
        if (t > 0 || negative) {
            os << (negative ? " - " : " + ");
        } else {
            os << ' ';
        }
        const double magnitude = std::fabs(term.coef);
        if (magnitude != 1.0) {
            os << number(magnitude) << ' ';
        }
        os << model.variables[term.var].name;
    }
}

}  // namespace

void write_lp(std::ostream& os, const MilpModel& model) {
    os << "\\ fleet design routing model\n";
    os << "\\ big_m: " << number(model.big_m) << '\n';
    os << (model.maximize ? "Maximize\n" : "Minimize\n");
    os << ' ' << model.objective_name << ':';
    write_terms(os, model, model.objective);
    os << "\nSubject To\n";
    for (const MilpConstraint& c : model.constraints) {
        os << ' ' << c.name << ':';
        write_terms(os, model, c.terms);
        os << ' ' << sense_text(c.sense) << ' ' << number(c.rhs) << '\n';
    }
    os << "Bounds\n";
    for (const MilpVariable& var : model.variables) {
        if (var.lower == var.upper) {
            os << ' ' << var.name << " = " << number(var.lower) << '\n';
        } else if (std::isinf(var.upper)) {
            os << ' ' << var.name << " >= " << number(var.lower) << '\n';
        } else {
            os << ' ' << number(var.lower) << " <= " << var.name << " <= " << number(var.upper) << '\n';
        }
    }
    os << "Binaries\n";
    std::size_t on_line = 0;
    for (const MilpVariable& var : model.variables) {
        if (var.kind == VarKind::Binary) {
            os << ' ' << var.name;
            if (++on_line % 10 == 0) {
                os << '\n';
            }
        }
    }
    if (on_line % 10 != 0) {
        os << '\n';
    }
    os << "End\n";
}

std::string to_lp(const MilpModel& model) {
    std::ostringstream os;
    write_lp(os, model);
    return os.str();
}

namespace {

enum class Section { None, Objective, Constraints, Bounds, Binaries, Generals, End };

struct Token {
    std::string text;
    int line;
};

bool parse_number(const std::string& text, double& out) {
    if (text == "+inf" || text == "inf" || text == "+infinity" || text == "infinity") {
        out = std::numeric_limits<double>::infinity();
        return true;
    }
    if (text == "-inf" || text == "-infinity") {
        out = -std::numeric_limits<double>::infinity();
        return true;
    }
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

bool is_sense(const std::string& t) {
    return t == "<=" || t == "=<" || t == "<" || t == ">=" || t == "=>" || t == ">" || t == "=";
}

Sense to_sense(const std::string& t) {
    if (t == "=") {
        return Sense::Equal;
    }
    return (t[0] == '<' || t == "=<") ? Sense::LessEqual : Sense::GreaterEqual;
}

Section section_of(std::string line) {
    std::transform(line.begin(), line.end(), line.begin(), [](unsigned char c) { return std::tolower(c); });
    if (line == "maximize" || line == "maximise" || line == "max" || line == "minimize" || line == "minimise" ||
        line == "min") {
        return Section::Objective;
    }
    if (line == "subject to" || line == "such that" || line == "st" || line == "s.t.") {
        return Section::Constraints;
    }
    if (line == "bounds" || line == "bound") {
        return Section::Bounds;
    }
    if (line == "binaries" || line == "binary" || line == "bin") {
        return Section::Binaries;
    }
    if (line == "generals" || line == "general" || line == "gen") {
        return Section::Generals;
    }
    if (line == "end") {
        return Section::End;
    }
    return Section::None;
}

}  // namespace

MilpModel read_lp(std::istream& is, const std::string& source) {
    MilpModel model;
    bool saw_end = false;
    bool saw_objective = false;
    Section section = Section::None;
    std::vector<Token> objective_tokens, constraint_tokens, binary_tokens;
    struct BoundLine {
        std::vector<std::string> tokens;
        int line;
    };
    std::vector<BoundLine> bounds;

    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        if (auto pos = raw.find('\\'); pos != std::string::npos) {
            std::string comment = raw.substr(pos + 1);
            if (auto key = comment.find("big_m:"); key != std::string::npos) {
                std::istringstream cs(comment.substr(key + 6));
                std::string value;
                cs >> value;
                if (!parse_number(value, model.big_m)) {
                    throw ParseError(source, line_no, "bad big_m comment");
                }
            }
            raw.erase(pos);
        }
        std::string trimmed = raw;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
        if (trimmed.empty()) {
            continue;
        }
        if (Section next = section_of(trimmed); next != Section::None) {
            if (next == Section::Objective) {
                std::string lower = trimmed;
                std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
                model.maximize = lower.rfind("max", 0) == 0;
                saw_objective = true;
            }
            section = next;
            if (next == Section::End) {
                saw_end = true;
                break;
            }
            continue;
        }
        std::istringstream ls(trimmed);
        std::vector<std::string> words;
        for (std::string w; ls >> w;) {
            // split "name:term" glued forms
            if (auto colon = w.find(':'); colon != std::string::npos && colon + 1 < w.size()) {
                words.push_back(w.substr(0, colon + 1));
                words.push_back(w.substr(colon + 1));
            } else {
                words.push_back(w);
            }
        }
        switch (section) {
            case Section::Objective:
                for (auto& w : words) objective_tokens.push_back({w, line_no});
                break;
            case Section::Constraints:
                for (auto& w : words) constraint_tokens.push_back({w, line_no});
                break;
            case Section::Bounds:
                bounds.push_back({words, line_no});
                break;
            case Section::Binaries:
                for (auto& w : words) binary_tokens.push_back({w, line_no});
                break;
            case Section::Generals:
                throw ParseError(source, line_no, "general integer variables are not supported");
            case Section::None:
            case Section::End:
                throw ParseError(source, line_no, "content outside of any section");
        }
    }
    if (!saw_objective) {
        throw ParseError(source, 0, "missing section 'Maximize'/'Minimize'");
    }
    if (!saw_end) {
        throw ParseError(source, line_no, "missing section 'End' (truncated file?)");
    }

    // Bounds define the variable table.
    for (const BoundLine& b : bounds) {
        const auto& t = b.tokens;
        double lo = 0.0, hi = std::numeric_limits<double>::infinity();
        std::string name;
        if (t.size() == 5 && is_sense(t[1]) && is_sense(t[3]) && parse_number(t[0], lo) && parse_number(t[4], hi)) {
            name = t[2];
        } else if (t.size() == 3 && t[1] == "=" && parse_number(t[2], lo)) {
            name = t[0];
            hi = lo;
        } else if (t.size() == 3 && (t[1] == ">=" || t[1] == "=>") && parse_number(t[2], lo)) {
            name = t[0];
        } else if (t.size() == 3 && (t[1] == "<=" || t[1] == "=<") && parse_number(t[2], hi)) {
            name = t[0];
        } else if (t.size() == 2 && (t[1] == "free" || t[1] == "Free")) {
            name = t[0];
            lo = -std::numeric_limits<double>::infinity();
        } else {
            throw ParseError(source, b.line, "unsupported bound line");
        }
        if (model.has_variable(name)) {
            throw ParseError(source, b.line, "variable '" + name + "' bounded twice");
        }
        model.add_variable(name, VarKind::Continuous, lo, hi);
    }
    for (const Token& t : binary_tokens) {
        if (!model.has_variable(t.text)) {
            throw ParseError(source, t.line, "binary variable '" + t.text + "' has no bound line");
        }
        model.variables[model.index_of(t.text)].kind = VarKind::Binary;
    }

    auto lookup = [&](const Token& t) {
        if (!model.has_variable(t.text)) {
            throw ParseError(source, t.line, "variable '" + t.text + "' has no bound line");
        }
        return model.index_of(t.text);
    };

    // Parses "[name:] [+|-] [coef] var ..." until a sense token or the end.
    auto parse_expression = [&](const std::vector<Token>& tokens, std::size_t& pos, std::vector<MilpTerm>& terms) {
        double sign = 1.0;
        double coef = 1.0;
        bool have_coef = false;
        while (pos < tokens.size() && !is_sense(tokens[pos].text)) {
            const Token& t = tokens[pos];
            if (!t.text.empty() && t.text.back() == ':') {
                break;
            }
            ++pos;
            double value = 0.0;
            if (t.text == "+") {
                sign = 1.0;
            } else if (t.text == "-") {
                sign = -1.0;
            } else if (parse_number(t.text, value)) {
                coef = value;
                have_coef = true;
            } else {
                double c = sign * (have_coef ? coef : 1.0);
                if (c != 0.0 || !have_coef) {
                    terms.push_back({lookup(t), c});
                }
                sign = 1.0;
                coef = 1.0;
                have_coef = false;
            }
        }
    };

    {
        std::size_t pos = 0;
        if (pos < objective_tokens.size() && objective_tokens[pos].text.back() == ':') {
            model.objective_name = objective_tokens[pos].text.substr(0, objective_tokens[pos].text.size() - 1);
            ++pos;
        }
        parse_expression(objective_tokens, pos, model.objective);
        if (pos != objective_tokens.size()) {
            throw ParseError(source, objective_tokens[pos].line, "unexpected token in objective");
        }
    }

    std::size_t pos = 0;
    while (pos < constraint_tokens.size()) {
        MilpConstraint c;
        const Token& head = constraint_tokens[pos];
        if (head.text.back() != ':') {
            throw ParseError(source, head.line, "constraint without a name");
        }
        c.name = head.text.substr(0, head.text.size() - 1);
        ++pos;
        parse_expression(constraint_tokens, pos, c.terms);
        if (pos >= constraint_tokens.size() || !is_sense(constraint_tokens[pos].text)) {
            throw ParseError(source, head.line, "constraint '" + c.name + "' lacks a relation");
        }
        c.sense = to_sense(constraint_tokens[pos].text);
        ++pos;
        double sign = 1.0;
        if (pos < constraint_tokens.size() && (constraint_tokens[pos].text == "-" || constraint_tokens[pos].text == "+")) {
            sign = constraint_tokens[pos].text == "-" ? -1.0 : 1.0;
            ++pos;
        }
        if (pos >= constraint_tokens.size() || !parse_number(constraint_tokens[pos].text, c.rhs)) {
            throw ParseError(source, head.line, "constraint '" + c.name + "' lacks a right-hand side");
        }
        c.rhs *= sign;
        ++pos;
        model.constraints.push_back(std::move(c));
    }
    return model;
}

}  // namespace fleet
