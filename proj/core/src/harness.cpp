#include "fleet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "fleet/baselines.hpp"
#include "fleet/errors.hpp"
#include "fleet/feasibility.hpp"
#include "fleet/rng.hpp"
#include "scenario_io.hpp"
#include "textio.hpp"

namespace fleet {

std::string to_string(Method method) {
    switch (method) {
        case Method::Lns: return "lns";
        case Method::Greedy: return "greedy";
        case Method::Random: return "random";
        case Method::Oracle: return "oracle";
    }
    return "lns";
}

Method parse_method(const std::string& text) {
    if (text == "lns") return Method::Lns;
    if (text == "greedy") return Method::Greedy;
    if (text == "random") return Method::Random;
    if (text == "oracle") return Method::Oracle;
    throw std::invalid_argument("method must be lns, greedy, random or oracle, got '" + text + "'");
}

void ExperimentSpec::validate() const {
    textio::check_token(id, "experiment id");
    if (trials < 1) {
        throw InvalidProblem("experiment: trials must be at least 1");
    }
    if (methods.empty()) {
        throw InvalidProblem("experiment: at least one method is required");
    }
    for (std::size_t i = 0; i < methods.size(); ++i) {
        if (std::find(methods.begin(), methods.begin() + static_cast<std::ptrdiff_t>(i), methods[i]) !=
            methods.begin() + static_cast<std::ptrdiff_t>(i)) {
            throw InvalidProblem("experiment: method '" + to_string(methods[i]) + "' listed twice");
        }
    }
    if (budgets.empty() || task_counts.empty()) {
        throw InvalidProblem("experiment: budget and task-count lists must be non-empty");
    }
    for (const Money& b : budgets) {
        if (!b.is_finite() || b < Money{0}) {
            throw InvalidProblem("experiment: budgets must be finite and non-negative");
        }
    }
    if (threads < 1) {
        throw InvalidProblem("experiment: threads must be at least 1");
    }
    scenario.validate();
    lns.validate();
    baseline.validate();
}

std::uint64_t scenario_seed(const ExperimentSpec& spec, std::size_t n, std::size_t trial) {
    std::uint64_t h = hash_combine(stable_hash(spec.id), stable_hash("scenario"));
    h = hash_combine(h, spec.scenario.seed);
    h = hash_combine(h, n);
    return hash_combine(h, trial);
}

std::uint64_t cell_seed(const std::string& experiment, Method method, std::size_t n, const Money& budget,
                        std::size_t trial) {
    std::uint64_t h = hash_combine(stable_hash(experiment), stable_hash(to_string(method)));
    h = hash_combine(h, n);
    h = hash_combine(h, stable_hash(budget.to_string()));
    return hash_combine(h, trial);
}

Problem cell_problem(const ExperimentSpec& spec, std::size_t n, const Money& budget, std::size_t trial) {
    ScenarioSpec s = spec.scenario;
    s.task_count = n;
    s.budget = budget;
    s.seed = scenario_seed(spec, n, trial);
    return generate(s);
}

namespace {

struct Cell {
    Method method;
    std::size_t n;
    Money budget;
    std::size_t trial;
};

std::map<TypeId, std::size_t> composition(const Fleet& fleet) {
    std::map<TypeId, std::size_t> out;
    for (const Robot& r : fleet.robots) {
        ++out[r.type];
    }
    return out;
}

Money cost_of(const Problem& problem, const Fleet& fleet) {
    Money total{0};
    for (const Robot& r : fleet.robots) {
        total += problem.type(r.type).deploy_cost;
    }
    return total;
}

std::string sanitize(std::string text) {
    for (char& c : text) {
        if (c == ',' || c == '\n' || c == '\r' || c == '"') {
            c = ';';
        }
    }
    return text;
}

ResultRecord run_cell(const ExperimentSpec& spec, const Cell& cell, const Problem& problem) {
    ResultRecord rec;
    rec.experiment = spec.id;
    rec.method = cell.method;
    rec.n = cell.n;
    rec.budget = cell.budget;
    rec.trial = cell.trial;
    rec.cost = Money{0};

    const std::uint64_t seed = cell_seed(spec.id, cell.method, cell.n, cell.budget, cell.trial);
    const auto start = std::chrono::steady_clock::now();
    try {
        Solution solution;  // over the base fleet
        Fleet bought;
        switch (cell.method) {
            case Method::Lns: {
                LnsParams params = spec.lns;
                params.seed = seed;
                LnsResult r = solve(problem, params);
                solution = std::move(r.best);
                bought = std::move(r.fleet);
                rec.reward = r.best_reward;
                rec.iterations = params.iterations;
                break;
            }
            case Method::Greedy: {
                LnsParams params = spec.baseline;
                params.seed = seed;
                GreedyResult r = greedy_fleet(problem, params);
                solution = std::move(r.result.solution);
                bought = std::move(r.result.purchased);
                rec.reward = r.result.reward;
                rec.iterations = r.result.iterations;
                break;
            }
            case Method::Random: {
                LnsParams params = spec.baseline;
                params.seed = seed;
                BaselineResult r = random_fleet(problem, params);
                solution = std::move(r.solution);
                bought = std::move(r.purchased);
                rec.reward = r.reward;
                rec.iterations = r.iterations;
                break;
            }
            case Method::Oracle: {
                OracleResult r = brute_force(problem, spec.oracle);
                const Fleet base = build_base_fleet(problem);
                for (RobotIndex i : r.solution.active_robots()) {
                    bought.robots.push_back(base.robots[i]);
                }
                solution = std::move(r.solution);
                rec.reward = r.reward;
                break;
            }
        }
        rec.fleet = composition(bought);
        rec.cost = cost_of(problem, bought);

        // Every reported solution is re-validated against the full model.
        const std::size_t checked = evaluate_reward(solution, problem);
        if (checked != *rec.reward) {
            throw InfeasibleSolution("reported reward " + std::to_string(*rec.reward) + " but solution scores " +
                                     std::to_string(checked));
        }
        if (!spec.solutions_dir.empty()) {
            const std::string name = to_string(cell.method) + "_N" + std::to_string(cell.n) + "_B" +
                                     cell.budget.to_string() + "_t" + std::to_string(cell.trial) + ".sol";
            std::string safe = name;
            std::replace(safe.begin(), safe.end(), '/', '-');
            save_solution_file((std::filesystem::path(spec.solutions_dir) / safe).string(),
                               make_solution_file(problem, solution, to_string(cell.method), seed, *rec.reward));
        }
    } catch (const std::exception& e) {
        rec.reward.reset();
        rec.fleet.clear();
        rec.cost = Money{0};
        rec.error = sanitize(e.what());
    }
    if (spec.record_timing) {
        rec.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return rec;
}

}  // namespace

std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    if (!spec.solutions_dir.empty()) {
        std::filesystem::create_directories(spec.solutions_dir);
    }

    std::vector<Money> budgets = spec.budgets;
    std::sort(budgets.begin(), budgets.end());
    budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
    std::vector<std::size_t> counts = spec.task_counts;
    std::sort(counts.begin(), counts.end());
    counts.erase(std::unique(counts.begin(), counts.end()), counts.end());

    std::vector<Cell> cells;
    for (Method m : spec.methods) {
        for (std::size_t n : counts) {
            for (const Money& b : budgets) {
                for (std::size_t t = 0; t < spec.trials; ++t) {
                    cells.push_back(Cell{m, n, b, t});
                }
            }
        }
    }

    std::vector<ResultRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            const Cell& c = cells[i];
            try {
                records[i] = run_cell(spec, c, cell_problem(spec, c.n, c.budget, c.trial));
            } catch (const std::exception& e) {
                ResultRecord rec;
                rec.experiment = spec.id;
                rec.method = c.method;
                rec.n = c.n;
                rec.budget = c.budget;
                rec.trial = c.trial;
                rec.cost = Money{0};
                rec.error = sanitize(e.what());
                records[i] = std::move(rec);
            }
        }
    };
    const std::size_t workers = std::min(spec.threads, std::max<std::size_t>(cells.size(), 1));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    return records;
}

std::string format_fleet(const std::map<TypeId, std::size_t>& fleet) {
    std::string out;
    for (const auto& [type, count] : fleet) {
        if (!out.empty()) {
            out += '+';
        }
        out += std::to_string(type) + ':' + std::to_string(count);
    }
    return out;
}

namespace {

std::string format_ms(double ms) {
    if (ms == 0.0) {
        return "0";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(line);
    while (std::getline(is, item, ',')) {
        out.push_back(item);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

std::size_t parse_size(const std::string& text, const std::string& source, int line, const char* column) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(text, &used);
        if (used == text.size() && text.find('-') == std::string::npos) {
            return static_cast<std::size_t>(v);
        }
    } catch (const std::logic_error&) {
    }
    throw ParseError(source, line, std::string("column '") + column + "': bad integer '" + text + "'");
}

}  // namespace

void write_results_csv(std::ostream& os, const std::vector<ResultRecord>& records) {
    os << "experiment,method,N,B,trial,reward,fleet,cost,wall_ms,iters\n";
    for (const ResultRecord& r : records) {
        os << r.experiment << ',' << to_string(r.method) << ',' << r.n << ',' << r.budget << ',' << r.trial << ',';
        if (r.reward) {
            os << *r.reward;
        } else {
            os << "NA";
        }
        os << ',';
        if (!r.error.empty()) {
            os << "error=" << sanitize(r.error);
        } else {
            os << format_fleet(r.fleet);
        }
        os << ',' << r.cost << ',' << format_ms(r.wall_ms) << ',' << r.iterations << '\n';
    }
}

std::vector<ResultRecord> read_results_csv(std::istream& is, const std::string& source) {
    std::string line;
    int line_no = 0;
    if (!std::getline(is, line)) {
        throw ParseError(source, 0, "empty results file");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "experiment,method,N,B,trial,reward,fleet,cost,wall_ms,iters") {
        throw ParseError(source, line_no, "unexpected header '" + line + "'");
    }
    std::vector<ResultRecord> out;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> cols = split_csv(line);
        if (cols.size() != 10) {
            throw ParseError(source, line_no, "expected 10 columns, found " + std::to_string(cols.size()));
        }
        ResultRecord r;
        r.experiment = cols[0];
        try {
            r.method = parse_method(cols[1]);
            r.budget = Money::parse(cols[3]);
            r.cost = Money::parse(cols[7]);
        } catch (const std::exception& e) {
            throw ParseError(source, line_no, e.what());
        }
        r.n = parse_size(cols[2], source, line_no, "N");
        r.trial = parse_size(cols[4], source, line_no, "trial");
        if (cols[5] != "NA") {
            r.reward = parse_size(cols[5], source, line_no, "reward");
        }
        if (cols[6].rfind("error=", 0) == 0) {
            r.error = cols[6].substr(6);
        } else if (!cols[6].empty()) {
            std::istringstream fs(cols[6]);
            for (std::string pair; std::getline(fs, pair, '+');) {
                const auto colon = pair.find(':');
                if (colon == std::string::npos) {
                    throw ParseError(source, line_no, "column 'fleet': expected typeid:count, got '" + pair + "'");
                }
                const auto type = parse_size(pair.substr(0, colon), source, line_no, "fleet");
                r.fleet[static_cast<TypeId>(type)] = parse_size(pair.substr(colon + 1), source, line_no, "fleet");
            }
        }
        try {
            std::size_t used = 0;
            r.wall_ms = std::stod(cols[8], &used);
            if (used != cols[8].size()) {
                throw std::invalid_argument(cols[8]);
            }
        } catch (const std::logic_error&) {
            throw ParseError(source, line_no, "column 'wall_ms': bad number '" + cols[8] + "'");
        }
        r.iterations = parse_size(cols[9], source, line_no, "iters");
        if (!r.reward && r.error.empty()) {
            throw ParseError(source, line_no, "reward NA without an error tag");
        }
        out.push_back(std::move(r));
    }
    return out;
}

const SummaryRow* Summary::find(Method method, std::size_t n, const Money& budget) const {
    for (const SummaryRow& r : rows) {
        if (r.method == method && r.n == n && r.budget == budget) {
            return &r;
        }
    }
    return nullptr;
}

std::optional<Money> Summary::first_budget_reaching(Method method, std::size_t n, double target) const {
    std::optional<Money> best;
    for (const SummaryRow& r : rows) {
        if (r.method == method && r.n == n && r.count > 0 && r.mean >= target && (!best || r.budget < *best)) {
            best = r.budget;
        }
    }
    return best;
}

Summary summarize(const std::vector<ResultRecord>& records) {
    if (records.empty()) {
        throw std::invalid_argument("summarize: empty result table");
    }
    using Key = std::tuple<int, std::size_t, Money>;
    std::map<Key, std::vector<double>> rewards;
    std::map<Key, std::size_t> errors;
    for (const ResultRecord& r : records) {
        const Key key{static_cast<int>(r.method), r.n, r.budget};
        auto& list = rewards[key];
        if (r.reward) {
            list.push_back(static_cast<double>(*r.reward));
        } else {
            ++errors[key];
        }
    }

    Summary out;
    for (auto& [key, values] : rewards) {
        // Sorting makes the floating-point sums independent of record order.
        std::sort(values.begin(), values.end());
        SummaryRow row;
        row.method = static_cast<Method>(std::get<0>(key));
        row.n = std::get<1>(key);
        row.budget = std::get<2>(key);
        row.count = values.size();
        row.errors = errors.count(key) ? errors[key] : 0;
        if (!values.empty()) {
            double sum = 0.0;
            for (double v : values) {
                sum += v;
            }
            row.mean = sum / static_cast<double>(values.size());
            if (values.size() > 1) {
                double sq = 0.0;
                for (double v : values) {
                    sq += (v - row.mean) * (v - row.mean);
                }
                row.sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
            }
            row.min = values.front();
            row.max = values.back();
        }
        out.rows.push_back(row);
    }
    for (const SummaryRow& row : out.rows) {
        if (row.method != Method::Lns || row.count == 0) {
            continue;
        }
        const SummaryRow* greedy = out.find(Method::Greedy, row.n, row.budget);
        if (greedy != nullptr && greedy->count > 0) {
            out.differences.push_back(MeanDifference{row.n, row.budget, row.mean - greedy->mean});
        }
    }
    return out;
}

namespace {

std::string fixed(double v, int digits = 3) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

}  // namespace

void write_summary_csv(std::ostream& os, const Summary& summary) {
    os << "method,N,B,count,errors,mean,sd,min,max\n";
    for (const SummaryRow& r : summary.rows) {
        os << to_string(r.method) << ',' << r.n << ',' << r.budget << ',' << r.count << ',' << r.errors << ','
           << fixed(r.mean) << ',' << fixed(r.sd) << ',' << fixed(r.min, 0) << ',' << fixed(r.max, 0) << '\n';
    }
}

void write_differences_csv(std::ostream& os, const Summary& summary) {
    os << "N,B,lns_minus_greedy\n";
    for (const MeanDifference& d : summary.differences) {
        os << d.n << ',' << d.budget << ',' << fixed(d.lns_minus_greedy) << '\n';
    }
}

void write_summary_table(std::ostream& os, const Summary& summary) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-8s %6s %8s %6s %6s %9s %9s %6s %6s\n", "method", "N", "B", "count", "errors",
                  "mean", "sd", "min", "max");
    os << buf;
    for (const SummaryRow& r : summary.rows) {
        std::snprintf(buf, sizeof buf, "%-8s %6zu %8s %6zu %6zu %9.3f %9.3f %6.0f %6.0f\n", to_string(r.method).c_str(),
                      r.n, r.budget.to_string().c_str(), r.count, r.errors, r.mean, r.sd, r.min, r.max);
        os << buf;
    }
    if (!summary.differences.empty()) {
        os << '\n';
        std::snprintf(buf, sizeof buf, "%6s %8s %16s\n", "N", "B", "lns - greedy");
        os << buf;
        for (const MeanDifference& d : summary.differences) {
            std::snprintf(buf, sizeof buf, "%6zu %8s %16.3f\n", d.n, d.budget.to_string().c_str(), d.lns_minus_greedy);
            os << buf;
        }
    }
}

// ---------------------------------------------------------------------------
// experiment files

namespace {

std::string real_text(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_params(std::ostream& os, const char* section, const LnsParams& p) {
    os << '[' << section << "]\n";
    os << "k = " << p.iterations << '\n';
    os << "n-r = " << real_text(p.robot_removal_max_pct) << '\n';
    os << "n-t = " << real_text(p.task_removal_max_pct) << '\n';
    os << "p-removal = " << real_text(p.removal_mode_bias) << '\n';
    os << "p-discount = " << real_text(p.discount_prob) << '\n';
    os << "noise-max = " << real_text(p.noise_max) << '\n';
    os << "sa-t0 = " << real_text(p.sa_initial_temp) << '\n';
    os << "sa-cooling = " << real_text(p.sa_cooling) << '\n';
    os << "discount-denominator = " << to_string(p.discount_denominator) << '\n';
}

LnsParams read_params(const textio::Document& doc, const char* section) {
    LnsParams p;
    const textio::Section* s = textio::find_section(doc, section);
    if (s == nullptr) {
        return p;
    }
    if (!s->records.empty()) {
        throw ParseError(doc.source, s->records.front().line, std::string("[") + section + "]: unexpected record");
    }
    textio::FieldReader r(doc.source, s->settings, s->line, std::string("[") + section + "]");
    if (r.has("k")) p.iterations = r.unsigned_int("k");
    if (r.has("n-r")) p.robot_removal_max_pct = r.real("n-r");
    if (r.has("n-t")) p.task_removal_max_pct = r.real("n-t");
    if (r.has("p-removal")) p.removal_mode_bias = r.real("p-removal");
    if (r.has("p-discount")) p.discount_prob = r.real("p-discount");
    if (r.has("noise-max")) p.noise_max = r.real("noise-max");
    if (r.has("sa-t0")) p.sa_initial_temp = r.real("sa-t0");
    if (r.has("sa-cooling")) p.sa_cooling = r.real("sa-cooling");
    if (r.has("discount-denominator")) {
        try {
            p.discount_denominator = parse_discount_denominator(r.text("discount-denominator"));
        } catch (const std::invalid_argument& e) {
            r.fail("discount-denominator", e.what());
        }
    }
    r.finish();
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(doc.source, s->line, std::string("[") + section + "]: " + e.what());
    }
    return p;
}

}  // namespace

void save_experiment(std::ostream& os, const ExperimentSpec& spec) {
    spec.validate();
    textio::write_header(os, "experiment");
    os << "[experiment]\n";
    os << "id = " << spec.id << '\n';
    std::vector<std::string> items;
    for (const Money& b : spec.budgets) items.push_back(b.to_string());
    os << "budgets = " << textio::join(items) << '\n';
    items.clear();
    for (std::size_t n : spec.task_counts) items.push_back(std::to_string(n));
    os << "task_counts = " << textio::join(items) << '\n';
    os << "trials = " << spec.trials << '\n';
    items.clear();
    for (Method m : spec.methods) items.push_back(to_string(m));
    os << "methods = " << textio::join(items) << '\n';
    os << "threads = " << spec.threads << '\n';
    os << "timing = " << (spec.record_timing ? "true" : "false") << '\n';
    if (!spec.solutions_dir.empty()) {
        textio::check_token(spec.solutions_dir, "solutions directory");
        os << "solutions_dir = " << spec.solutions_dir << '\n';
    }
    write_params(os, "lns", spec.lns);
    write_params(os, "baseline", spec.baseline);
    os << "[oracle]\n";
    os << "max_tasks = " << spec.oracle.max_tasks << '\n';
    os << "max_base_fleet = " << spec.oracle.max_base_fleet << '\n';
    os << "max_states = " << spec.oracle.max_states << '\n';
    scenario_io::write_spec_sections(os, spec.scenario);
    os << "[end]\n";
}

ExperimentSpec load_experiment(std::istream& is, const std::string& source) {
    const textio::Document doc = textio::parse(is, source);
    textio::expect_kind(doc, "experiment");
    std::vector<std::string> allowed{std::begin(scenario_io::kSpecSections), std::end(scenario_io::kSpecSections)};
    allowed.insert(allowed.end(), {"experiment", "lns", "baseline", "oracle"});
    textio::check_sections(doc, allowed, {"experiment", "spec", "requirements", "robot_types"});

    ExperimentSpec spec;
    const textio::Section& head = textio::require_section(doc, "experiment");
    textio::FieldReader r(doc.source, head.settings, head.line, "[experiment]");
    spec.id = r.text("id");
    spec.budgets.clear();
    for (const std::string& b : r.list("budgets")) {
        try {
            spec.budgets.push_back(Money::parse(b));
        } catch (const std::exception&) {
            r.fail("budgets", "bad budget '" + b + "'");
        }
    }
    for (const std::string& n : r.list("task_counts")) {
        try {
            std::size_t used = 0;
            spec.task_counts.push_back(std::stoul(n, &used));
            if (used != n.size()) {
                throw std::invalid_argument(n);
            }
        } catch (const std::logic_error&) {
            r.fail("task_counts", "bad task count '" + n + "'");
        }
    }
    spec.trials = r.unsigned_int("trials");
    spec.methods.clear();
    for (const std::string& m : r.list("methods")) {
        try {
            spec.methods.push_back(parse_method(m));
        } catch (const std::invalid_argument& e) {
            r.fail("methods", e.what());
        }
    }
    if (r.has("threads")) spec.threads = r.unsigned_int("threads");
    if (r.has("timing")) spec.record_timing = r.boolean("timing");
    if (r.has("solutions_dir")) spec.solutions_dir = r.text("solutions_dir");
    r.finish();

    spec.lns = read_params(doc, "lns");
    spec.baseline = read_params(doc, "baseline");
    if (const textio::Section* o = textio::find_section(doc, "oracle")) {
        textio::FieldReader orc(doc.source, o->settings, o->line, "[oracle]");
        if (orc.has("max_tasks")) spec.oracle.max_tasks = orc.unsigned_int("max_tasks");
        if (orc.has("max_base_fleet")) spec.oracle.max_base_fleet = orc.unsigned_int("max_base_fleet");
        if (orc.has("max_states")) spec.oracle.max_states = orc.unsigned_int("max_states");
        orc.finish();
    }
    spec.scenario = scenario_io::read_spec_sections(doc);
    try {
        spec.validate();
    } catch (const std::exception& e) {
        throw ParseError(doc.source, head.line, e.what());
    }
    return spec;
}

ExperimentSpec load_experiment_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FleetError("cannot open '" + path + "' for reading");
    }
    return load_experiment(in, path);
}

}  // namespace fleet
