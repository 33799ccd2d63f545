#include "asbench/scenario.hpp"

#include "asbench/arff.hpp"
#include "asbench/error.hpp"
#include "text.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <tuple>

namespace asbench {

std::string_view to_string(RunStatus status) noexcept {
    switch (status) {
        case RunStatus::ok: return "ok";
        case RunStatus::timeout: return "timeout";
        case RunStatus::memout: return "memout";
        case RunStatus::crash: return "crash";
        case RunStatus::other: return "other";
    }
    return "other";
}

std::string_view to_string(FeatureStatus status) noexcept {
    switch (status) {
        case FeatureStatus::ok: return "ok";
        case FeatureStatus::presolved: return "presolved";
        case FeatureStatus::timeout: return "timeout";
        case FeatureStatus::crash: return "crash";
        case FeatureStatus::other: return "other";
    }
    return "other";
}

RunStatus parse_run_status(std::string_view text) noexcept {
    const std::string s = detail::to_lower(detail::trim(text));
    if (s == "ok") return RunStatus::ok;
    if (s == "timeout") return RunStatus::timeout;
    if (s == "memout") return RunStatus::memout;
    if (s == "crash") return RunStatus::crash;
    return RunStatus::other;
}

FeatureStatus parse_feature_status(std::string_view text) noexcept {
    const std::string s = detail::to_lower(detail::trim(text));
    if (s == "ok") return FeatureStatus::ok;
    if (s == "presolved") return FeatureStatus::presolved;
    if (s == "timeout") return FeatureStatus::timeout;
    if (s == "crash") return FeatureStatus::crash;
    return FeatureStatus::other;
}

// ---------------------------------------------------------------------------
// Scenario

namespace {

template <typename Map>
std::optional<std::size_t> lookup(const Map &m, std::string_view key) {
    const auto it = m.find(key);
    if (it == m.end()) {
        return std::nullopt;
    }
    return it->second;
}

template <typename Map>
void fill_index(Map &m, const std::vector<std::string> &ids) {
    m.clear();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        m.emplace(ids[i], i);  // keeps the first of any duplicates
    }
}

}  // namespace

std::optional<std::size_t> Scenario::instance_index(std::string_view id) const { return lookup(instance_idx_, id); }
std::optional<std::size_t> Scenario::algorithm_index(std::string_view id) const { return lookup(algorithm_idx_, id); }
std::optional<std::size_t> Scenario::feature_index(std::string_view name) const { return lookup(feature_idx_, name); }
std::optional<std::size_t> Scenario::step_index(std::string_view name) const { return lookup(step_idx_, name); }

const RunRecord &Scenario::run(std::size_t inst, std::size_t algo) const {
    const auto &rec = runs(inst, algo);
    if (!rec) {
        throw DataError{ fmt::format("scenario '{}': no run of algorithm '{}' on instance '{}'", scenario_id, algorithms.at(algo),
                                     instances.at(inst)) };
    }
    return *rec;
}

void Scenario::rebuild_index() {
    fill_index(instance_idx_, instances);
    fill_index(algorithm_idx_, algorithms);
    fill_index(feature_idx_, features);
    std::vector<std::string> step_names;
    step_names.reserve(feature_steps.size());
    for (const auto &step : feature_steps) {
        step_names.push_back(step.name);
    }
    fill_index(step_idx_, step_names);
}

bool operator==(const Scenario &a, const Scenario &b) {
    return std::tie(a.scenario_id, a.cutoff, a.performance_measure, a.algorithms, a.instances, a.features, a.feature_steps, a.runs,
                    a.feature_values, a.feature_costs, a.feature_runstatus) ==
           std::tie(b.scenario_id, b.cutoff, b.performance_measure, b.algorithms, b.instances, b.features, b.feature_steps, b.runs,
                    b.feature_values, b.feature_costs, b.feature_runstatus);
}

// ---------------------------------------------------------------------------
// Validation

std::size_t ValidationReport::error_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(issues.begin(), issues.end(), [](const ValidationIssue &i) { return i.severity == Severity::error; }));
}

std::string ValidationReport::to_string() const {
    std::string out;
    for (const auto &issue : issues) {
        out += fmt::format("{}:{}: {}: {}\n", issue.file, issue.line, issue.severity == Severity::error ? "error" : "warning",
                           issue.message);
    }
    return out;
}

namespace {

void sort_issues(std::vector<ValidationIssue> &issues) {
    std::stable_sort(issues.begin(), issues.end(), [](const ValidationIssue &a, const ValidationIssue &b) {
        return std::tie(a.file, a.line) < std::tie(b.file, b.line);
    });
}

void check_unique(const std::vector<std::string> &ids, std::string_view what, const std::string &file,
                  std::vector<ValidationIssue> &issues) {
    std::set<std::string_view> seen;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!seen.insert(ids[i]).second) {
            issues.push_back({ Severity::error, file, i + 1, fmt::format("duplicate {} id '{}'", what, ids[i]) });
        }
    }
}

}  // namespace

ValidationReport validate_scenario(const Scenario &s) {
    std::vector<ValidationIssue> issues;
    const std::string desc{ description_file };
    const std::string runs_file{ algorithm_runs_file };
    const std::string values_file{ feature_values_file };
    const std::string costs_file{ feature_costs_file };

    if (!(s.cutoff > 0.0) || !std::isfinite(s.cutoff)) {
        issues.push_back({ Severity::error, desc, 0, fmt::format("algorithm_cutoff_time must be a positive number, got {}", s.cutoff) });
    }
    check_unique(s.instances, "instance", runs_file, issues);
    check_unique(s.algorithms, "algorithm", runs_file, issues);
    check_unique(s.features, "feature", values_file, issues);
    {
        std::vector<std::string> step_names;
        for (const auto &st : s.feature_steps) {
            step_names.push_back(st.name);
        }
        check_unique(step_names, "feature step", desc, issues);
    }

    const std::size_t n_inst = s.instances.size();
    const bool runs_shape = s.runs.rows() == n_inst && s.runs.cols() == s.algorithms.size();
    const bool values_shape = s.feature_values.rows() == n_inst && s.feature_values.cols() == s.features.size();
    const bool costs_shape = s.feature_costs.rows() == n_inst && s.feature_costs.cols() == s.feature_steps.size();
    const bool status_shape = s.feature_runstatus.rows() == n_inst && s.feature_runstatus.cols() == s.feature_steps.size();
    if (!runs_shape) {
        issues.push_back({ Severity::error, runs_file, 0, "run table dimensions do not match instances x algorithms" });
    }
    if (!values_shape) {
        issues.push_back({ Severity::error, values_file, 0, "feature value table dimensions do not match instances x features" });
    }
    if (!costs_shape || !status_shape) {
        issues.push_back({ Severity::error, costs_file, 0, "feature cost/status table dimensions do not match instances x steps" });
    }

    if (runs_shape) {
        std::size_t line = 0;
        for (std::size_t i = 0; i < n_inst; ++i) {
            for (std::size_t a = 0; a < s.algorithms.size(); ++a) {
                ++line;
                const auto &rec = s.runs(i, a);
                if (!rec) {
                    issues.push_back({ Severity::error, runs_file, line,
                                       fmt::format("missing run of algorithm '{}' on instance '{}'", s.algorithms[a], s.instances[i]) });
                    continue;
                }
                if (!(rec->runtime >= 0.0) || std::isnan(rec->runtime)) {
                    issues.push_back({ Severity::error, runs_file, line,
                                       fmt::format("negative or invalid runtime {} for ('{}', '{}')", rec->runtime, s.instances[i],
                                                   s.algorithms[a]) });
                } else if (rec->status == RunStatus::ok && rec->runtime > s.cutoff) {
                    issues.push_back({ Severity::error, runs_file, line,
                                       fmt::format("runtime {} with runstatus ok exceeds cutoff {} for ('{}', '{}')", rec->runtime,
                                                   s.cutoff, s.instances[i], s.algorithms[a]) });
                }
            }
        }
    }

    // every feature belongs to exactly one step; steps only reference known features/steps
    std::map<std::string_view, std::size_t> owner_count;
    for (std::size_t k = 0; k < s.feature_steps.size(); ++k) {
        const auto &step = s.feature_steps[k];
        for (const auto &f : step.provides) {
            ++owner_count[f];
            if (std::find(s.features.begin(), s.features.end(), f) == s.features.end()) {
                issues.push_back({ Severity::error, desc, 0, fmt::format("feature step '{}' provides unknown feature '{}'", step.name, f) });
            }
        }
        for (const auto &r : step.requires_steps) {
            const bool known = std::any_of(s.feature_steps.begin(), s.feature_steps.end(), [&](const FeatureStep &o) { return o.name == r; });
            if (!known) {
                issues.push_back({ Severity::error, desc, 0, fmt::format("feature step '{}' requires unknown step '{}'", step.name, r) });
            }
        }
    }
    for (std::size_t f = 0; f < s.features.size(); ++f) {
        const auto it = owner_count.find(s.features[f]);
        const std::size_t count = it == owner_count.end() ? 0 : it->second;
        if (count != 1) {
            issues.push_back({ Severity::error, desc, 0,
                               fmt::format("feature '{}' belongs to {} feature steps, expected exactly one", s.features[f], count) });
        }
    }

    if (costs_shape) {
        std::size_t line = 0;
        for (std::size_t i = 0; i < n_inst; ++i) {
            ++line;
            for (std::size_t k = 0; k < s.feature_steps.size(); ++k) {
                const auto &c = s.feature_costs(i, k);
                if (c && (!(*c >= 0.0) || std::isnan(*c))) {
                    issues.push_back({ Severity::error, costs_file, line,
                                       fmt::format("negative feature cost {} for step '{}' on '{}'", *c, s.feature_steps[k].name,
                                                   s.instances[i]) });
                }
            }
        }
    }

    sort_issues(issues);
    return ValidationReport{ std::move(issues) };
}

// ---------------------------------------------------------------------------
// Loading

namespace {

struct DescriptionInfo {
    std::string scenario_id;
    std::optional<double> cutoff;
    std::string performance_measure{ "runtime" };
    std::vector<FeatureStep> steps;
    bool has_steps{ false };
};

std::vector<std::string> yaml_string_list(const YAML::Node &node) {
    std::vector<std::string> out;
    if (!node || node.IsNull()) {
        return out;
    }
    if (node.IsSequence()) {
        for (const auto &item : node) {
            out.push_back(item.as<std::string>());
        }
    } else if (node.IsScalar()) {
        const std::string v = node.as<std::string>();
        if (!v.empty() && v != "?") {
            out.push_back(v);
        }
    }
    return out;
}

// ASlib files write unknown values as a bare '?', which YAML reads as a
// complex-key marker. Quote those before parsing.
std::string quote_unknown_values(std::istream &in) {
    static const std::regex bare_unknown{ R"(^(\s*(?:-|[^#:]+:))\s*\?\s*$)" };
    std::string text;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        text += std::regex_replace(line, bare_unknown, "$1 \"?\"");
        text += '\n';
    }
    return text;
}

DescriptionInfo parse_description(const std::filesystem::path &path) {
    std::ifstream in{ path };
    if (!in) {
        throw DataError{ fmt::format("cannot open '{}'", path.string()) };
    }
    YAML::Node root;
    try {
        root = YAML::Load(quote_unknown_values(in));
    } catch (const YAML::ParserException &e) {
        throw ParseError{ std::string(description_file), static_cast<std::size_t>(e.mark.line + 1), e.msg };
    }
    if (!root.IsMap()) {
        throw ParseError{ std::string(description_file), 0, "expected a key/value mapping" };
    }
    DescriptionInfo info;
    try {
        if (const auto id = root["scenario_id"]) {
            info.scenario_id = id.as<std::string>();
        }
        if (const auto c = root["algorithm_cutoff_time"]; c && c.IsScalar()) {
            info.cutoff = detail::parse_double(c.as<std::string>());
        }
        if (const auto pm = yaml_string_list(root["performance_measures"]); !pm.empty()) {
            info.performance_measure = pm.front();
        }
        for (const auto &t : yaml_string_list(root["performance_type"])) {
            if (!detail::iequals(t, "runtime")) {
                throw DataError{ fmt::format("unsupported performance_type '{}': only runtime scenarios can be evaluated", t) };
            }
        }
        if (const auto steps = root["feature_steps"]; steps && steps.IsMap()) {
            info.has_steps = true;
            for (const auto &kv : steps) {
                FeatureStep step;
                step.name = kv.first.as<std::string>();
                const YAML::Node &body = kv.second;
                if (body.IsMap()) {
                    step.provides = yaml_string_list(body["provides"]);
                    step.requires_steps = yaml_string_list(body["requires"]);
                } else {
                    step.provides = yaml_string_list(body);
                }
                info.steps.push_back(std::move(step));
            }
        }
    } catch (const YAML::Exception &e) {
        throw ParseError{ std::string(description_file), static_cast<std::size_t>(e.mark.line + 1), e.msg };
    }
    return info;
}

std::size_t require_column(const ArffTable &t, std::string_view name, std::string_view file) {
    const auto idx = t.find_attribute(name);
    if (!idx) {
        throw DataError{ fmt::format("{}: missing column '{}'", file, name) };
    }
    return *idx;
}

std::string cell_text(const ArffCell &cell) {
    if (const auto *s = std::get_if<std::string>(&cell)) {
        return *s;
    }
    if (const auto *d = std::get_if<double>(&cell)) {
        return detail::format_double(*d);
    }
    return "?";
}

std::optional<double> cell_number(const ArffCell &cell) {
    if (const auto *d = std::get_if<double>(&cell)) {
        return *d;
    }
    if (const auto *s = std::get_if<std::string>(&cell)) {
        return detail::parse_double(*s);
    }
    return std::nullopt;
}

/// Row index in an instance-keyed table; only the first repetition of each instance is kept.
struct FirstRows {
    std::map<std::string, std::size_t, std::less<>> row_of;
    std::vector<std::string> order;
};

FirstRows first_rows(const ArffTable &t, std::size_t id_col) {
    FirstRows out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        std::string id = cell_text(t.rows[r][id_col]);
        if (out.row_of.emplace(id, r).second) {
            out.order.push_back(std::move(id));
        }
    }
    return out;
}

std::vector<std::size_t> data_columns(const ArffTable &t, std::size_t id_col, std::optional<std::size_t> rep_col) {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < t.attributes.size(); ++c) {
        if (c != id_col && (!rep_col || c != *rep_col)) {
            cols.push_back(c);
        }
    }
    return cols;
}

}  // namespace

LoadResult load_scenario_report(const std::filesystem::path &dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        throw DataError{ fmt::format("scenario directory '{}' does not exist", dir.string()) };
    }
    for (const std::string_view f : { description_file, algorithm_runs_file, feature_values_file }) {
        if (!fs::exists(dir / f)) {
            throw DataError{ fmt::format("missing mandatory file '{}' in '{}'", f, dir.string()) };
        }
    }

    std::vector<ValidationIssue> issues;
    const DescriptionInfo desc = parse_description(dir / description_file);
    if (!desc.cutoff) {
        throw DataError{ fmt::format("{}: algorithm_cutoff_time is absent", dir.string()) };
    }
    if (!(*desc.cutoff > 0.0)) {
        throw DataError{ fmt::format("{}: algorithm_cutoff_time must be > 0, got {}", dir.string(), *desc.cutoff) };
    }

    Scenario s;
    s.scenario_id = desc.scenario_id.empty() ? dir.filename().string() : desc.scenario_id;
    s.cutoff = *desc.cutoff;
    s.performance_measure = desc.performance_measure;

    // algorithm runs
    const ArffTable runs = read_arff_file(dir / algorithm_runs_file);
    const std::string runs_name{ algorithm_runs_file };
    const std::size_t r_inst = require_column(runs, "instance_id", runs_name);
    const std::size_t r_algo = require_column(runs, "algorithm", runs_name);
    const std::size_t r_status = require_column(runs, "runstatus", runs_name);
    const auto r_rep = runs.find_attribute("repetition");
    std::size_t r_perf = 0;
    if (const auto p = runs.find_attribute(s.performance_measure)) {
        r_perf = *p;
    } else {
        const auto candidates = data_columns(runs, r_inst, r_rep);
        const auto it = std::find_if(candidates.begin(), candidates.end(), [&](std::size_t c) {
            return c != r_algo && c != r_status && runs.attributes[c].kind == AttributeKind::numeric;
        });
        if (it == candidates.end()) {
            throw DataError{ fmt::format("{}: no performance column", runs_name) };
        }
        r_perf = *it;
        s.performance_measure = runs.attributes[r_perf].name;
    }

    struct RawRun {
        std::size_t line;
        std::string instance;
        std::string algorithm;
        RunRecord record;
    };
    std::vector<RawRun> raw_runs;
    std::set<std::pair<std::string, std::string>> seen_pairs;
    std::set<std::string, std::less<>> seen_instances;
    std::set<std::string, std::less<>> seen_algorithms;
    for (std::size_t r = 0; r < runs.rows.size(); ++r) {
        const auto &row = runs.rows[r];
        std::string inst = cell_text(row[r_inst]);
        std::string algo = cell_text(row[r_algo]);
        if (!seen_pairs.emplace(inst, algo).second) {
            continue;  // later repetitions are ignored
        }
        const RunStatus status = parse_run_status(cell_text(row[r_status]));
        std::optional<double> runtime = cell_number(row[r_perf]);
        if (!runtime) {
            if (status == RunStatus::ok) {
                issues.push_back({ Severity::error, runs_name, r + 1,
                                   fmt::format("missing runtime for successful run ('{}', '{}')", inst, algo) });
            }
            runtime = s.cutoff;
        }
        if (seen_instances.insert(inst).second) {
            s.instances.push_back(inst);
        }
        if (seen_algorithms.insert(algo).second) {
            s.algorithms.push_back(algo);
        }
        raw_runs.push_back({ r + 1, std::move(inst), std::move(algo), RunRecord{ *runtime, status } });
    }

    // feature values
    const ArffTable values = read_arff_file(dir / feature_values_file);
    const std::string values_name{ feature_values_file };
    const std::size_t v_inst = require_column(values, "instance_id", values_name);
    const auto v_rep = values.find_attribute("repetition");
    const auto v_cols = data_columns(values, v_inst, v_rep);
    for (const std::size_t c : v_cols) {
        s.features.push_back(values.attributes[c].name);
    }
    const FirstRows v_rows = first_rows(values, v_inst);

    // feature steps
    if (desc.has_steps) {
        s.feature_steps = desc.steps;
    } else if (!s.features.empty()) {
        s.feature_steps.push_back(FeatureStep{ "all", s.features, {} });
        issues.push_back({ Severity::warning, std::string(description_file), 0,
                           "no feature_steps declared; all features assigned to a single step 'all'" });
    }

    s.rebuild_index();
    const std::size_t n_inst = s.instances.size();
    s.runs = Grid<std::optional<RunRecord>>(n_inst, s.algorithms.size());
    for (const auto &rr : raw_runs) {
        s.runs(*s.instance_index(rr.instance), *s.algorithm_index(rr.algorithm)) = rr.record;
    }

    s.feature_values = Grid<std::optional<double>>(n_inst, s.features.size());
    for (const auto &id : v_rows.order) {
        const auto inst = s.instance_index(id);
        if (!inst) {
            issues.push_back({ Severity::error, values_name, v_rows.row_of.at(id) + 1,
                               fmt::format("instance '{}' has feature values but no algorithm runs", id) });
            continue;
        }
        const auto &row = values.rows[v_rows.row_of.at(id)];
        for (std::size_t f = 0; f < v_cols.size(); ++f) {
            s.feature_values(*inst, f) = cell_number(row[v_cols[f]]);
        }
    }
    for (std::size_t i = 0; i < n_inst; ++i) {
        if (!v_rows.row_of.count(s.instances[i])) {
            issues.push_back({ Severity::error, values_name, 0,
                               fmt::format("instance '{}' present in algorithm runs but absent from feature values", s.instances[i]) });
        }
    }

    // feature costs: absent file means zero cost everywhere
    const std::size_t n_steps = s.feature_steps.size();
    s.feature_costs = Grid<std::optional<double>>(n_inst, n_steps, 0.0);
    if (std::filesystem::exists(dir / feature_costs_file)) {
        s.feature_costs = Grid<std::optional<double>>(n_inst, n_steps);
        const ArffTable costs = read_arff_file(dir / feature_costs_file);
        const std::string costs_name{ feature_costs_file };
        const std::size_t c_inst = require_column(costs, "instance_id", costs_name);
        const auto c_rep = costs.find_attribute("repetition");
        const FirstRows c_rows = first_rows(costs, c_inst);
        for (const std::size_t c : data_columns(costs, c_inst, c_rep)) {
            const auto step = s.step_index(costs.attributes[c].name);
            if (!step) {
                issues.push_back({ Severity::warning, costs_name, 0,
                                   fmt::format("cost column '{}' does not name a feature step; ignored", costs.attributes[c].name) });
                continue;
            }
            for (const auto &id : c_rows.order) {
                if (const auto inst = s.instance_index(id)) {
                    s.feature_costs(*inst, *step) = cell_number(costs.rows[c_rows.row_of.at(id)][c]);
                }
            }
        }
        for (const auto &id : c_rows.order) {
            if (!s.instance_index(id)) {
                issues.push_back({ Severity::error, costs_name, c_rows.row_of.at(id) + 1,
                                   fmt::format("feature costs for unknown instance '{}'", id) });
            }
        }
    }

    // feature runstatus: absent file means ok everywhere
    s.feature_runstatus = Grid<FeatureStatus>(n_inst, n_steps, FeatureStatus::ok);
    if (std::filesystem::exists(dir / feature_runstatus_file)) {
        const ArffTable st = read_arff_file(dir / feature_runstatus_file);
        const std::string st_name{ feature_runstatus_file };
        const std::size_t s_inst = require_column(st, "instance_id", st_name);
        const auto s_rep = st.find_attribute("repetition");
        const FirstRows s_rows = first_rows(st, s_inst);
        for (const std::size_t c : data_columns(st, s_inst, s_rep)) {
            const auto step = s.step_index(st.attributes[c].name);
            if (!step) {
                issues.push_back({ Severity::warning, st_name, 0,
                                   fmt::format("runstatus column '{}' does not name a feature step; ignored", st.attributes[c].name) });
                continue;
            }
            for (const auto &id : s_rows.order) {
                if (const auto inst = s.instance_index(id)) {
                    const ArffCell &cell = st.rows[s_rows.row_of.at(id)][c];
                    s.feature_runstatus(*inst, *step) = is_missing(cell) ? FeatureStatus::other : parse_feature_status(cell_text(cell));
                }
            }
        }
        for (const auto &id : s_rows.order) {
            if (!s.instance_index(id)) {
                issues.push_back({ Severity::error, st_name, s_rows.row_of.at(id) + 1,
                                   fmt::format("feature runstatus for unknown instance '{}'", id) });
            }
        }
    }

    ValidationReport report = validate_scenario(s);
    issues.insert(issues.end(), report.issues.begin(), report.issues.end());
    sort_issues(issues);
    return LoadResult{ std::move(s), ValidationReport{ std::move(issues) } };
}

Scenario load_scenario(const std::filesystem::path &dir) {
    LoadResult result = load_scenario_report(dir);
    if (!result.report.ok()) {
        throw DataError{ fmt::format("scenario '{}' failed validation:\n{}", dir.string(), result.report.to_string()) };
    }
    return std::move(result.scenario);
}

// ---------------------------------------------------------------------------
// Writing

namespace {

ArffAttribute numeric_attr(std::string name) { return ArffAttribute{ std::move(name), AttributeKind::numeric, {} }; }
ArffAttribute string_attr(std::string name) { return ArffAttribute{ std::move(name), AttributeKind::string, {} }; }

ArffCell optional_cell(const std::optional<double> &v) {
    if (v) {
        return *v;
    }
    return std::monostate{};
}

void write_description(const std::filesystem::path &path, const Scenario &s) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "scenario_id" << YAML::Value << s.scenario_id;
    out << YAML::Key << "performance_measures" << YAML::Value << YAML::BeginSeq << s.performance_measure << YAML::EndSeq;
    out << YAML::Key << "maximize" << YAML::Value << YAML::BeginSeq << false << YAML::EndSeq;
    out << YAML::Key << "performance_type" << YAML::Value << YAML::BeginSeq << "runtime" << YAML::EndSeq;
    out << YAML::Key << "algorithm_cutoff_time" << YAML::Value << detail::format_double(s.cutoff);
    out << YAML::Key << "algorithm_cutoff_memory" << YAML::Value << "?";
    out << YAML::Key << "features_cutoff_time" << YAML::Value << "?";
    out << YAML::Key << "features_cutoff_memory" << YAML::Value << "?";
    out << YAML::Key << "algorithms_deterministic" << YAML::Value << YAML::Flow << s.algorithms;
    out << YAML::Key << "algorithms_stochastic" << YAML::Value << YAML::Flow << std::vector<std::string>{};
    out << YAML::Key << "features_deterministic" << YAML::Value << YAML::Flow << s.features;
    out << YAML::Key << "features_stochastic" << YAML::Value << YAML::Flow << std::vector<std::string>{};
    out << YAML::Key << "number_of_feature_steps" << YAML::Value << s.feature_steps.size();
    std::vector<std::string> step_names;
    for (const auto &step : s.feature_steps) {
        step_names.push_back(step.name);
    }
    out << YAML::Key << "default_steps" << YAML::Value << YAML::Flow << step_names;
    out << YAML::Key << "feature_steps" << YAML::Value << YAML::BeginMap;
    for (const auto &step : s.feature_steps) {
        out << YAML::Key << step.name << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "provides" << YAML::Value << YAML::Flow << step.provides;
        if (!step.requires_steps.empty()) {
            out << YAML::Key << "requires" << YAML::Value << YAML::Flow << step.requires_steps;
        }
        out << YAML::EndMap;
    }
    out << YAML::EndMap;
    out << YAML::EndMap;

    std::ofstream file{ path, std::ios::binary };
    if (!file) {
        throw DataError{ fmt::format("cannot write '{}'", path.string()) };
    }
    file << out.c_str() << '\n';
}

}  // namespace

void write_scenario(const std::filesystem::path &dir, const Scenario &s) {
    std::filesystem::create_directories(dir);
    write_description(dir / description_file, s);

    const std::size_t n_inst = s.instances.size();

    ArffTable runs;
    runs.relation_name = "ALGORITHM_RUNS";
    runs.attributes = { string_attr("instance_id"), numeric_attr("repetition"), string_attr("algorithm"),
                        numeric_attr(s.performance_measure),
                        ArffAttribute{ "runstatus", AttributeKind::nominal, { "ok", "timeout", "memout", "crash", "other" } } };
    for (std::size_t i = 0; i < n_inst; ++i) {
        for (std::size_t a = 0; a < s.algorithms.size(); ++a) {
            const RunRecord &rec = s.run(i, a);
            runs.rows.push_back({ s.instances[i], 1.0, s.algorithms[a], rec.runtime, std::string(to_string(rec.status)) });
        }
    }
    write_arff_file(dir / algorithm_runs_file, runs);

    ArffTable values;
    values.relation_name = "FEATURE_VALUES";
    values.attributes = { string_attr("instance_id"), numeric_attr("repetition") };
    for (const auto &f : s.features) {
        values.attributes.push_back(numeric_attr(f));
    }
    for (std::size_t i = 0; i < n_inst; ++i) {
        std::vector<ArffCell> row{ s.instances[i], 1.0 };
        for (std::size_t f = 0; f < s.features.size(); ++f) {
            row.push_back(optional_cell(s.feature_values(i, f)));
        }
        values.rows.push_back(std::move(row));
    }
    write_arff_file(dir / feature_values_file, values);

    if (s.feature_steps.empty()) {
        return;
    }
    ArffTable costs;
    costs.relation_name = "FEATURE_COSTS";
    costs.attributes = { string_attr("instance_id"), numeric_attr("repetition") };
    ArffTable status;
    status.relation_name = "FEATURE_RUNSTATUS";
    status.attributes = { string_attr("instance_id"), numeric_attr("repetition") };
    for (const auto &step : s.feature_steps) {
        costs.attributes.push_back(numeric_attr(step.name));
        status.attributes.push_back(
            ArffAttribute{ step.name, AttributeKind::nominal, { "ok", "presolved", "timeout", "crash", "other" } });
    }
    for (std::size_t i = 0; i < n_inst; ++i) {
        std::vector<ArffCell> crow{ s.instances[i], 1.0 };
        std::vector<ArffCell> srow{ s.instances[i], 1.0 };
        for (std::size_t k = 0; k < s.feature_steps.size(); ++k) {
            crow.push_back(optional_cell(s.feature_costs(i, k)));
            srow.push_back(std::string(to_string(s.feature_runstatus(i, k))));
        }
        costs.rows.push_back(std::move(crow));
        status.rows.push_back(std::move(srow));
    }
    write_arff_file(dir / feature_costs_file, costs);
    write_arff_file(dir / feature_runstatus_file, status);
}

}  // namespace asbench
