#include "asbench/error.hpp"
#include "asbench/metrics.hpp"
#include "asbench/pipeline.hpp"
#include "asbench/ranking.hpp"
#include "asbench/report.hpp"
#include "asbench/scenario.hpp"
#include "asbench/schedule.hpp"
#include "asbench/selectors.hpp"
#include "asbench/simulator.hpp"
#include "asbench/splitgen.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>

namespace py = pybind11;
using namespace asbench;

namespace {

py::object run_record(const Scenario &s, const std::string &instance, const std::string &algorithm) {
    const auto i = s.instance_index(instance);
    const auto a = s.algorithm_index(algorithm);
    if (!i || !a) {
        throw DataError{ "unknown instance or algorithm" };
    }
    const auto &rec = s.runs(*i, *a);
    if (!rec) {
        return py::none();
    }
    return py::make_tuple(rec->runtime, std::string(to_string(rec->status)));
}

RunConfig make_config(std::vector<std::filesystem::path> scenarios, std::vector<std::string> systems, std::size_t splits, std::uint64_t seed,
                      std::size_t resamples, double confidence, std::filesystem::path out, const std::string &sb_scope, bool plots,
                      std::size_t threads) {
    RunConfig cfg;
    cfg.scenarios = std::move(scenarios);
    cfg.systems = std::move(systems);
    cfg.n_splits = splits;
    cfg.seed = seed;
    cfg.resamples = resamples;
    cfg.confidence = confidence;
    cfg.out_dir = std::move(out);
    cfg.plots = plots;
    cfg.threads = threads;
    if (sb_scope == "full") {
        cfg.sb_scope = SbScope::full;
    } else if (sb_scope == "train") {
        cfg.sb_scope = SbScope::train;
    } else {
        throw UsageError{ "sb_scope must be 'full' or 'train'" };
    }
    return cfg;
}

py::list ranking_rows(const RankedResult &r) {
    py::list rows;
    for (const auto &e : r.ordering) {
        py::dict row;
        row["rank"] = e.rank;
        row["system"] = e.system;
        row["score"] = e.score;
        if (e.ci_lower) {
            row["ci_lower"] = *e.ci_lower;
            row["ci_upper"] = *e.ci_upper;
        }
        rows.append(row);
    }
    return rows;
}

ScoreTable read_scores(const std::filesystem::path &path) {
    std::ifstream in{ path };
    if (!in) {
        throw DataError{ "cannot open '" + path.string() + "'" };
    }
    return parse_scores(in, path.filename().string());
}

}  // namespace

PYBIND11_MODULE(_asbench, m) {
    m.doc() = "Algorithm selection benchmark harness: scenarios, splits, simulation and rankings";

    auto base = py::register_exception<Error>(m, "AsbenchError");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<DataError>(m, "DataError", base.ptr());
    py::register_exception<UsageError>(m, "UsageError", base.ptr());

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("scenario_id", &Scenario::scenario_id)
        .def_readonly("cutoff", &Scenario::cutoff)
        .def_readonly("algorithms", &Scenario::algorithms)
        .def_readonly("instances", &Scenario::instances)
        .def_readonly("features", &Scenario::features)
        .def("run", &run_record, py::arg("instance"), py::arg("algorithm"),
             "(runtime, status) of one run, or None when the record is absent")
        .def("__repr__", [](const Scenario &s) {
            return "<Scenario " + s.scenario_id + ": " + std::to_string(s.instances.size()) + " instances, " +
                   std::to_string(s.algorithms.size()) + " algorithms>";
        });

    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("write_scenario", &write_scenario, py::arg("path"), py::arg("scenario"));
    m.def(
        "validate_scenario",
        [](const std::filesystem::path &path) {
            std::vector<std::string> lines;
            for (const auto &issue : load_scenario_report(path).report.issues) {
                lines.push_back(issue.file + ":" + std::to_string(issue.line) + ": " +
                                (issue.severity == Severity::error ? "error: " : "warning: ") + issue.message);
            }
            return lines;
        },
        py::arg("path"), "Issue lines for a scenario directory; empty when it is valid");

    py::class_<Split>(m, "Split")
        .def_readonly("split_index", &Split::split_index)
        .def_readonly("train_instances", &Split::train_instances)
        .def_readonly("test_instances", &Split::test_instances)
        .def_readonly("seed", &Split::seed);
    m.def("bootstrap_splits", &bootstrap_splits, py::arg("scenario"), py::arg("n_splits") = 10, py::arg("seed") = 1);
    m.def("subset_scenario", &subset_scenario, py::arg("scenario"), py::arg("instances"));
    m.def("mask_test_scenario", &mask_test_scenario, py::arg("scenario"), py::arg("test_instances"));

    py::class_<ScheduleEntry>(m, "ScheduleEntry")
        .def(py::init<std::string, long long, std::string, double>(), py::arg("instance_id"), py::arg("run_id"), py::arg("solver"),
             py::arg("time_limit"))
        .def_readonly("instance_id", &ScheduleEntry::instance_id)
        .def_readonly("run_id", &ScheduleEntry::run_id)
        .def_readonly("solver", &ScheduleEntry::solver)
        .def_readonly("time_limit", &ScheduleEntry::time_limit)
        .def(py::self == py::self)
        .def("__repr__", [](const ScheduleEntry &e) {
            return "ScheduleEntry(" + e.instance_id + ", " + std::to_string(e.run_id) + ", " + e.solver + ", " +
                   std::to_string(e.time_limit) + ")";
        });
    m.def("read_schedule", &read_schedule_file, py::arg("path"));
    m.def("write_schedule", &write_schedule_file, py::arg("path"), py::arg("schedule"));
    m.def("schedule_to_string", &to_schedule_string, py::arg("schedule"));

    py::class_<InstanceOutcome>(m, "InstanceOutcome")
        .def_readonly("instance_id", &InstanceOutcome::instance_id)
        .def_readonly("solved", &InstanceOutcome::solved)
        .def_readonly("elapsed", &InstanceOutcome::elapsed)
        .def_readonly("solver_used", &InstanceOutcome::solver_used)
        .def_readonly("par10", &InstanceOutcome::par10)
        .def_readonly("mcp", &InstanceOutcome::mcp)
        .def_property_readonly("stage", [](const InstanceOutcome &o) { return std::string(to_string(o.stage)); });

    m.def(
        "simulate",
        [](const Scenario &truth, const Schedule &schedule, const std::vector<std::string> &test_instances, const std::string &system_name,
           std::optional<std::string> presolver, double presolver_seconds, std::optional<std::set<std::string>> features,
           bool compute_features) {
            SystemManifest manifest{ system_name, std::nullopt, std::move(features), compute_features };
            if (presolver) {
                manifest.presolver = Presolver{ *presolver, presolver_seconds };
            }
            return simulate_submission(truth, manifest, schedule, test_instances);
        },
        py::arg("truth"), py::arg("schedule"), py::arg("test_instances"), py::arg("system_name") = "system",
        py::arg("presolver") = py::none(), py::arg("presolver_seconds") = 0.0, py::arg("features") = py::none(),
        py::arg("compute_features") = true, "Replays a schedule against the true runtimes of the test instances");

    py::class_<MeasureTriple>(m, "MeasureTriple")
        .def_readonly("par10", &MeasureTriple::mean_par10)
        .def_readonly("mcp", &MeasureTriple::mean_mcp)
        .def_readonly("solved", &MeasureTriple::mean_solved);
    m.def("summarize", &summarize, py::arg("outcomes"));
    m.def("single_best", &single_best, py::arg("scenario"));
    m.def(
        "normalized_scores",
        [](const Scenario &truth, const std::vector<InstanceOutcome> &outcomes, const std::vector<std::string> &test_instances,
           std::optional<std::string> sb_algorithm) {
            const auto ctx = make_normalization(truth, sb_algorithm ? *sb_algorithm : single_best(truth), test_instances);
            const MeasureTriple raw = summarize(outcomes);
            py::dict out;
            for (const Measure measure : all_measures) {
                out[py::str(std::string(to_string(measure)))] = normalize(raw.get(measure), ctx, measure);
            }
            return out;
        },
        py::arg("truth"), py::arg("outcomes"), py::arg("test_instances"), py::arg("sb_algorithm") = py::none(),
        "Gap-closed scores per measure: 0 is the virtual best, 1 the single best");

    m.def(
        "reference_schedules",
        [](const Scenario &truth, const std::vector<std::string> &instances, std::optional<std::string> sb_algorithm) {
            auto refs = reference_submissions(truth, instances, sb_algorithm ? *sb_algorithm : single_best(truth));
            return py::make_tuple(refs.sb, refs.vbs);
        },
        py::arg("truth"), py::arg("instances"), py::arg("sb_algorithm") = py::none(), "(single best, virtual best) schedules");
    m.def(
        "select",
        [](const Scenario &train, const Scenario &test, const std::string &selector, std::size_t k) {
            if (selector == "regr") {
                return run_regr_selector(train, test, knn_learner(k)).schedule;
            }
            if (selector == "regr_pairs") {
                return run_pairs_selector(train, test, knn_learner(k)).schedule;
            }
            throw UsageError{ "selector must be 'regr' or 'regr_pairs'" };
        },
        py::arg("train"), py::arg("test"), py::arg("selector") = "regr", py::arg("k") = 3);

    m.def(
        "rankings",
        [](const std::filesystem::path &scores, std::size_t resamples, double confidence, std::uint64_t seed) {
            const ScoreTable table = read_scores(scores);
            const RankReport report = compute_rankings(table, RankOptions{ resamples, confidence, seed, false });
            py::dict out;
            out["mean"] = ranking_rows(report.mean);
            out["median"] = ranking_rows(report.median);
            out["bootstrap"] = ranking_rows(report.bootstrap);
            out["spearman"] = ranking_rows(report.spearman);
            for (std::size_t k = 0; k < report.per_measure.size(); ++k) {
                out[py::str(std::string(to_string(all_measures[k])))] = ranking_rows(report.per_measure[k]);
            }
            return out;
        },
        py::arg("scores"), py::arg("resamples") = 1000, py::arg("confidence") = 0.95, py::arg("seed") = 1);

    m.def(
        "split",
        [](std::vector<std::filesystem::path> scenarios, std::vector<std::string> systems, std::size_t splits, std::uint64_t seed,
           std::filesystem::path out) {
            RunConfig cfg = make_config(std::move(scenarios), std::move(systems), splits, seed, 1000, 0.95, std::move(out), "full", false, 0);
            py::gil_scoped_release release;
            return cmd_split(cfg).size();
        },
        py::arg("scenarios"), py::arg("systems") = std::vector<std::string>{}, py::arg("splits") = 10, py::arg("seed") = 1,
        py::arg("out") = "out", "Writes split directories; returns the number written");
    m.def(
        "evaluate",
        [](std::vector<std::filesystem::path> scenarios, std::vector<std::string> systems, std::size_t splits, std::filesystem::path out,
           const std::string &sb_scope, std::size_t threads) {
            RunConfig cfg = make_config(std::move(scenarios), std::move(systems), splits, 1, 1000, 0.95, std::move(out), sb_scope, false, threads);
            EvaluationResult result;
            {
                py::gil_scoped_release release;
                result = cmd_evaluate(cfg);
            }
            return result.units.size();
        },
        py::arg("scenarios"), py::arg("systems"), py::arg("splits") = 10, py::arg("out") = "out", py::arg("sb_scope") = "full",
        py::arg("threads") = 0, "Evaluates systems on existing splits; returns the number of evaluation units");
    m.def(
        "rank",
        [](const std::filesystem::path &scores, std::filesystem::path out, std::size_t resamples, double confidence, std::uint64_t seed,
           bool plots) {
            RunConfig cfg = make_config({}, {}, 1, seed, resamples, confidence, std::move(out), "full", plots, 0);
            std::vector<std::string> files;
            for (const auto &f : cmd_rank(cfg, scores).files) {
                files.push_back(f.string());
            }
            return files;
        },
        py::arg("scores"), py::arg("out") = "out", py::arg("resamples") = 1000, py::arg("confidence") = 0.95, py::arg("seed") = 1,
        py::arg("plots") = false, "Writes the report bundle; returns the written file paths");
}
