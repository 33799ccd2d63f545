#include "asbench/pipeline.hpp"

#include "asbench/error.hpp"
#include "asbench/schedule.hpp"
#include "asbench/selectors.hpp"
#include "csv.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <thread>

namespace asbench {

namespace fs = std::filesystem;

void validate_config(const RunConfig &config, bool need_systems) {
    if (config.scenarios.empty()) {
        throw UsageError{ "at least one scenario is required (--scenarios)" };
    }
    if (need_systems && config.systems.empty()) {
        throw UsageError{ "at least one system is required (--systems)" };
    }
    if (config.n_splits < 1) {
        throw UsageError{ "--splits must be at least 1" };
    }
    if (config.folds < 1) {
        throw UsageError{ "--folds must be at least 1" };
    }
    if (config.resamples < 1) {
        throw UsageError{ "--resamples must be at least 1" };
    }
    if (!(config.confidence > 0.0 && config.confidence < 1.0)) {
        throw UsageError{ fmt::format("--confidence must lie in (0, 1), got {}", config.confidence) };
    }
    if (config.out_dir.empty()) {
        throw UsageError{ "--out must name a directory" };
    }
}

std::vector<LoadedSystem> load_systems(const std::vector<std::string> &systems) {
    std::vector<LoadedSystem> out;
    std::set<std::string> names;
    for (const auto &label : systems) {
        LoadedSystem sys{ label, {} };
        if (auto builtin = builtin_system(label)) {
            sys.spec = std::move(*builtin);
        } else {
            sys.spec = read_system_spec(label);
        }
        if (!names.insert(sys.spec.defaults.system_name).second) {
            throw UsageError{ fmt::format("system name '{}' is used by more than one system", sys.spec.defaults.system_name) };
        }
        out.push_back(std::move(sys));
    }
    return out;
}

namespace {

std::string path_safe(std::string_view name) {
    std::string out(name);
    std::replace_if(out.begin(), out.end(), [](char c) { return c == '/' || c == '\\' || c == ':'; }, '_');
    return out;
}

fs::path ensure_parent(const fs::path &file) {
    fs::create_directories(file.parent_path());
    return file;
}

std::ofstream open_out(const fs::path &file) {
    std::ofstream out{ ensure_parent(file), std::ios::binary };
    if (!out) {
        throw DataError{ fmt::format("cannot write '{}'", file.string()) };
    }
    return out;
}

bool needs_own_split(const SystemManifest &m) {
    return m.presolver.has_value() || m.feature_subset.has_value();
}

std::vector<Scenario> load_all(const std::vector<fs::path> &dirs) {
    std::vector<Scenario> out;
    std::set<std::string> ids;
    for (const auto &dir : dirs) {
        Scenario s = load_scenario(dir);
        if (!ids.insert(s.scenario_id).second) {
            throw UsageError{ fmt::format("scenario '{}' is given more than once", s.scenario_id) };
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

fs::path split_dir(const fs::path &out_dir, const std::string &scenario, std::size_t k) {
    return out_dir / "splits" / path_safe(scenario) / fmt::format("split_{}", k);
}

fs::path system_split_dir(const fs::path &out_dir, const std::string &scenario, std::size_t k, const std::string &system) {
    return split_dir(out_dir, scenario, k) / "systems" / path_safe(system);
}

std::vector<SplitArtifact> cmd_split(const RunConfig &config) {
    validate_config(config, false);
    const auto systems = load_systems(config.systems);
    const auto scenarios = load_all(config.scenarios);

    std::vector<SplitArtifact> artifacts;
    for (const Scenario &s : scenarios) {
        for (const Split &split : bootstrap_splits(s, config.n_splits, config.seed)) {
            const fs::path dir = split_dir(config.out_dir, s.scenario_id, split.split_index);
            fs::remove_all(dir);
            artifacts.push_back({ s.scenario_id, split.split_index, "", write_split(dir, s, split, config.folds, config.cv_assignment) });
            for (const auto &sys : systems) {
                const SystemManifest m = sys.spec.manifest_for(s.scenario_id);
                if (!needs_own_split(m)) {
                    continue;
                }
                check_manifest_binding(m, s);
                const fs::path sdir = system_split_dir(config.out_dir, s.scenario_id, split.split_index, m.system_name);
                artifacts.push_back(
                    { s.scenario_id, split.split_index, m.system_name, write_split(sdir, s, split, config.folds, config.cv_assignment, &m) });
            }
        }
    }

    auto index = open_out(config.out_dir / "splits" / "index.csv");
    index << split_index_header << '\n';
    for (const auto &a : artifacts) {
        index << detail::csv_field(a.scenario) << ',' << a.split << ',' << detail::csv_field(a.system) << ','
              << detail::csv_field(a.layout.train_dir.generic_string()) << ',' << detail::csv_field(a.layout.test_dir.generic_string())
              << '\n';
    }
    return artifacts;
}

namespace {

struct SplitView {
    std::vector<std::string> train_instances;
    std::vector<std::string> test_instances;
};

struct UnitTask {
    const LoadedSystem *system;
    const Scenario *truth;
    std::size_t split;
    const SplitView *view;
};

Scenario load_side(const RunConfig &config, const Scenario &truth, std::size_t k, const SystemManifest &m, const char *side) {
    fs::path dir = split_dir(config.out_dir, truth.scenario_id, k);
    if (needs_own_split(m)) {
        const fs::path own = system_split_dir(config.out_dir, truth.scenario_id, k, m.system_name);
        if (fs::exists(own)) {
            dir = own;
        }
    }
    return load_scenario(dir / side);
}

EvaluationUnit evaluate_unit(const RunConfig &config, const UnitTask &task) {
    const auto start = std::chrono::steady_clock::now();
    const Scenario &truth = *task.truth;
    const SystemSpec &spec = task.system->spec;
    SystemManifest manifest = spec.manifest_for(truth.scenario_id);

    const std::string sb_algorithm =
        config.sb_scope == SbScope::full ? single_best(truth) : single_best(subset_scenario(truth, task.view->train_instances));

    Schedule schedule;
    const fs::path generated = config.out_dir / "schedules" / path_safe(manifest.system_name) / path_safe(truth.scenario_id) /
                               fmt::format("split_{}.csv", task.split);
    switch (spec.source) {
        case ScheduleSource::files: {
            const fs::path file = spec.schedules_dir / truth.scenario_id / fmt::format("split_{}.csv", task.split);
            if (!fs::exists(file)) {
                throw DataError{ fmt::format("missing schedule for system '{}', scenario '{}', split {}: '{}'", manifest.system_name,
                                             truth.scenario_id, task.split, file.string()) };
            }
            schedule = read_schedule_file(file);
            break;
        }
        case ScheduleSource::selector_regr:
        case ScheduleSource::selector_pairs: {
            const Scenario train = load_side(config, truth, task.split, manifest, "train");
            const Scenario test = load_side(config, truth, task.split, manifest, "test");
            const auto learner = knn_learner(spec.knn_k);
            SelectorOutput out = spec.source == ScheduleSource::selector_regr ? run_regr_selector(train, test, learner, manifest.system_name)
                                                                              : run_pairs_selector(train, test, learner, manifest.system_name);
            out.manifest.presolver = manifest.presolver;
            manifest = out.manifest;
            schedule = std::move(out.schedule);
            write_schedule_file(ensure_parent(generated), schedule);
            open_out(generated.parent_path() / fmt::format("split_{}.manifest.json", task.split)) << manifest_to_json(manifest);
            break;
        }
        case ScheduleSource::reference_sb:
        case ScheduleSource::reference_vbs: {
            const auto refs = reference_submissions(truth, task.view->test_instances, sb_algorithm);
            schedule = spec.source == ScheduleSource::reference_sb ? refs.sb : refs.vbs;
            manifest.presolver.reset();
            manifest.compute_features = false;
            write_schedule_file(ensure_parent(generated), schedule);
            break;
        }
    }

    check_manifest_binding(manifest, truth);
    EvaluationUnit unit;
    unit.system = manifest.system_name;
    unit.scenario = truth.scenario_id;
    unit.split = task.split;
    unit.outcomes = simulate_submission(truth, manifest, schedule, task.view->test_instances);
    unit.raw = summarize(unit.outcomes);
    unit.normalization = make_normalization(truth, sb_algorithm, task.view->test_instances);
    unit.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return unit;
}

template <class Fn>
void run_pool(std::size_t n, std::size_t threads, Fn &&fn) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{ 0 };
    const auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, n);
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace

EvaluationResult cmd_evaluate(const RunConfig &config) {
    validate_config(config, true);
    const auto systems = load_systems(config.systems);
    const auto scenarios = load_all(config.scenarios);

    // Only the instance lists are taken from the split directories; every
    // runtime used for scoring comes from the original scenarios above.
    std::vector<std::vector<SplitView>> views(scenarios.size());
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        for (std::size_t k = 1; k <= config.n_splits; ++k) {
            const fs::path dir = split_dir(config.out_dir, scenarios[s].scenario_id, k);
            if (!fs::exists(dir / "test")) {
                throw DataError{ fmt::format("split {} of scenario '{}' not found under '{}'; run the split command first", k,
                                             scenarios[s].scenario_id, dir.string()) };
            }
            views[s].push_back({ load_scenario(dir / "train").instances, load_scenario(dir / "test").instances });
        }
    }

    std::vector<UnitTask> tasks;
    for (const auto &sys : systems) {
        for (std::size_t s = 0; s < scenarios.size(); ++s) {
            for (std::size_t k = 1; k <= config.n_splits; ++k) {
                tasks.push_back({ &sys, &scenarios[s], k, &views[s][k - 1] });
            }
        }
    }

    std::vector<EvaluationUnit> units(tasks.size());
    run_pool(tasks.size(), config.threads, [&](std::size_t i) {
        const UnitTask &t = tasks[i];
        try {
            units[i] = evaluate_unit(config, t);
        } catch (const DataError &e) {
            throw DataError{ fmt::format("system '{}', scenario '{}', split {}: {}", t.system->spec.defaults.system_name,
                                         t.truth->scenario_id, t.split, e.what()) };
        }
    });

    std::sort(units.begin(), units.end(), [](const EvaluationUnit &a, const EvaluationUnit &b) {
        return std::tie(a.system, a.scenario, a.split) < std::tie(b.system, b.scenario, b.split);
    });

    EvaluationResult result;
    for (const auto &u : units) {
        result.scores.add_evaluation(u.system, u.scenario, u.split, u.raw, u.normalization);
        auto out = open_out(config.out_dir / "outcomes" / path_safe(u.system) / path_safe(u.scenario) / fmt::format("split_{}.csv", u.split));
        write_outcomes(out, u.outcomes);
    }
    {
        auto out = open_out(config.out_dir / "scores.csv");
        write_scores(out, result.scores);
    }
    auto timings = open_out(config.out_dir / "timings.csv");
    timings << timings_header << '\n';
    for (const auto &u : units) {
        timings << detail::csv_field(u.system) << ',' << detail::csv_field(u.scenario) << ',' << u.split << ','
                << fmt::format("{:.6f}", u.seconds) << '\n';
    }
    result.units = std::move(units);
    return result;
}

RankReport cmd_rank(const RunConfig &config, const fs::path &scores_file) {
    if (config.resamples < 1) {
        throw UsageError{ "--resamples must be at least 1" };
    }
    if (!(config.confidence > 0.0 && config.confidence < 1.0)) {
        throw UsageError{ fmt::format("--confidence must lie in (0, 1), got {}", config.confidence) };
    }
    std::ifstream in{ scores_file, std::ios::binary };
    if (!in) {
        throw DataError{ fmt::format("cannot read scores file '{}'", scores_file.string()) };
    }
    const ScoreTable table = parse_scores(in, scores_file.string());
    if (table.empty()) {
        throw DataError{ fmt::format("scores file '{}' holds no scores", scores_file.string()) };
    }
    return write_report_bundle(config.out_dir / "report", table, RankOptions{ config.resamples, config.confidence, config.seed, config.plots });
}

}  // namespace asbench
