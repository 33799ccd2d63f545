#include "asbench/splitgen.hpp"

#include "asbench/arff.hpp"
#include "asbench/error.hpp"
#include "asbench/rng.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace asbench {

std::vector<Split> bootstrap_splits(const Scenario &s, std::size_t n_splits, std::uint64_t seed) {
    const std::size_t n = s.instances.size();
    if (n < 2) {
        throw DataError{ fmt::format("scenario '{}' needs at least 2 instances for bootstrap splits, has {}", s.scenario_id, n) };
    }
    if (n_splits < 1) {
        throw UsageError{ "number of splits must be >= 1" };
    }
    std::vector<Split> splits;
    splits.reserve(n_splits);
    for (std::size_t k = 1; k <= n_splits; ++k) {
        auto gen = make_stream(seed, k);
        std::vector<bool> drawn(n, false);
        std::vector<std::size_t> order;
        do {
            std::fill(drawn.begin(), drawn.end(), false);
            order.clear();
            for (std::size_t d = 0; d < n; ++d) {
                const auto idx = static_cast<std::size_t>(uniform_index(gen, n));
                if (!drawn[idx]) {
                    drawn[idx] = true;
                    order.push_back(idx);
                }
            }
        } while (order.size() == n);

        Split split;
        split.split_index = k;
        split.seed = seed;
        for (const std::size_t idx : order) {
            split.train_instances.push_back(s.instances[idx]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!drawn[i]) {
                split.test_instances.push_back(s.instances[i]);
            }
        }
        splits.push_back(std::move(split));
    }
    return splits;
}

Scenario subset_scenario(const Scenario &s, const std::vector<std::string> &instances) {
    Scenario out;
    out.scenario_id = s.scenario_id;
    out.cutoff = s.cutoff;
    out.performance_measure = s.performance_measure;
    out.algorithms = s.algorithms;
    out.features = s.features;
    out.feature_steps = s.feature_steps;
    out.instances = instances;

    const std::size_t n = instances.size();
    out.runs = Grid<std::optional<RunRecord>>(n, s.algorithms.size());
    out.feature_values = Grid<std::optional<double>>(n, s.features.size());
    out.feature_costs = Grid<std::optional<double>>(n, s.feature_steps.size());
    out.feature_runstatus = Grid<FeatureStatus>(n, s.feature_steps.size());
    for (std::size_t r = 0; r < n; ++r) {
        const auto src = s.instance_index(instances[r]);
        if (!src) {
            throw DataError{ fmt::format("instance '{}' is not part of scenario '{}'", instances[r], s.scenario_id) };
        }
        for (std::size_t a = 0; a < s.algorithms.size(); ++a) {
            out.runs(r, a) = s.runs(*src, a);
        }
        for (std::size_t f = 0; f < s.features.size(); ++f) {
            out.feature_values(r, f) = s.feature_values(*src, f);
        }
        for (std::size_t k = 0; k < s.feature_steps.size(); ++k) {
            out.feature_costs(r, k) = s.feature_costs(*src, k);
            out.feature_runstatus(r, k) = s.feature_runstatus(*src, k);
        }
    }
    out.rebuild_index();
    return out;
}

Scenario mask_test_scenario(const Scenario &s, const std::vector<std::string> &test) {
    if (test.empty()) {
        throw DataError{ fmt::format("test scenario for '{}' must contain at least one instance", s.scenario_id) };
    }
    Scenario out = subset_scenario(s, test);
    for (std::size_t i = 0; i < out.instances.size(); ++i) {
        for (std::size_t a = 0; a < out.algorithms.size(); ++a) {
            out.runs(i, a) = RunRecord{ 0.0, RunStatus::ok };
        }
    }
    return out;
}

std::vector<std::size_t> emit_cv_folds(const std::vector<std::string> &instances, std::size_t k, FoldAssignment mode) {
    if (k < 1) {
        throw UsageError{ "number of folds must be >= 1" };
    }
    if (instances.empty()) {
        throw DataError{ "cannot assign folds to an empty instance list" };
    }
    const std::size_t n = instances.size();
    std::vector<std::size_t> folds(n);
    for (std::size_t p = 0; p < n; ++p) {
        folds[p] = mode == FoldAssignment::round_robin ? (p % k) + 1 : (p * k) / n + 1;
    }
    return folds;
}

void write_cv_file(const std::filesystem::path &path, const std::vector<std::string> &instances, const std::vector<std::size_t> &folds) {
    ArffTable cv;
    cv.relation_name = "CV";
    cv.attributes = { { "instance_id", AttributeKind::string, {} },
                      { "repetition", AttributeKind::numeric, {} },
                      { "fold", AttributeKind::numeric, {} } };
    for (std::size_t i = 0; i < instances.size(); ++i) {
        cv.rows.push_back({ instances[i], 1.0, static_cast<double>(folds.at(i)) });
    }
    write_arff_file(path, cv);
}

Scenario filter_features_for_system(const Scenario &s, const SystemManifest &m) {
    check_manifest_binding(m, s);
    if (!m.feature_subset) {
        return s;
    }
    const auto keep_steps = retained_steps(m, s);

    Scenario out;
    out.scenario_id = s.scenario_id;
    out.cutoff = s.cutoff;
    out.performance_measure = s.performance_measure;
    out.algorithms = s.algorithms;
    out.instances = s.instances;
    out.runs = s.runs;

    std::vector<std::size_t> keep_features;
    for (std::size_t f = 0; f < s.features.size(); ++f) {
        if (m.feature_subset->count(s.features[f])) {
            keep_features.push_back(f);
            out.features.push_back(s.features[f]);
        }
    }
    for (const std::size_t k : keep_steps) {
        FeatureStep step = s.feature_steps[k];
        std::erase_if(step.provides, [&](const std::string &f) { return !m.feature_subset->count(f); });
        out.feature_steps.push_back(std::move(step));
    }
    const std::size_t n = s.instances.size();
    out.feature_values = Grid<std::optional<double>>(n, keep_features.size());
    out.feature_costs = Grid<std::optional<double>>(n, keep_steps.size());
    out.feature_runstatus = Grid<FeatureStatus>(n, keep_steps.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t f = 0; f < keep_features.size(); ++f) {
            out.feature_values(i, f) = s.feature_values(i, keep_features[f]);
        }
        for (std::size_t k = 0; k < keep_steps.size(); ++k) {
            out.feature_costs(i, k) = s.feature_costs(i, keep_steps[k]);
            out.feature_runstatus(i, k) = s.feature_runstatus(i, keep_steps[k]);
        }
    }
    out.rebuild_index();
    return out;
}

Scenario filter_train_for_system(const Scenario &train, const SystemManifest &m) {
    check_manifest_binding(m, train);
    Scenario filtered = filter_features_for_system(train, m);
    if (!m.presolver) {
        return filtered;
    }
    const std::size_t pre = *train.algorithm_index(m.presolver->algorithm);
    std::vector<std::string> remaining;
    for (std::size_t i = 0; i < train.instances.size(); ++i) {
        const RunRecord &rec = train.run(i, pre);
        const bool presolved = rec.status == RunStatus::ok && rec.runtime <= m.presolver->seconds;
        if (!presolved) {
            remaining.push_back(train.instances[i]);
        }
    }
    return subset_scenario(filtered, remaining);
}

SplitLayout write_split(const std::filesystem::path &dir, const Scenario &s, const Split &split, std::size_t folds, FoldAssignment mode,
                        const SystemManifest *manifest) {
    Scenario train = subset_scenario(s, split.train_instances);
    Scenario test = mask_test_scenario(s, split.test_instances);
    if (manifest != nullptr) {
        train = filter_train_for_system(train, *manifest);
        test = filter_features_for_system(test, *manifest);
    }
    SplitLayout layout{ dir / "train", dir / "test" };
    write_scenario(layout.train_dir, train);
    write_scenario(layout.test_dir, test);
    if (!train.instances.empty()) {
        // folds follow the order of appearance in the original scenario, not the draw order
        std::vector<std::string> by_appearance = train.instances;
        std::sort(by_appearance.begin(), by_appearance.end(), [&s](const std::string &a, const std::string &b) {
            return *s.instance_index(a) < *s.instance_index(b);
        });
        write_cv_file(layout.train_dir / cv_file, by_appearance, emit_cv_folds(by_appearance, folds, mode));
    }
    write_cv_file(layout.test_dir / cv_file, test.instances, emit_cv_folds(test.instances, folds, mode));
    return layout;
}

}  // namespace asbench
