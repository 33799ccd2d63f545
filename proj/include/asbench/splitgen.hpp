#pragma once

#include "asbench/manifest.hpp"
#include "asbench/scenario.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace asbench {

struct Split {
    std::size_t split_index{ 1 };  // 1-based
    std::vector<std::string> train_instances;  // in-bag, first-draw order
    std::vector<std::string> test_instances;   // out-of-bag, scenario order
    std::uint64_t seed{ 0 };

    friend bool operator==(const Split &, const Split &) = default;
};

/**
 * Draws `n_splits` bootstrap samples of the scenario's instances. Each split
 * k uses its own generator, make_stream(seed, k), and draws |instances|
 * indices uniformly with replacement; the distinct drawn instances form the
 * training set and the never-drawn ones the test set.
 *
 * A draw that leaves no out-of-bag instance is repeated with the next
 * generator output, so every test set is nonempty.
 */
[[nodiscard]] std::vector<Split> bootstrap_splits(const Scenario &s, std::size_t n_splits, std::uint64_t seed);

/// Restriction of `s` to `instances` (in the given order) with all ground truth kept.
[[nodiscard]] Scenario subset_scenario(const Scenario &s, const std::vector<std::string> &instances);

/// Test-side view: only `test` instances, every run set to runtime 0 / ok.
[[nodiscard]] Scenario mask_test_scenario(const Scenario &s, const std::vector<std::string> &test);

enum class FoldAssignment { round_robin, blocks };

/// Fold 1..k per instance, by position in `instances`.
[[nodiscard]] std::vector<std::size_t> emit_cv_folds(const std::vector<std::string> &instances, std::size_t k,
                                                     FoldAssignment mode = FoldAssignment::round_robin);

void write_cv_file(const std::filesystem::path &path, const std::vector<std::string> &instances, const std::vector<std::size_t> &folds);

/// Drops presolver-solved instances (runstatus ok and runtime <= budget) and,
/// for a feature subset, all other feature values and unretained steps.
[[nodiscard]] Scenario filter_train_for_system(const Scenario &train, const SystemManifest &m);

/// Applies only the feature-subset part of filter_train_for_system (test side).
[[nodiscard]] Scenario filter_features_for_system(const Scenario &s, const SystemManifest &m);

struct SplitLayout {
    std::filesystem::path train_dir;
    std::filesystem::path test_dir;
};

/**
 * Writes a split as `<dir>/train` and `<dir>/test`, each a complete scenario
 * directory with its own cv.arff. When a manifest is given the training side
 * is filtered by filter_train_for_system and the test side by
 * filter_features_for_system before masking.
 */
SplitLayout write_split(const std::filesystem::path &dir, const Scenario &s, const Split &split, std::size_t folds,
                        FoldAssignment mode, const SystemManifest *manifest = nullptr);

}  // namespace asbench
