#pragma once

#include "asbench/manifest.hpp"
#include "asbench/metrics.hpp"
#include "asbench/report.hpp"
#include "asbench/scenario.hpp"
#include "asbench/simulator.hpp"
#include "asbench/splitgen.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace asbench {

/// Which instances determine the single best algorithm used for normalization.
enum class SbScope { full, train };

struct RunConfig {
    std::vector<std::filesystem::path> scenarios;
    std::vector<std::string> systems;  // manifest paths or builtin:<name>
    std::size_t n_splits{ 10 };
    std::uint64_t seed{ 1 };
    std::size_t resamples{ 1000 };
    double confidence{ 0.95 };
    std::filesystem::path out_dir{ "out" };
    FoldAssignment cv_assignment{ FoldAssignment::round_robin };
    std::size_t folds{ 10 };
    SbScope sb_scope{ SbScope::full };
    bool plots{ false };
    std::size_t threads{ 0 };  // 0: hardware concurrency
};

/// Throws UsageError on an inconsistent configuration.
void validate_config(const RunConfig &config, bool need_systems);

struct LoadedSystem {
    std::string label;  // as given on the command line
    SystemSpec spec;
};

/// Resolves builtin names and reads manifest files; rejects duplicate system names.
[[nodiscard]] std::vector<LoadedSystem> load_systems(const std::vector<std::string> &systems);

// Output layout under out_dir:
//   splits/<scenario>/split_<k>/{train,test}
//   splits/<scenario>/split_<k>/systems/<system>/{train,test}   (systems with a presolver or feature subset)
//   splits/index.csv
//   schedules/<system>/<scenario>/split_<k>.csv                 (generated by built-in systems)
//   outcomes/<system>/<scenario>/split_<k>.csv
//   scores.csv, timings.csv
//   report/...
[[nodiscard]] std::filesystem::path split_dir(const std::filesystem::path &out_dir, const std::string &scenario, std::size_t k);
[[nodiscard]] std::filesystem::path system_split_dir(const std::filesystem::path &out_dir, const std::string &scenario, std::size_t k,
                                                     const std::string &system);

struct SplitArtifact {
    std::string scenario;
    std::size_t split{ 0 };
    std::string system;  // empty for the shared split
    SplitLayout layout;
};

inline constexpr std::string_view split_index_header = "scenario,split,system,train_dir,test_dir";

/// Generates every split of every scenario and writes splits/index.csv.
std::vector<SplitArtifact> cmd_split(const RunConfig &config);

struct EvaluationUnit {
    std::string system;
    std::string scenario;
    std::size_t split{ 0 };
    MeasureTriple raw;
    NormalizationContext normalization;
    std::vector<InstanceOutcome> outcomes;
    double seconds{ 0.0 };  // train + prediction + simulation wall time
};

struct EvaluationResult {
    ScoreTable scores;
    std::vector<EvaluationUnit> units;  // sorted by (system, scenario, split)
};

inline constexpr std::string_view timings_header = "system,scenario,split,seconds";

/// Simulates every (system, scenario, split) on existing splits and writes
/// scores.csv, timings.csv and per-unit outcome files.
EvaluationResult cmd_evaluate(const RunConfig &config);

/// Reads a scores file and writes the ranking bundle to <out_dir>/report.
RankReport cmd_rank(const RunConfig &config, const std::filesystem::path &scores_file);

}  // namespace asbench
