#pragma once

#include "asbench/scenario.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace asbench {

struct Presolver {
    std::string algorithm;
    double seconds{ 0.0 };

    friend bool operator==(const Presolver &, const Presolver &) = default;
};

/// Where a system's schedules come from.
enum class ScheduleSource {
    files,             ///< <schedules>/<scenario>/split_<k>.csv
    selector_regr,     ///< built-in per-algorithm regression selector
    selector_pairs,    ///< built-in pairwise regression selector
    reference_sb,      ///< single best reference submission
    reference_vbs,     ///< virtual best reference submission
};

[[nodiscard]] std::string_view to_string(ScheduleSource source) noexcept;

/**
 * A submitted system's configuration for one scenario.
 *
 * `compute_features == false` means the system never pays for feature
 * computation (the SB/VBS reference submissions); otherwise every feature
 * step retained by `feature_subset` (all steps when unset) is charged.
 */
struct SystemManifest {
    std::string system_name;
    std::optional<Presolver> presolver;
    std::optional<std::set<std::string>> feature_subset;
    bool compute_features{ true };

    friend bool operator==(const SystemManifest &, const SystemManifest &) = default;
};

/// Throws DataError unless the presolver algorithm and every listed feature exist in `s`.
void check_manifest_binding(const SystemManifest &m, const Scenario &s);

/// Indices of the feature steps a manifest pays for: steps providing at least
/// one selected feature plus their transitive `requires`, in scenario order.
[[nodiscard]] std::vector<std::size_t> retained_steps(const SystemManifest &m, const Scenario &s);

/**
 * A system description file (JSON):
 *
 *   {
 *     "system_name": "mysys",
 *     "presolver": { "algorithm": "minisat", "seconds": 30 },   // optional
 *     "features": ["f1", "f2"],                                  // optional
 *     "schedules": "schedules/",                                 // or "selector": "regr" | "regr_pairs" | "sb" | "vbs"
 *     "knn_k": 3,                                                // selectors only
 *     "scenarios": { "SAT11-HAND": { "presolver": ..., "features": [...] } }  // optional per-scenario overrides
 *   }
 *
 * Relative "schedules" paths are resolved against the file's directory; without
 * "schedules" or "selector" the schedules are looked up next to the file.
 */
struct SystemSpec {
    SystemManifest defaults;
    std::map<std::string, SystemManifest, std::less<>> per_scenario;
    ScheduleSource source{ ScheduleSource::files };
    std::filesystem::path schedules_dir;
    std::size_t knn_k{ 3 };

    [[nodiscard]] SystemManifest manifest_for(std::string_view scenario_id) const;
};

[[nodiscard]] SystemSpec parse_system_spec(std::string_view json_text, const std::filesystem::path &base_dir = {},
                                           const std::string &source_name = "<manifest>");
[[nodiscard]] SystemSpec read_system_spec(const std::filesystem::path &path);

/// Built-in systems addressed as "builtin:regr", "builtin:regr_pairs", "builtin:sb", "builtin:vbs".
/// Returns nullopt without the "builtin:" prefix; throws UsageError for an unknown name after it.
[[nodiscard]] std::optional<SystemSpec> builtin_system(std::string_view name);

/// Serializes a manifest in the same JSON syntax (used for selector output manifests).
[[nodiscard]] std::string manifest_to_json(const SystemManifest &m);

}  // namespace asbench
