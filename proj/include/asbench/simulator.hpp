#pragma once

#include "asbench/manifest.hpp"
#include "asbench/scenario.hpp"
#include "asbench/schedule.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asbench {

enum class SolvedStage { presolver, features, schedule, none };

[[nodiscard]] std::string_view to_string(SolvedStage stage) noexcept;

struct InstanceOutcome {
    std::string instance_id;
    bool solved{ false };
    double elapsed{ 0.0 };  // total time charged, also kept for unsolved instances
    SolvedStage stage{ SolvedStage::none };
    std::optional<std::string> solver_used;
    double mcp{ 0.0 };
    double par10{ 0.0 };

    friend bool operator==(const InstanceOutcome &, const InstanceOutcome &) = default;
};

/// Fastest successful runtime on instance `inst`, or the cutoff when no algorithm solves it.
[[nodiscard]] double vbs_time(const Scenario &truth, std::size_t inst);

/// Penalized runtime: elapsed when solved, 10 x cutoff otherwise.
[[nodiscard]] double par10_score(bool solved, double elapsed, double cutoff) noexcept;

/**
 * Misclassification penalty of one instance.
 *
 * Feature-stage solves are 0. Other solved instances pay elapsed - vbs_time,
 * unsolved ones cutoff - vbs_time; both clamped at 0.
 */
[[nodiscard]] double misclassification_penalty(bool solved, SolvedStage stage, double elapsed, double vbs, double cutoff) noexcept;

/**
 * Replays one instance: presolver run, feature computation, then the
 * schedule runs in run_id order against the true runtimes of `truth`.
 *
 * `truth` must hold the ground-truth runs, never a masked test scenario.
 * Throws DataError for an unknown instance or solver.
 */
[[nodiscard]] InstanceOutcome simulate_instance(const Scenario &truth, const SystemManifest &m, std::string_view instance,
                                                std::span<const ScheduleEntry> entries);

/// One outcome per test instance, in the order of `test_instances`. Instances
/// absent from the schedule get an empty run list. Schedule rows for instances
/// outside `test_instances` are rejected.
[[nodiscard]] std::vector<InstanceOutcome> simulate_submission(const Scenario &truth, const SystemManifest &m, const Schedule &schedule,
                                                               const std::vector<std::string> &test_instances);

inline constexpr std::string_view outcome_header = "instance_id,solved,elapsed,stage,par10,mcp";

void write_outcomes(std::ostream &out, const std::vector<InstanceOutcome> &outcomes);

}  // namespace asbench
