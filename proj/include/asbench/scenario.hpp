#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asbench {

/// Dense row-major 2-D container.
template <typename T>
class Grid {
  public:
    Grid() = default;
    Grid(std::size_t rows, std::size_t cols, const T &fill = T{}) :
        rows_{ rows }, cols_{ cols }, data_(rows * cols, fill) {}

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    [[nodiscard]] T &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    [[nodiscard]] const T &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend bool operator==(const Grid &, const Grid &) = default;

  private:
    std::size_t rows_{ 0 };
    std::size_t cols_{ 0 };
    std::vector<T> data_;
};

enum class RunStatus { ok, timeout, memout, crash, other };
enum class FeatureStatus { ok, presolved, timeout, crash, other };

[[nodiscard]] std::string_view to_string(RunStatus status) noexcept;
[[nodiscard]] std::string_view to_string(FeatureStatus status) noexcept;
/// Unknown spellings map to RunStatus::other ("not_applicable" included).
[[nodiscard]] RunStatus parse_run_status(std::string_view text) noexcept;
/// Unknown spellings (memout, unknown, ...) map to FeatureStatus::other.
[[nodiscard]] FeatureStatus parse_feature_status(std::string_view text) noexcept;

struct RunRecord {
    double runtime{ 0.0 };
    RunStatus status{ RunStatus::ok };

    friend bool operator==(const RunRecord &, const RunRecord &) = default;
};

struct FeatureStep {
    std::string name;
    std::vector<std::string> provides;
    std::vector<std::string> requires_steps;

    friend bool operator==(const FeatureStep &, const FeatureStep &) = default;
};

/**
 * An algorithm selection scenario in ASlib layout.
 *
 * The value may hold data violating the scenario invariants (so that
 * validate_scenario can report them); everything returned by load_scenario
 * or by the transformations in splitgen is valid. Call rebuild_index()
 * after mutating any of the id lists.
 */
struct Scenario {
    std::string scenario_id;
    double cutoff{ 0.0 };
    std::string performance_measure{ "runtime" };

    std::vector<std::string> algorithms;
    std::vector<std::string> instances;  // order of appearance in the source
    std::vector<std::string> features;
    std::vector<FeatureStep> feature_steps;

    Grid<std::optional<RunRecord>> runs;          // instances x algorithms
    Grid<std::optional<double>> feature_values;   // instances x features
    Grid<std::optional<double>> feature_costs;    // instances x feature_steps
    Grid<FeatureStatus> feature_runstatus;        // instances x feature_steps

    [[nodiscard]] std::optional<std::size_t> instance_index(std::string_view id) const;
    [[nodiscard]] std::optional<std::size_t> algorithm_index(std::string_view id) const;
    [[nodiscard]] std::optional<std::size_t> feature_index(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> step_index(std::string_view name) const;

    /// Run of algorithm `algo` on instance `inst`; throws DataError if the record is absent.
    [[nodiscard]] const RunRecord &run(std::size_t inst, std::size_t algo) const;

    void rebuild_index();

    friend bool operator==(const Scenario &a, const Scenario &b);

  private:
    using Index = std::map<std::string, std::size_t, std::less<>>;
    Index instance_idx_;
    Index algorithm_idx_;
    Index feature_idx_;
    Index step_idx_;
};

enum class Severity { error, warning };

struct ValidationIssue {
    Severity severity{ Severity::error };
    std::string file;   // source file, or the logical table for in-memory checks
    std::size_t line{ 0 };
    std::string message;

    friend bool operator==(const ValidationIssue &, const ValidationIssue &) = default;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    [[nodiscard]] std::size_t error_count() const noexcept;
    [[nodiscard]] bool ok() const noexcept { return error_count() == 0; }
    /// One "file:line: severity: message" line per issue.
    [[nodiscard]] std::string to_string() const;
};

/// Lists every invariant violation, ordered by (file, line).
[[nodiscard]] ValidationReport validate_scenario(const Scenario &s);

struct LoadResult {
    Scenario scenario;
    ValidationReport report;
};

/// Loads and validates without throwing on invariant violations.
[[nodiscard]] LoadResult load_scenario_report(const std::filesystem::path &dir);

/// Loads a scenario directory; throws DataError when mandatory files are missing
/// or the loaded data fails validation.
[[nodiscard]] Scenario load_scenario(const std::filesystem::path &dir);

inline constexpr std::string_view description_file = "description.txt";
inline constexpr std::string_view algorithm_runs_file = "algorithm_runs.arff";
inline constexpr std::string_view feature_values_file = "feature_values.arff";
inline constexpr std::string_view feature_costs_file = "feature_costs.arff";
inline constexpr std::string_view feature_runstatus_file = "feature_runstatus.arff";
inline constexpr std::string_view cv_file = "cv.arff";

/// Writes `s` as an ASlib directory readable by load_scenario. Output bytes
/// depend only on the scenario value.
void write_scenario(const std::filesystem::path &dir, const Scenario &s);

}  // namespace asbench
