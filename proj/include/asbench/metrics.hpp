#pragma once

#include "asbench/scenario.hpp"
#include "asbench/simulator.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace asbench {

enum class Measure { par10, mcp, solved };

inline constexpr std::array<Measure, 3> all_measures{ Measure::par10, Measure::mcp, Measure::solved };

[[nodiscard]] std::string_view to_string(Measure m) noexcept;
/// Throws ParseError for anything but "par10", "mcp" or "solved".
[[nodiscard]] Measure parse_measure(std::string_view text);

struct MeasureTriple {
    double mean_par10{ 0.0 };
    double mean_mcp{ 0.0 };
    double mean_solved{ 0.0 };  // fraction of instances solved

    [[nodiscard]] double get(Measure m) const noexcept;

    friend bool operator==(const MeasureTriple &, const MeasureTriple &) = default;
};

/// Arithmetic means over `outcomes`; throws DataError on an empty list.
[[nodiscard]] MeasureTriple summarize(const std::vector<InstanceOutcome> &outcomes);

/// Algorithm with the smallest sum of (runtime if ok, cutoff otherwise); ties by name.
[[nodiscard]] std::string single_best(const Scenario &s);

/// Oracle per-instance selection without presolver or feature cost.
[[nodiscard]] MeasureTriple vbs_triple(const Scenario &s, const std::vector<std::string> &instances);
/// Fixed algorithm `sb_algorithm` on every instance without presolver or feature cost.
[[nodiscard]] MeasureTriple sb_triple(const Scenario &s, std::string_view sb_algorithm, const std::vector<std::string> &instances);

struct NormalizationContext {
    MeasureTriple vbs;
    MeasureTriple sb;
    std::string sb_algorithm;
};

[[nodiscard]] NormalizationContext make_normalization(const Scenario &truth, std::string sb_algorithm,
                                                      const std::vector<std::string> &instances);

/// (value - vbs) / (sb - vbs); 0 when sb == vbs. Not clamped.
[[nodiscard]] double normalize(double value, const NormalizationContext &ctx, Measure m) noexcept;

struct ScoreKey {
    std::string system;
    std::string scenario;
    std::size_t split{ 0 };
    Measure measure{ Measure::par10 };

    friend auto operator<=>(const ScoreKey &, const ScoreKey &) = default;
};

struct ScoreValue {
    double raw{ 0.0 };
    double normalized{ 0.0 };

    friend bool operator==(const ScoreValue &, const ScoreValue &) = default;
};

/// Normalized (and raw) scores keyed by (system, scenario, split, measure).
class ScoreTable {
  public:
    /// Throws DataError if the key is already present.
    void add(ScoreKey key, ScoreValue value);
    /// Adds the three measures of one evaluation.
    void add_evaluation(const std::string &system, const std::string &scenario, std::size_t split, const MeasureTriple &raw,
                        const NormalizationContext &ctx);

    [[nodiscard]] const std::map<ScoreKey, ScoreValue> &entries() const noexcept { return entries_; }
    [[nodiscard]] std::vector<std::string> systems() const;
    [[nodiscard]] std::vector<std::string> scenarios() const;
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

    friend bool operator==(const ScoreTable &, const ScoreTable &) = default;

  private:
    std::map<ScoreKey, ScoreValue> entries_;
};

inline constexpr std::string_view scores_header = "system,scenario,split,measure,raw,normalized";

void write_scores(std::ostream &out, const ScoreTable &table);
[[nodiscard]] ScoreTable parse_scores(std::istream &in, const std::string &source_name = "<scores>");

}  // namespace asbench
