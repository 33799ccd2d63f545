#pragma once

#include "asbench/metrics.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asbench {

enum class RankingMethod { mean, median, bootstrap, spearman, per_measure, per_scenario };

[[nodiscard]] std::string_view to_string(RankingMethod m) noexcept;

struct RankedEntry {
    std::size_t rank{ 0 };  // 1-based position
    std::string system;
    double score{ 0.0 };
    std::optional<double> ci_lower;
    std::optional<double> ci_upper;

    friend bool operator==(const RankedEntry &, const RankedEntry &) = default;
};

struct RankedResult {
    RankingMethod method{ RankingMethod::mean };
    std::vector<RankedEntry> ordering;  // best first

    [[nodiscard]] std::vector<std::string> systems() const;

    friend bool operator==(const RankedResult &, const RankedResult &) = default;
};

/// Sorts (system, score) pairs ascending by score, ties by name, and numbers them 1..n.
[[nodiscard]] RankedResult rank_scores(std::vector<std::pair<std::string, double>> scores, RankingMethod method);

/// Per-system mean of all normalized entries. Throws DataError when systems cover different keys.
[[nodiscard]] RankedResult mean_ranking(const ScoreTable &t);
/// As mean_ranking with the median (average of the two middle values for even counts).
[[nodiscard]] RankedResult median_ranking(const ScoreTable &t);

/// Mean ranking restricted to one measure.
[[nodiscard]] RankedResult measure_ranking(const ScoreTable &t, Measure m);
/// One ranking per measure, in the order par10, mcp, solved.
[[nodiscard]] std::vector<RankedResult> per_measure_rankings(const ScoreTable &t);

struct ScenarioRanks {
    std::vector<std::string> scenarios;         // sorted
    std::vector<std::string> systems;           // sorted
    std::vector<std::vector<std::size_t>> rank;  // [scenario][system], 1..n
};

/// Ranks 1..n per scenario by the mean over splits and measures.
[[nodiscard]] ScenarioRanks per_scenario_ranks(const ScoreTable &t);

/// Percentile with linear interpolation between order statistics (R type 7).
[[nodiscard]] double percentile(std::vector<double> values, double p);

/**
 * Bootstrap over (scenario, split) combinations: each resample draws the
 * observed combinations with replacement (generator make_stream(seed, r) for
 * resample r) and records each system's mean normalized score over the drawn
 * combinations, the three measures of a combination kept together. Systems
 * are ranked by the mean of their resample means; ci_lower/ci_upper are the
 * (1 - conf)/2 and (1 + conf)/2 percentiles.
 */
[[nodiscard]] RankedResult bootstrap_ranking(const ScoreTable &t, std::size_t resamples, double conf, std::uint64_t seed);

/// Same statistic for explicitly given resamples (indices into the sorted
/// list of (scenario, split) combinations).
[[nodiscard]] RankedResult bootstrap_ranking_from(const ScoreTable &t, const std::vector<std::vector<std::size_t>> &resamples,
                                                  double conf);

struct RankBallot {
    std::string scenario;
    std::size_t split{ 0 };
    Measure measure{ Measure::par10 };
    std::vector<std::string> systems;  // fixed order shared by all ballots
    std::vector<double> ranks;         // average ranks, 1 = best, parallel to systems
};

/// Average ranks (ties share the mean of their positions), ascending scores.
[[nodiscard]] std::vector<double> average_ranks(const std::vector<double> &scores);

/// One ballot per (scenario, split, measure), systems in name order.
[[nodiscard]] std::vector<RankBallot> make_ballots(const ScoreTable &t);

/// 1 - 6 sum d^2 / (n (n^2 - 1)) between two rank vectors; 1 for n < 2.
[[nodiscard]] double spearman_rho(const std::vector<double> &a, const std::vector<double> &b);

/// Sum of spearman_rho between the candidate ranking (systems best first) and every ballot.
[[nodiscard]] double total_spearman(const std::vector<std::string> &candidate, const std::vector<RankBallot> &ballots);

/**
 * Ranking maximizing the summed Spearman correlation with the ballots: the
 * systems ordered by mean ballot rank, ties by name. Scores in the result
 * are the mean ranks. Throws DataError on ballots over different system sets.
 */
[[nodiscard]] RankedResult spearman_aggregate(const std::vector<RankBallot> &ballots);

}  // namespace asbench
