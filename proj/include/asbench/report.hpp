#pragma once

#include "asbench/metrics.hpp"
#include "asbench/ranking.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace asbench {

/// `rank,system,<score_column>` rows, plus `ci_lower,ci_upper` when the result carries CIs.
void write_ranking_csv(std::ostream &out, const RankedResult &result, std::string_view score_column);

/// `scenario,<system>...` with one row of ranks per scenario.
void write_scenario_ranks_csv(std::ostream &out, const ScenarioRanks &ranks);

/// `system,split,normalized` for one (scenario, measure): the data behind one boxplot panel.
void write_boxplot_data(std::ostream &out, const ScoreTable &table, std::string_view scenario, Measure measure);

/// Self-contained SVG boxplot (one box per system over splits, dashed line at the SB level 1).
[[nodiscard]] std::string render_boxplot_svg(const ScoreTable &table, std::string_view scenario, Measure measure);

struct RankOptions {
    std::size_t resamples{ 1000 };
    double confidence{ 0.95 };
    std::uint64_t seed{ 1 };
    bool plots{ false };
};

struct RankReport {
    RankedResult mean;
    RankedResult bootstrap;
    RankedResult spearman;
    RankedResult median;
    std::vector<RankedResult> per_measure;  // par10, mcp, solved
    ScenarioRanks per_scenario;
    std::vector<std::filesystem::path> files;
};

/// Computes every ranking view of `table`.
[[nodiscard]] RankReport compute_rankings(const ScoreTable &table, const RankOptions &options);

/// compute_rankings plus the CSV (and optional SVG) bundle under `dir`.
RankReport write_report_bundle(const std::filesystem::path &dir, const ScoreTable &table, const RankOptions &options);

}  // namespace asbench
