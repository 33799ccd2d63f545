#include "asbench/report.hpp"

#include "asbench/error.hpp"
#include "csv.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace asbench {

void write_ranking_csv(std::ostream &out, const RankedResult &result, std::string_view score_column) {
    const bool with_ci = !result.ordering.empty() && result.ordering.front().ci_lower.has_value();
    out << "rank,system," << score_column << (with_ci ? ",ci_lower,ci_upper" : "") << '\n';
    for (const auto &e : result.ordering) {
        out << e.rank << ',' << detail::csv_field(e.system) << ',' << fmt::format("{:.5f}", e.score);
        if (with_ci) {
            out << ',' << fmt::format("{:.5f}", e.ci_lower.value_or(NAN)) << ',' << fmt::format("{:.5f}", e.ci_upper.value_or(NAN));
        }
        out << '\n';
    }
}

void write_scenario_ranks_csv(std::ostream &out, const ScenarioRanks &ranks) {
    out << "scenario";
    for (const auto &s : ranks.systems) {
        out << ',' << detail::csv_field(s);
    }
    out << '\n';
    for (std::size_t i = 0; i < ranks.scenarios.size(); ++i) {
        out << detail::csv_field(ranks.scenarios[i]);
        for (const std::size_t r : ranks.rank[i]) {
            out << ',' << r;
        }
        out << '\n';
    }
}

namespace {

std::map<std::string, std::vector<std::pair<std::size_t, double>>> panel(const ScoreTable &table, std::string_view scenario, Measure measure) {
    std::map<std::string, std::vector<std::pair<std::size_t, double>>> by_system;
    for (const auto &[key, value] : table.entries()) {
        if (key.scenario == scenario && key.measure == measure) {
            by_system[key.system].emplace_back(key.split, value.normalized);
        }
    }
    return by_system;
}

std::string file_safe(std::string_view name) {
    std::string out(name);
    std::replace_if(out.begin(), out.end(), [](char c) { return c == '/' || c == '\\' || c == ' ' || c == ':'; }, '_');
    return out;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace

void write_boxplot_data(std::ostream &out, const ScoreTable &table, std::string_view scenario, Measure measure) {
    out << "system,split,normalized\n";
    for (const auto &[system, points] : panel(table, scenario, measure)) {
        for (const auto &[split, value] : points) {
            out << detail::csv_field(system) << ',' << split << ',' << detail::format_double(value) << '\n';
        }
    }
}

std::string render_boxplot_svg(const ScoreTable &table, std::string_view scenario, Measure measure) {
    const auto data = panel(table, scenario, measure);
    constexpr double width = 640.0;
    constexpr double height = 360.0;
    constexpr double left = 60.0;
    constexpr double right = 20.0;
    constexpr double top = 30.0;
    constexpr double bottom = 90.0;

    double lo = 0.0;
    double hi = 1.0;
    for (const auto &[system, points] : data) {
        for (const auto &[split, v] : points) {
            if (std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    const double pad = (hi - lo) * 0.05;
    lo -= pad;
    hi += pad;
    const auto y = [&](double v) { return top + (hi - v) / (hi - lo) * (height - top - bottom); };

    std::ostringstream svg;
    svg << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="11">)", width,
                       height)
        << '\n';
    svg << fmt::format(R"(<text x="{}" y="18" font-size="13">{} - {}</text>)", left, xml_escape(scenario), to_string(measure)) << '\n';
    svg << fmt::format(R"(<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>)", left, top, height - bottom) << '\n';
    for (const double tick : { 0.0, 0.5, 1.0 }) {
        svg << fmt::format(R"(<text x="{:.1f}" y="{:.1f}" text-anchor="end">{}</text>)", left - 6, y(tick) + 4, tick) << '\n';
    }
    svg << fmt::format(R"(<line x1="{}" y1="{:.1f}" x2="{}" y2="{:.1f}" stroke="black" stroke-dasharray="4,3"/>)", left, y(1.0),
                       width - right, y(1.0))
        << '\n';

    const double slot = data.empty() ? 0.0 : (width - left - right) / static_cast<double>(data.size());
    std::size_t col = 0;
    for (const auto &[system, points] : data) {
        std::vector<double> v;
        for (const auto &p : points) {
            v.push_back(p.second);
        }
        const double cx = left + slot * (static_cast<double>(col) + 0.5);
        const double half = std::min(slot * 0.3, 18.0);
        const double q0 = percentile(v, 0.0);
        const double q1 = percentile(v, 0.25);
        const double q2 = percentile(v, 0.5);
        const double q3 = percentile(v, 0.75);
        const double q4 = percentile(v, 1.0);
        svg << fmt::format(R"(<line x1="{0:.1f}" y1="{1:.1f}" x2="{0:.1f}" y2="{2:.1f}" stroke="#444"/>)", cx, y(q4), y(q0)) << '\n';
        svg << fmt::format(R"(<rect x="{:.1f}" y="{:.1f}" width="{:.1f}" height="{:.1f}" fill="#9ecae1" stroke="#08519c"/>)", cx - half,
                           y(q3), 2 * half, std::max(0.5, y(q1) - y(q3)))
            << '\n';
        svg << fmt::format(R"(<line x1="{:.1f}" y1="{:.1f}" x2="{:.1f}" y2="{:.1f}" stroke="black" stroke-width="2"/>)", cx - half, y(q2),
                           cx + half, y(q2))
            << '\n';
        svg << fmt::format(R"svg(<text transform="translate({:.1f},{:.1f}) rotate(45)">{}</text>)svg", cx - 4, height - bottom + 12,
                           xml_escape(system))
            << '\n';
        ++col;
    }
    svg << "</svg>\n";
    return svg.str();
}

RankReport compute_rankings(const ScoreTable &table, const RankOptions &options) {
    RankReport report;
    report.mean = mean_ranking(table);
    report.bootstrap = bootstrap_ranking(table, options.resamples, options.confidence, options.seed);
    report.spearman = spearman_aggregate(make_ballots(table));
    report.median = median_ranking(table);
    report.per_measure = per_measure_rankings(table);
    report.per_scenario = per_scenario_ranks(table);
    return report;
}

RankReport write_report_bundle(const std::filesystem::path &dir, const ScoreTable &table, const RankOptions &options) {
    RankReport report = compute_rankings(table, options);
    std::filesystem::create_directories(dir);

    const auto emit = [&](const std::filesystem::path &path, const auto &writer) {
        std::filesystem::create_directories(path.parent_path());
        std::ofstream out{ path, std::ios::binary };
        if (!out) {
            throw DataError{ fmt::format("cannot write '{}'", path.string()) };
        }
        writer(out);
        report.files.push_back(path);
    };

    emit(dir / "ranking_mean.csv", [&](std::ostream &o) { write_ranking_csv(o, report.mean, "average_total_score"); });
    emit(dir / "ranking_bootstrap.csv", [&](std::ostream &o) { write_ranking_csv(o, report.bootstrap, "average_total_score"); });
    emit(dir / "ranking_spearman.csv", [&](std::ostream &o) { write_ranking_csv(o, report.spearman, "mean_ballot_rank"); });
    emit(dir / "ranking_median.csv", [&](std::ostream &o) { write_ranking_csv(o, report.median, "median_total_score"); });
    for (std::size_t i = 0; i < all_measures.size(); ++i) {
        const std::string name{ to_string(all_measures[i]) };
        emit(dir / fmt::format("ranking_{}.csv", name),
             [&](std::ostream &o) { write_ranking_csv(o, report.per_measure[i], fmt::format("mean_{}_score", name)); });
    }
    emit(dir / "ranks_by_scenario.csv", [&](std::ostream &o) { write_scenario_ranks_csv(o, report.per_scenario); });

    for (const auto &scenario : table.scenarios()) {
        for (const Measure m : all_measures) {
            const std::string stem = fmt::format("{}_{}", file_safe(scenario), to_string(m));
            emit(dir / "boxplot_data" / (stem + ".csv"), [&](std::ostream &o) { write_boxplot_data(o, table, scenario, m); });
            if (options.plots) {
                emit(dir / "plots" / (stem + ".svg"), [&](std::ostream &o) { o << render_boxplot_svg(table, scenario, m); });
            }
        }
    }
    return report;
}

}  // namespace asbench
