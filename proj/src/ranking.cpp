#include "asbench/ranking.hpp"

#include "asbench/error.hpp"
#include "asbench/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace asbench {

std::string_view to_string(RankingMethod m) noexcept {
    switch (m) {
        case RankingMethod::mean: return "mean";
        case RankingMethod::median: return "median";
        case RankingMethod::bootstrap: return "bootstrap";
        case RankingMethod::spearman: return "spearman";
        case RankingMethod::per_measure: return "per_measure";
        case RankingMethod::per_scenario: return "per_scenario";
    }
    return "mean";
}

std::vector<std::string> RankedResult::systems() const {
    std::vector<std::string> out;
    out.reserve(ordering.size());
    for (const auto &e : ordering) {
        out.push_back(e.system);
    }
    return out;
}

RankedResult rank_scores(std::vector<std::pair<std::string, double>> scores, RankingMethod method) {
    std::sort(scores.begin(), scores.end(), [](const auto &a, const auto &b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
    RankedResult result{ method, {} };
    for (std::size_t i = 0; i < scores.size(); ++i) {
        result.ordering.push_back(RankedEntry{ i + 1, std::move(scores[i].first), scores[i].second, std::nullopt, std::nullopt });
    }
    return result;
}

namespace {

using ComboKey = std::tuple<std::string, std::size_t, Measure>;

/// Normalized scores per system, in key order. Throws if systems disagree on the key set.
std::map<std::string, std::vector<double>> scores_by_system(const ScoreTable &t, std::optional<Measure> only = std::nullopt) {
    if (t.empty()) {
        throw DataError{ "score table is empty" };
    }
    std::map<std::string, std::vector<double>> by_system;
    std::map<std::string, std::set<ComboKey>> keys;
    for (const auto &[key, value] : t.entries()) {
        keys[key.system].emplace(key.scenario, key.split, key.measure);
        if (!only || key.measure == *only) {
            by_system[key.system].push_back(value.normalized);
        }
    }
    const auto &reference = keys.begin()->second;
    for (const auto &[system, ks] : keys) {
        if (ks != reference) {
            std::vector<std::string> missing;
            for (const auto &k : reference) {
                if (!ks.count(k)) {
                    missing.push_back(fmt::format("({}, {}, {})", std::get<0>(k), std::get<1>(k), to_string(std::get<2>(k))));
                }
            }
            for (const auto &k : ks) {
                if (!reference.count(k)) {
                    missing.push_back(fmt::format("extra ({}, {}, {})", std::get<0>(k), std::get<1>(k), to_string(std::get<2>(k))));
                }
            }
            throw DataError{ fmt::format("incomplete score table: system '{}' differs from '{}' on {}", system, keys.begin()->first,
                                         fmt::join(missing, ", ")) };
        }
    }
    return by_system;
}

/// Running mean; returns c exactly when every value equals c.
struct RunningMean {
    double value{ 0.0 };
    std::size_t n{ 0 };

    void add(double x) noexcept {
        ++n;
        value += (x - value) / static_cast<double>(n);
    }
};

double mean_of(const std::vector<double> &v) {
    RunningMean m;
    for (const double x : v) {
        m.add(x);
    }
    return m.value;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

RankedResult mean_ranking(const ScoreTable &t) {
    std::vector<std::pair<std::string, double>> scores;
    for (const auto &[system, values] : scores_by_system(t)) {
        scores.emplace_back(system, mean_of(values));
    }
    return rank_scores(std::move(scores), RankingMethod::mean);
}

RankedResult median_ranking(const ScoreTable &t) {
    std::vector<std::pair<std::string, double>> scores;
    for (const auto &[system, values] : scores_by_system(t)) {
        scores.emplace_back(system, median_of(values));
    }
    return rank_scores(std::move(scores), RankingMethod::median);
}

RankedResult measure_ranking(const ScoreTable &t, Measure m) {
    std::vector<std::pair<std::string, double>> scores;
    for (const auto &[system, values] : scores_by_system(t, m)) {
        if (values.empty()) {
            throw DataError{ fmt::format("no '{}' scores in the table", to_string(m)) };
        }
        scores.emplace_back(system, mean_of(values));
    }
    return rank_scores(std::move(scores), RankingMethod::per_measure);
}

std::vector<RankedResult> per_measure_rankings(const ScoreTable &t) {
    std::vector<RankedResult> out;
    for (const Measure m : all_measures) {
        out.push_back(measure_ranking(t, m));
    }
    return out;
}

ScenarioRanks per_scenario_ranks(const ScoreTable &t) {
    scores_by_system(t);  // completeness check
    ScenarioRanks out;
    out.scenarios = t.scenarios();
    out.systems = t.systems();
    for (const auto &scenario : out.scenarios) {
        std::map<std::string, std::vector<double>> values;
        for (const auto &[key, value] : t.entries()) {
            if (key.scenario == scenario) {
                values[key.system].push_back(value.normalized);
            }
        }
        std::vector<std::pair<std::string, double>> scores;
        for (const auto &[system, v] : values) {
            scores.emplace_back(system, mean_of(v));
        }
        const RankedResult ranked = rank_scores(std::move(scores), RankingMethod::per_scenario);
        std::vector<std::size_t> row(out.systems.size(), 0);
        for (const auto &e : ranked.ordering) {
            const auto pos = std::find(out.systems.begin(), out.systems.end(), e.system) - out.systems.begin();
            row[static_cast<std::size_t>(pos)] = e.rank;
        }
        out.rank.push_back(std::move(row));
    }
    return out;
}

double percentile(std::vector<double> values, double p) {
    if (values.empty()) {
        throw DataError{ "percentile of an empty sample" };
    }
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * std::clamp(p, 0.0, 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

namespace {

struct ComboTable {
    std::vector<std::pair<std::string, std::size_t>> combos;  // sorted (scenario, split)
    std::vector<std::string> systems;                       // sorted
    std::vector<std::vector<std::vector<double>>> values;    // [system][combo], measures in key order
};

ComboTable combo_table(const ScoreTable &t) {
    scores_by_system(t);  // completeness check
    ComboTable ct;
    ct.systems = t.systems();
    std::set<std::pair<std::string, std::size_t>> combos;
    for (const auto &[key, value] : t.entries()) {
        combos.emplace(key.scenario, key.split);
    }
    ct.combos.assign(combos.begin(), combos.end());
    ct.values.assign(ct.systems.size(), std::vector<std::vector<double>>(ct.combos.size()));
    for (const auto &[key, value] : t.entries()) {
        const auto s = static_cast<std::size_t>(std::lower_bound(ct.systems.begin(), ct.systems.end(), key.system) - ct.systems.begin());
        const auto c = static_cast<std::size_t>(
            std::lower_bound(ct.combos.begin(), ct.combos.end(), std::make_pair(key.scenario, key.split)) - ct.combos.begin());
        ct.values[s][c].push_back(value.normalized);
    }
    return ct;
}

}  // namespace

RankedResult bootstrap_ranking_from(const ScoreTable &t, const std::vector<std::vector<std::size_t>> &resamples, double conf) {
    if (!(conf > 0.0 && conf < 1.0)) {
        throw UsageError{ fmt::format("confidence must lie in (0, 1), got {}", conf) };
    }
    if (resamples.empty()) {
        throw UsageError{ "at least one bootstrap resample is required" };
    }
    const ComboTable ct = combo_table(t);
    std::vector<std::vector<double>> means(ct.systems.size());
    for (const auto &draw : resamples) {
        for (std::size_t s = 0; s < ct.systems.size(); ++s) {
            RunningMean m;
            for (const std::size_t c : draw) {
                for (const double v : ct.values[s].at(c)) {
                    m.add(v);
                }
            }
            means[s].push_back(m.value);
        }
    }
    std::vector<std::pair<std::string, double>> scores;
    for (std::size_t s = 0; s < ct.systems.size(); ++s) {
        scores.emplace_back(ct.systems[s], mean_of(means[s]));
    }
    RankedResult result = rank_scores(std::move(scores), RankingMethod::bootstrap);
    for (auto &e : result.ordering) {
        const auto s = static_cast<std::size_t>(std::lower_bound(ct.systems.begin(), ct.systems.end(), e.system) - ct.systems.begin());
        e.ci_lower = percentile(means[s], (1.0 - conf) / 2.0);
        e.ci_upper = percentile(means[s], (1.0 + conf) / 2.0);
    }
    return result;
}

RankedResult bootstrap_ranking(const ScoreTable &t, std::size_t resamples, double conf, std::uint64_t seed) {
    if (t.empty()) {
        throw DataError{ "score table is empty" };
    }
    if (resamples < 1) {
        throw UsageError{ "number of bootstrap resamples must be >= 1" };
    }
    std::set<std::pair<std::string, std::size_t>> combos;
    for (const auto &[key, value] : t.entries()) {
        combos.emplace(key.scenario, key.split);
    }
    const std::size_t n = combos.size();
    std::vector<std::vector<std::size_t>> draws(resamples, std::vector<std::size_t>(n));
    for (std::size_t r = 0; r < resamples; ++r) {
        auto gen = make_stream(seed, r);
        for (auto &idx : draws[r]) {
            idx = static_cast<std::size_t>(uniform_index(gen, n));
        }
    }
    return bootstrap_ranking_from(t, draws, conf);
}

// ---------------------------------------------------------------------------
// Ballots

std::vector<double> average_ranks(const std::vector<double> &scores) {
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) {
            ++j;
        }
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = avg;
        }
        i = j + 1;
    }
    return ranks;
}

std::vector<RankBallot> make_ballots(const ScoreTable &t) {
    scores_by_system(t);  // completeness check
    std::map<ComboKey, std::vector<double>> by_combo;
    for (const auto &[key, value] : t.entries()) {
        by_combo[ComboKey{ key.scenario, key.split, key.measure }].push_back(value.normalized);  // systems in name order
    }
    const std::vector<std::string> systems = t.systems();
    std::vector<RankBallot> ballots;
    for (const auto &[key, values] : by_combo) {
        ballots.push_back(RankBallot{ std::get<0>(key), std::get<1>(key), std::get<2>(key), systems, average_ranks(values) });
    }
    return ballots;
}

double spearman_rho(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size()) {
        throw DataError{ "rank vectors of different length" };
    }
    const auto n = static_cast<double>(a.size());
    if (a.size() < 2) {
        return 1.0;
    }
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d2 += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

namespace {

void check_ballots(const std::vector<RankBallot> &ballots) {
    if (ballots.empty()) {
        throw DataError{ "at least one ballot is required" };
    }
    const auto &systems = ballots.front().systems;
    for (const auto &b : ballots) {
        if (b.systems != systems || b.ranks.size() != systems.size()) {
            throw DataError{ fmt::format("ballot ({}, {}, {}) ranks a different system set", b.scenario, b.split, to_string(b.measure)) };
        }
    }
}

}  // namespace

double total_spearman(const std::vector<std::string> &candidate, const std::vector<RankBallot> &ballots) {
    check_ballots(ballots);
    const auto &systems = ballots.front().systems;
    std::vector<double> cand(systems.size(), 0.0);
    for (std::size_t pos = 0; pos < candidate.size(); ++pos) {
        const auto it = std::find(systems.begin(), systems.end(), candidate[pos]);
        if (it == systems.end()) {
            throw DataError{ fmt::format("candidate ranking names unknown system '{}'", candidate[pos]) };
        }
        cand[static_cast<std::size_t>(it - systems.begin())] = static_cast<double>(pos + 1);
    }
    double total = 0.0;
    for (const auto &b : ballots) {
        total += spearman_rho(cand, b.ranks);
    }
    return total;
}

RankedResult spearman_aggregate(const std::vector<RankBallot> &ballots) {
    check_ballots(ballots);
    const auto &systems = ballots.front().systems;
    std::vector<std::pair<std::string, double>> scores;
    for (std::size_t s = 0; s < systems.size(); ++s) {
        double sum = 0.0;
        for (const auto &b : ballots) {
            sum += b.ranks[s];
        }
        scores.emplace_back(systems[s], sum / static_cast<double>(ballots.size()));
    }
    return rank_scores(std::move(scores), RankingMethod::spearman);
}

}  // namespace asbench
