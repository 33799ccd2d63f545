#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asbench/error.hpp"
#include "asbench/ranking.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

using namespace asbench;

namespace {

ScoreTable one_value_each(const std::vector<std::pair<std::string, double>> &values, Measure m = Measure::par10) {
    ScoreTable t;
    for (const auto &[system, v] : values) {
        t.add(ScoreKey{ system, "all", 1, m }, ScoreValue{ v, v });
    }
    return t;
}

/// scores[system][combo] for `n_combos` (scenario, split) pairs, same value on all three measures.
ScoreTable grid_table(const std::map<std::string, std::vector<double>> &scores) {
    ScoreTable t;
    for (const auto &[system, values] : scores) {
        for (std::size_t c = 0; c < values.size(); ++c) {
            for (const Measure m : all_measures) {
                t.add(ScoreKey{ system, "scen" + std::to_string(c / 10), c % 10 + 1, m }, ScoreValue{ values[c], values[c] });
            }
        }
    }
    return t;
}

RankBallot ballot(std::vector<std::string> systems, std::vector<double> ranks) {
    return RankBallot{ "s", 1, Measure::par10, std::move(systems), std::move(ranks) };
}

}  // namespace

TEST_CASE("mean_ranking: sorting the leaderboard means") {
    const auto r = mean_ranking(one_value_each({ { "sunny-presolv", 0.48488 }, { "zilla", 0.36603 }, { "autofolio", 0.39083 },
                                                 { "zillafolio", 0.37021 }, { "sunny", 0.48259 } }));
    CHECK(r.systems() == std::vector<std::string>{ "zilla", "zillafolio", "autofolio", "sunny", "sunny-presolv" });
    CHECK(r.ordering.front().rank == 1);
    CHECK(r.ordering.back().rank == 5);
}

TEST_CASE("mean_ranking: single system and ties") {
    CHECK(mean_ranking(one_value_each({ { "only", 0.7 } })).ordering.front().rank == 1);
    const auto tie = mean_ranking(one_value_each({ { "b", 0.5 }, { "a", 0.5 } }));
    CHECK(tie.systems() == std::vector<std::string>{ "a", "b" });
    CHECK(tie.ordering[0].rank == 1);
    CHECK(tie.ordering[1].rank == 2);
    CHECK(tie.ordering[0].score == tie.ordering[1].score);
}

TEST_CASE("mean_ranking: incomplete tables list the missing key") {
    ScoreTable t = one_value_each({ { "a", 0.1 }, { "b", 0.2 } });
    t.add(ScoreKey{ "a", "other", 1, Measure::par10 }, ScoreValue{ 0.3, 0.3 });
    try {
        (void)mean_ranking(t);
        FAIL("expected DataError");
    } catch (const DataError &e) {
        CHECK(std::string(e.what()).find("other") != std::string::npos);
    }
}

TEST_CASE("mean_ranking is invariant under positive affine rescaling") {
    std::mt19937 gen{ 8 };
    std::uniform_real_distribution<double> u{ 0.0, 1.0 };
    for (int trial = 0; trial < 50; ++trial) {
        std::map<std::string, std::vector<double>> raw;
        std::map<std::string, std::vector<double>> scaled;
        for (const auto *s : { "a", "b", "c", "d" }) {
            for (int c = 0; c < 6; ++c) {
                const double v = u(gen);
                raw[s].push_back(v);
                scaled[s].push_back(3.0 * v + 2.0);
            }
        }
        CHECK(mean_ranking(grid_table(raw)).systems() == mean_ranking(grid_table(scaled)).systems());
    }
}

TEST_CASE("median_ranking") {
    SUBCASE("one outlier split flips mean but not median") {
        // a is usually better than b but has one disastrous split
        const ScoreTable t = grid_table({ { "a", { 0.2, 0.2, 0.2, 0.2, 3.0 } }, { "b", { 0.3, 0.3, 0.3, 0.3, 0.3 } } });
        CHECK(mean_ranking(t).systems() == std::vector<std::string>{ "b", "a" });
        CHECK(median_ranking(t).systems() == std::vector<std::string>{ "a", "b" });
    }
    SUBCASE("symmetric scores rank identically") {
        const ScoreTable t = grid_table({ { "a", { 0.1, 0.2, 0.3 } }, { "b", { 0.4, 0.5, 0.6 } }, { "c", { 0.0, 0.25, 0.5 } } });
        CHECK(mean_ranking(t).systems() == median_ranking(t).systems());
    }
    SUBCASE("even counts average the middle pair") {
        const auto r = median_ranking(grid_table({ { "a", { 1.0, 2.0, 3.0, 10.0 } } }));
        CHECK(r.ordering[0].score == 2.5);
    }
}

TEST_CASE("per-measure and per-scenario views") {
    ScoreTable t;
    // a wins on par10, b wins on mcp
    t.add({ "a", "s1", 1, Measure::par10 }, { 0.1, 0.1 });
    t.add({ "b", "s1", 1, Measure::par10 }, { 0.4, 0.4 });
    t.add({ "a", "s1", 1, Measure::mcp }, { 0.6, 0.6 });
    t.add({ "b", "s1", 1, Measure::mcp }, { 0.2, 0.2 });
    t.add({ "a", "s1", 1, Measure::solved }, { 0.3, 0.3 });
    t.add({ "b", "s1", 1, Measure::solved }, { 0.3, 0.3 });
    const auto views = per_measure_rankings(t);
    REQUIRE(views.size() == 3);
    CHECK(views[0].systems() == std::vector<std::string>{ "a", "b" });
    CHECK(views[1].systems() == std::vector<std::string>{ "b", "a" });
    CHECK(views[2].systems() == std::vector<std::string>{ "a", "b" });

    const auto ranks = per_scenario_ranks(t);
    REQUIRE(ranks.scenarios == std::vector<std::string>{ "s1" });
    const auto overall = mean_ranking(t).systems();
    for (std::size_t k = 0; k < ranks.systems.size(); ++k) {
        const auto pos = std::find(overall.begin(), overall.end(), ranks.systems[k]) - overall.begin();
        CHECK(ranks.rank[0][k] == static_cast<std::size_t>(pos) + 1);
    }
}

TEST_CASE("percentile (type 7)") {
    CHECK(percentile({ 1, 2, 3, 4 }, 0.5) == 2.5);
    CHECK(percentile({ 4, 1, 3, 2 }, 0.0) == 1.0);
    CHECK(percentile({ 4, 1, 3, 2 }, 1.0) == 4.0);
    CHECK(percentile({ 1, 2, 3, 4, 5 }, 0.25) == 2.0);
    CHECK(percentile({ 10, 20 }, 0.1) == doctest::Approx(11.0));
}

TEST_CASE("bootstrap_ranking") {
    std::mt19937 gen{ 12 };
    std::uniform_real_distribution<double> u{ 0.0, 1.0 };
    std::map<std::string, std::vector<double>> scores;
    for (const auto *s : { "x", "y", "z" }) {
        for (int c = 0; c < 30; ++c) {
            scores[s].push_back(u(gen));
        }
    }
    scores["const"] = std::vector<double>(30, 0.42);
    const ScoreTable t = grid_table(scores);

    SUBCASE("identity resample equals the mean ranking") {
        std::vector<std::size_t> identity(30);
        std::iota(identity.begin(), identity.end(), 0);
        const auto b = bootstrap_ranking_from(t, { identity }, 0.95);
        const auto m = mean_ranking(t);
        REQUIRE(b.ordering.size() == m.ordering.size());
        for (std::size_t k = 0; k < m.ordering.size(); ++k) {
            CHECK(b.ordering[k].system == m.ordering[k].system);
            CHECK(b.ordering[k].score == m.ordering[k].score);
        }
    }
    SUBCASE("fixed seed is bit-reproducible and CIs bracket the score") {
        const auto a = bootstrap_ranking(t, 200, 0.95, 5);
        CHECK(a == bootstrap_ranking(t, 200, 0.95, 5));
        for (const auto &e : a.ordering) {
            REQUIRE(e.ci_lower.has_value());
            CHECK(*e.ci_lower <= e.score);
            CHECK(e.score <= *e.ci_upper);
        }
    }
    SUBCASE("constant scores give a degenerate interval") {
        const auto a = bootstrap_ranking(t, 100, 0.95, 5);
        const auto it = std::find_if(a.ordering.begin(), a.ordering.end(), [](const RankedEntry &e) { return e.system == "const"; });
        CHECK(*it->ci_lower == 0.42);
        CHECK(*it->ci_upper == 0.42);
        CHECK(it->score == doctest::Approx(0.42).epsilon(1e-12));
    }
    SUBCASE("ballot order and resample seeds") {
        CHECK(bootstrap_ranking(t, 50, 0.95, 1) != bootstrap_ranking(t, 50, 0.95, 2));
    }
}

TEST_CASE("bootstrap CIs narrow as the number of combinations grows") {
    std::mt19937 gen{ 99 };
    std::normal_distribution<double> noise{ 0.5, 0.2 };
    const auto width = [&](std::size_t combos) {
        std::map<std::string, std::vector<double>> s;
        for (std::size_t c = 0; c < combos; ++c) {
            s["a"].push_back(noise(gen));
        }
        const auto r = bootstrap_ranking(grid_table(s), 400, 0.95, 3);
        return *r.ordering[0].ci_upper - *r.ordering[0].ci_lower;
    };
    int narrower = 0;
    for (int rep = 0; rep < 5; ++rep) {
        narrower += width(160) < width(10) ? 1 : 0;
    }
    CHECK(narrower == 5);
}

TEST_CASE("average_ranks") {
    CHECK(average_ranks({ 0.3, 0.1, 0.2 }) == std::vector<double>{ 3, 1, 2 });
    CHECK(average_ranks({ 0.5, 0.1, 0.5, 0.9 }) == std::vector<double>{ 2.5, 1, 2.5, 4 });
    std::mt19937 gen{ 1 };
    std::uniform_int_distribution<int> v{ 0, 3 };
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> s(6);
        for (auto &x : s) {
            x = v(gen);
        }
        CHECK(average_ranks(s) == oracles::tied_ranks(s));
    }
}

TEST_CASE("spearman_aggregate") {
    const std::vector<std::string> abc{ "A", "B", "C" };
    SUBCASE("identical ballots") {
        const std::vector<RankBallot> b(4, ballot(abc, { 2, 1, 3 }));
        const auto r = spearman_aggregate(b);
        CHECK(r.systems() == std::vector<std::string>{ "B", "A", "C" });
        CHECK(total_spearman(r.systems(), b) == 4.0);
    }
    SUBCASE("A>B>C and A>C>B") {
        const std::vector<RankBallot> b{ ballot(abc, { 1, 2, 3 }), ballot(abc, { 1, 3, 2 }) };
        const auto r = spearman_aggregate(b);
        CHECK(r.systems() == std::vector<std::string>{ "A", "B", "C" });
        CHECK(total_spearman(r.systems(), b) == doctest::Approx(oracles::best_summed_rho(abc, b)));
    }
    SUBCASE("four systems, five random ballots") {
        std::mt19937 gen{ 31 };
        const std::vector<std::string> sys{ "p", "q", "r", "s" };
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<RankBallot> b;
            for (int k = 0; k < 5; ++k) {
                std::vector<double> scores(4);
                for (auto &x : scores) {
                    x = std::uniform_int_distribution<int>{ 0, 4 }(gen);
                }
                b.push_back(ballot(sys, oracles::tied_ranks(scores)));
            }
            const auto r = spearman_aggregate(b);
            CHECK(oracles::summed_rho(r.systems(), b) == doctest::Approx(oracles::best_summed_rho(sys, b)).epsilon(1e-12));
        }
    }
    SUBCASE("ballot order does not matter") {
        std::vector<RankBallot> b{ ballot(abc, { 1, 2, 3 }), ballot(abc, { 3, 1, 2 }), ballot(abc, { 2, 3, 1 }), ballot(abc, { 1, 3, 2 }) };
        const auto first = spearman_aggregate(b);
        std::reverse(b.begin(), b.end());
        CHECK(spearman_aggregate(b) == first);
    }
    SUBCASE("ballots over different systems") {
        CHECK_THROWS_AS((void)spearman_aggregate({ ballot(abc, { 1, 2, 3 }), ballot({ "A", "B", "D" }, { 1, 2, 3 }) }), DataError);
    }
}

TEST_CASE("make_ballots: one per scenario, split and measure") {
    const ScoreTable t = grid_table({ { "a", { 0.1, 0.5, 0.2 } }, { "b", { 0.3, 0.4, 0.2 } } });
    const auto b = make_ballots(t);
    CHECK(b.size() == 9);
    CHECK(b[0].systems == std::vector<std::string>{ "a", "b" });
    CHECK(b[0].ranks == std::vector<double>{ 1, 2 });
}
