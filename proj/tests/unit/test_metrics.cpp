#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asbench/error.hpp"
#include "asbench/metrics.hpp"
#include "fixtures.hpp"

#include <sstream>

using namespace asbench;

namespace {

InstanceOutcome outcome(bool solved, double elapsed, double mcp, double cutoff) {
    InstanceOutcome o;
    o.solved = solved;
    o.elapsed = elapsed;
    o.stage = solved ? SolvedStage::schedule : SolvedStage::none;
    o.mcp = mcp;
    o.par10 = solved ? elapsed : 10.0 * cutoff;
    return o;
}

}  // namespace

TEST_CASE("summarize") {
    SUBCASE("all solved at 1 s") {
        const auto t = summarize({ outcome(true, 1, 0, 100), outcome(true, 1, 0, 100) });
        CHECK(t == MeasureTriple{ 1.0, 0.0, 1.0 });
    }
    SUBCASE("none solved") {
        const auto t = summarize({ outcome(false, 100, 90, 100), outcome(false, 100, 70, 100) });
        CHECK(t.mean_par10 == 1000.0);
        CHECK(t.mean_mcp == 80.0);
        CHECK(t.mean_solved == 0.0);
    }
    SUBCASE("four mixed outcomes") {
        // par10: 4 + 1000 + 16 + 1000 = 2020; mcp: 1 + 50 + 3 + 0 = 54; solved 2 of 4
        const auto t = summarize({ outcome(true, 4, 1, 100), outcome(false, 100, 50, 100), outcome(true, 16, 3, 100), outcome(false, 30, 0, 100) });
        CHECK(t.mean_par10 == 505.0);
        CHECK(t.mean_mcp == 13.5);
        CHECK(t.mean_solved == 0.5);
    }
    SUBCASE("empty list") {
        CHECK_THROWS_AS((void)summarize({}), DataError);
    }
}

TEST_CASE("single_best") {
    SUBCASE("one algorithm") {
        CHECK(single_best(fixtures::blank_scenario("s", 10, { "only" }, { "x", "y" }, {})) == "only");
    }
    SUBCASE("A solves everything in 1 s, B always times out") {
        Scenario s = fixtures::blank_scenario("s", 10, { "B", "A" }, { "x", "y" }, {});
        for (std::size_t i = 0; i < 2; ++i) {
            s.runs(i, 0) = RunRecord{ 10.0, RunStatus::timeout };
        }
        CHECK(single_best(s) == "A");
    }
    SUBCASE("three algorithms with mixed timeouts") {
        // cutoff 100; sums with timeouts charged at the cutoff:
        //   X: 10 + 100 + 30 = 140,  Y: 60 + 20 + 50 = 130,  Z: 100 + 5 + 40 = 145
        Scenario s = fixtures::blank_scenario("s", 100, { "X", "Y", "Z" }, { "p", "q", "r" }, {});
        const double t[3][3] = { { 10, 60, -1 }, { -1, 20, 5 }, { 30, 50, 40 } };
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t a = 0; a < 3; ++a) {
                s.runs(i, a) = t[i][a] < 0 ? RunRecord{ 100.0, RunStatus::timeout } : RunRecord{ t[i][a], RunStatus::ok };
            }
        }
        CHECK(single_best(s) == "Y");
    }
    SUBCASE("ties go to the first name") {
        CHECK(single_best(fixtures::blank_scenario("s", 10, { "b", "a" }, { "x" }, {})) == "a");
    }
}

TEST_CASE("reference triples on toy3") {
    const Scenario toy = load_scenario(fixtures::data_dir() / "toy3");
    CHECK(single_best(toy) == "A");  // A: 10 + 100 + 5 = 115, B: 50 + 20 + 100 = 170
    const auto vbs = vbs_triple(toy, toy.instances);
    CHECK(vbs.mean_par10 == doctest::Approx(35.0 / 3.0));
    CHECK(vbs.mean_mcp == 0.0);
    CHECK(vbs.mean_solved == 1.0);
    const auto sb = sb_triple(toy, "A", toy.instances);
    CHECK(sb.mean_par10 == doctest::Approx(1015.0 / 3.0));
    CHECK(sb.mean_mcp == doctest::Approx(80.0 / 3.0));  // i2: 100 - 20
    CHECK(sb.mean_solved == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("an instance nobody solves counts unsolved for both references") {
    Scenario s = fixtures::blank_scenario("s", 10, { "A", "B" }, { "x", "y" }, {});
    s.runs(1, 0) = RunRecord{ 10.0, RunStatus::timeout };
    s.runs(1, 1) = RunRecord{ 10.0, RunStatus::crash };
    CHECK(vbs_triple(s, s.instances).mean_solved == 0.5);
    CHECK(sb_triple(s, "A", s.instances).mean_solved == 0.5);
    CHECK(vbs_triple(s, s.instances).mean_mcp == 0.0);
}

TEST_CASE("normalize") {
    NormalizationContext ctx{ MeasureTriple{ 10.0, 0.0, 0.9 }, MeasureTriple{ 30.0, 8.0, 0.5 }, "A" };
    CHECK(normalize(10.0, ctx, Measure::par10) == 0.0);
    CHECK(normalize(30.0, ctx, Measure::par10) == 1.0);
    CHECK(normalize(20.0, ctx, Measure::par10) == 0.5);
    CHECK(normalize(0.7, ctx, Measure::solved) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(normalize(0.9, ctx, Measure::solved) == 0.0);
    CHECK(normalize(0.5, ctx, Measure::solved) == 1.0);
    CHECK(normalize(8.0, ctx, Measure::mcp) == 1.0);

    SUBCASE("degenerate denominator") {
        NormalizationContext flat{ MeasureTriple{ 5, 0, 1 }, MeasureTriple{ 5, 0, 1 }, "A" };
        CHECK(normalize(7.0, flat, Measure::par10) == 0.0);
        CHECK(normalize(0.5, flat, Measure::solved) == 0.0);
    }
    SUBCASE("affine") {
        std::mt19937 gen{ 4 };
        std::uniform_real_distribution<double> u{ 0.0, 100.0 };
        for (int i = 0; i < 100; ++i) {
            const double a = u(gen) / 100.0;
            const double s1 = u(gen);
            const double s2 = u(gen);
            CHECK(normalize(a * s1 + (1 - a) * s2, ctx, Measure::par10) ==
                  doctest::Approx(a * normalize(s1, ctx, Measure::par10) + (1 - a) * normalize(s2, ctx, Measure::par10)));
        }
    }
}

TEST_CASE("measure names") {
    for (const Measure m : all_measures) {
        CHECK(parse_measure(to_string(m)) == m);
    }
    CHECK_THROWS_AS((void)parse_measure("runtime"), ParseError);
}

TEST_CASE("score table") {
    ScoreTable t;
    const NormalizationContext ctx{ MeasureTriple{ 10.0, 0.0, 1.0 }, MeasureTriple{ 30.0, 8.0, 0.5 }, "A" };
    t.add_evaluation("sys", "scen", 1, MeasureTriple{ 20.0, 2.0, 0.75 }, ctx);
    REQUIRE(t.entries().size() == 3);
    CHECK(t.entries().at(ScoreKey{ "sys", "scen", 1, Measure::par10 }) == ScoreValue{ 20.0, 0.5 });
    CHECK(t.entries().at(ScoreKey{ "sys", "scen", 1, Measure::mcp }) == ScoreValue{ 2.0, 0.25 });
    CHECK(t.entries().at(ScoreKey{ "sys", "scen", 1, Measure::solved }) == ScoreValue{ 0.75, 0.5 });
    CHECK_THROWS_AS(t.add(ScoreKey{ "sys", "scen", 1, Measure::mcp }, ScoreValue{}), DataError);

    std::stringstream io;
    write_scores(io, t);
    CHECK(io.str().rfind("system,scenario,split,measure,raw,normalized\n", 0) == 0);
    CHECK(parse_scores(io) == t);
}

TEST_CASE("parse_scores reports the bad line") {
    std::istringstream in{ "system,scenario,split,measure,raw,normalized\na,b,1,par10,1,0.5\na,b,x,mcp,1,0.5\n" };
    try {
        (void)parse_scores(in, "scores.csv");
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.line() == 3);
    }
}
