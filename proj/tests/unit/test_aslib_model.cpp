#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asbench/arff.hpp"
#include "asbench/error.hpp"
#include "asbench/scenario.hpp"
#include "fixtures.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

using namespace asbench;
using fixtures::TempDir;

namespace {

std::string describe_cell(const ArffCell &c) {
    if (is_missing(c)) {
        return "?";
    }
    if (const auto *d = std::get_if<double>(&c)) {
        return fmt::format("n:{}", *d);
    }
    return "s:" + std::get<std::string>(c);
}

/// Golden rendering: one line per attribute and per row.
std::string describe_table(const ArffTable &t) {
    std::ostringstream out;
    out << "relation=" << t.relation_name << '\n';
    for (const auto &a : t.attributes) {
        out << "attribute=" << a.name << ':';
        switch (a.kind) {
            case AttributeKind::numeric: out << "numeric"; break;
            case AttributeKind::string: out << "string"; break;
            case AttributeKind::nominal: out << "nominal{" << fmt::format("{}", fmt::join(a.nominal_values, "|")) << '}'; break;
        }
        out << '\n';
    }
    for (const auto &row : t.rows) {
        std::vector<std::string> cells;
        for (const auto &c : row) {
            cells.push_back(describe_cell(c));
        }
        out << "row=" << fmt::format("{}", fmt::join(cells, "|")) << '\n';
    }
    return out.str();
}

}  // namespace

TEST_CASE("parse_arff: empty data section") {
    const auto t = parse_arff("@RELATION r\n@ATTRIBUTE a NUMERIC\n@DATA\n");
    CHECK(t.relation_name == "r");
    REQUIRE(t.attributes.size() == 1);
    CHECK(t.attributes[0].kind == AttributeKind::numeric);
    CHECK(t.rows.empty());
}

TEST_CASE("parse_arff: missing marker is distinct from zero and empty text") {
    const auto t = parse_arff("@RELATION r\n@ATTRIBUTE a NUMERIC\n@ATTRIBUTE b NUMERIC\n@DATA\n1,?\n");
    REQUIRE(t.rows.size() == 1);
    CHECK(std::get<double>(t.rows[0][0]) == 1.0);
    CHECK(is_missing(t.rows[0][1]));

    const auto s = parse_arff("@relation r\n@attribute a string\n@data\n''\n?\n0\n");
    REQUIRE(s.rows.size() == 3);
    CHECK(std::get<std::string>(s.rows[0][0]).empty());
    CHECK(is_missing(s.rows[1][0]));
    CHECK(std::get<std::string>(s.rows[2][0]) == "0");
}

TEST_CASE("parse_arff: three-row fixture matches its golden file") {
    const auto t = read_arff_file(fixtures::data_dir() / "arff" / "three_rows.arff");
    CHECK(describe_table(t) == fixtures::read_file(fixtures::data_dir() / "arff" / "three_rows.expected"));
}

TEST_CASE("parse_arff: round trip preserves attributes, rows and missing cells") {
    const auto t = read_arff_file(fixtures::data_dir() / "arff" / "three_rows.arff");
    const auto again = parse_arff(to_arff_string(t));
    CHECK(again == t);
    CHECK(to_arff_string(again) == to_arff_string(t));
}

TEST_CASE("parse_arff: errors carry source and line") {
    SUBCASE("undeclared nominal value") {
        try {
            (void)parse_arff("@relation r\n@attribute c {x,y}\n@data\nx\nz\n", "f.arff");
            FAIL("expected ParseError");
        } catch (const ParseError &e) {
            CHECK(e.source() == "f.arff");
            CHECK(e.line() == 5);
        }
    }
    SUBCASE("wrong arity") {
        CHECK_THROWS_AS((void)parse_arff("@relation r\n@attribute a numeric\n@attribute b numeric\n@data\n1\n"), ParseError);
    }
    SUBCASE("non-numeric value in numeric column") {
        CHECK_THROWS_AS((void)parse_arff("@relation r\n@attribute a numeric\n@data\nabc\n"), ParseError);
    }
    SUBCASE("sparse rows are rejected") {
        CHECK_THROWS_AS((void)parse_arff("@relation r\n@attribute a numeric\n@data\n{0 1}\n"), ParseError);
    }
    SUBCASE("date attributes are rejected") {
        CHECK_THROWS_AS((void)parse_arff("@relation r\n@attribute d date\n@data\n"), ParseError);
    }
    SUBCASE("no data section") {
        CHECK_THROWS_AS((void)parse_arff("@relation r\n@attribute a numeric\n"), ParseError);
    }
}

TEST_CASE("load_scenario: toy3") {
    const Scenario s = load_scenario(fixtures::data_dir() / "toy3");
    CHECK(s.scenario_id == "toy3");
    CHECK(s.cutoff == 100.0);
    CHECK(s.instances == std::vector<std::string>{ "i1", "i2", "i3" });
    CHECK(s.algorithms == std::vector<std::string>{ "A", "B" });
    CHECK(s.features == std::vector<std::string>{ "f1", "f2" });
    REQUIRE(s.feature_steps.size() == 1);
    CHECK(s.feature_steps[0].name == "base");

    std::size_t records = 0;
    for (std::size_t i = 0; i < s.runs.rows(); ++i) {
        for (std::size_t a = 0; a < s.runs.cols(); ++a) {
            records += s.runs(i, a).has_value() ? 1 : 0;
        }
    }
    CHECK(records == 6);
    CHECK(s.run(1, 0) == RunRecord{ 100.0, RunStatus::timeout });
    CHECK(s.run(2, 0) == RunRecord{ 5.0, RunStatus::ok });
    CHECK_FALSE(s.feature_values(1, 1).has_value());
    CHECK(s.feature_values(2, 0) == -2.0);
    CHECK(s.feature_costs(1, 0) == 2.5);
    CHECK_FALSE(s.feature_costs(2, 0).has_value());
    CHECK(s.feature_runstatus(2, 0) == FeatureStatus::presolved);
}

TEST_CASE("load_scenario is a pure function of the directory contents") {
    const Scenario a = load_scenario(fixtures::data_dir() / "toy3");
    const Scenario b = load_scenario(fixtures::data_dir() / "toy3");
    CHECK(a == b);

    TempDir tmp;
    write_scenario(tmp.path(), a);
    const Scenario c = load_scenario(tmp.path());
    CHECK(c == a);
    TempDir tmp2;
    write_scenario(tmp2.path(), c);
    for (const auto *f : { "description.txt", "algorithm_runs.arff", "feature_values.arff", "feature_costs.arff", "feature_runstatus.arff" }) {
        CHECK(fixtures::read_file(tmp.path() / f) == fixtures::read_file(tmp2.path() / f));
    }
}

TEST_CASE("load_scenario: missing mandatory file") {
    TempDir tmp;
    for (const auto &entry : std::filesystem::directory_iterator(fixtures::data_dir() / "toy3")) {
        std::filesystem::copy_file(entry.path(), tmp.path() / entry.path().filename());
    }
    std::filesystem::remove(tmp.path() / "algorithm_runs.arff");
    try {
        (void)load_scenario(tmp.path());
        FAIL("expected DataError");
    } catch (const DataError &e) {
        CHECK(std::string(e.what()).find("missing mandatory file") != std::string::npos);
    }
}

TEST_CASE("load_scenario: ok runtime above the cutoff is a validation error") {
    Scenario s = fixtures::blank_scenario("big", 3600.0, { "A" }, { "x" }, { FeatureStep{ "s", { "f" }, {} } });
    TempDir tmp;
    write_scenario(tmp.path(), s);
    std::string runs = fixtures::read_file(tmp.path() / "algorithm_runs.arff");
    const auto pos = runs.find("x,1,A,1,ok");
    REQUIRE(pos != std::string::npos);
    runs.replace(pos, 10, "x,1,A,7200,ok");
    std::ofstream(tmp.path() / "algorithm_runs.arff", std::ios::binary) << runs;

    const auto result = load_scenario_report(tmp.path());
    CHECK(result.report.error_count() == 1);
    CHECK_THROWS_AS((void)load_scenario(tmp.path()), DataError);
}

TEST_CASE("validate_scenario") {
    const Scenario good = load_scenario(fixtures::data_dir() / "toy3");
    CHECK(validate_scenario(good).issues.empty());

    SUBCASE("duplicate instance id") {
        Scenario s = good;
        s.instances[2] = "i1";
        s.rebuild_index();
        CHECK(validate_scenario(s).error_count() == 1);
    }
    SUBCASE("feature assigned to two steps") {
        Scenario s = good;
        s.feature_steps.push_back(FeatureStep{ "extra", { "f2" }, {} });
        s.feature_costs = Grid<std::optional<double>>(3, 2, 0.0);
        s.feature_runstatus = Grid<FeatureStatus>(3, 2, FeatureStatus::ok);
        s.rebuild_index();
        CHECK(validate_scenario(s).error_count() == 1);
    }
    SUBCASE("missing run record") {
        Scenario s = good;
        s.runs(0, 1).reset();
        CHECK(validate_scenario(s).error_count() == 1);
    }
}

TEST_CASE("run status spellings") {
    CHECK(parse_run_status("OK") == RunStatus::ok);
    CHECK(parse_run_status("timeout") == RunStatus::timeout);
    CHECK(parse_run_status("not_applicable") == RunStatus::other);
    CHECK(parse_feature_status("presolved") == FeatureStatus::presolved);
    CHECK(parse_feature_status("unknown") == FeatureStatus::other);
}

TEST_CASE("description without feature steps synthesizes one step") {
    Scenario s = load_scenario(fixtures::data_dir() / "toy3");
    TempDir tmp;
    write_scenario(tmp.path(), s);
    std::ofstream(tmp.path() / "description.txt", std::ios::binary)
        << "scenario_id: nosteps\nalgorithm_cutoff_time: 100\nperformance_type: [runtime]\n";
    std::filesystem::remove(tmp.path() / "feature_costs.arff");
    std::filesystem::remove(tmp.path() / "feature_runstatus.arff");
    const auto result = load_scenario_report(tmp.path());
    CHECK(result.report.ok());
    REQUIRE(result.scenario.feature_steps.size() == 1);
    CHECK(result.scenario.feature_steps[0].provides == s.features);
}

TEST_CASE("non-runtime scenarios are rejected") {
    Scenario s = load_scenario(fixtures::data_dir() / "toy3");
    TempDir tmp;
    write_scenario(tmp.path(), s);
    std::ofstream(tmp.path() / "description.txt", std::ios::binary)
        << "scenario_id: q\nalgorithm_cutoff_time: 100\nperformance_type: [solution_quality]\n";
    CHECK_THROWS_AS((void)load_scenario(tmp.path()), DataError);
}
