#include "asbench/metrics.hpp"

#include "asbench/error.hpp"
#include "csv.hpp"
#include "text.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

namespace asbench {

std::string_view to_string(Measure m) noexcept {
    switch (m) {
        case Measure::par10: return "par10";
        case Measure::mcp: return "mcp";
        case Measure::solved: return "solved";
    }
    return "par10";
}

Measure parse_measure(std::string_view text) {
    const std::string t = detail::to_lower(detail::trim(text));
    if (t == "par10") return Measure::par10;
    if (t == "mcp") return Measure::mcp;
    if (t == "solved") return Measure::solved;
    throw ParseError{ "<measure>", 0, fmt::format("unknown measure '{}'", text) };
}

double MeasureTriple::get(Measure m) const noexcept {
    switch (m) {
        case Measure::par10: return mean_par10;
        case Measure::mcp: return mean_mcp;
        case Measure::solved: return mean_solved;
    }
    return mean_par10;
}

MeasureTriple summarize(const std::vector<InstanceOutcome> &outcomes) {
    if (outcomes.empty()) {
        throw DataError{ "cannot summarize an empty outcome list" };
    }
    double par10 = 0.0;
    double mcp = 0.0;
    std::size_t solved = 0;
    for (const auto &o : outcomes) {
        par10 += o.par10;
        mcp += o.mcp;
        solved += o.solved ? 1 : 0;
    }
    const auto n = static_cast<double>(outcomes.size());
    return MeasureTriple{ par10 / n, mcp / n, static_cast<double>(solved) / n };
}

std::string single_best(const Scenario &s) {
    if (s.algorithms.empty() || s.instances.empty()) {
        throw DataError{ fmt::format("scenario '{}' has no runs to determine a single best solver", s.scenario_id) };
    }
    std::string best;
    double best_total = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < s.algorithms.size(); ++a) {
        double total = 0.0;
        for (std::size_t i = 0; i < s.instances.size(); ++i) {
            const RunRecord &rec = s.run(i, a);
            total += rec.status == RunStatus::ok ? rec.runtime : s.cutoff;
        }
        if (total < best_total || (total == best_total && s.algorithms[a] < best)) {
            best_total = total;
            best = s.algorithms[a];
        }
    }
    return best;
}

namespace {

struct Accumulator {
    double par10{ 0.0 };
    double mcp{ 0.0 };
    std::size_t solved{ 0 };
    std::size_t n{ 0 };

    void add(bool is_solved, double time, double vbs, double cutoff) {
        par10 += par10_score(is_solved, time, cutoff);
        mcp += misclassification_penalty(is_solved, is_solved ? SolvedStage::schedule : SolvedStage::none, time, vbs, cutoff);
        solved += is_solved ? 1 : 0;
        ++n;
    }

    [[nodiscard]] MeasureTriple mean() const {
        if (n == 0) {
            throw DataError{ "baseline over an empty instance list" };
        }
        const auto d = static_cast<double>(n);
        return MeasureTriple{ par10 / d, mcp / d, static_cast<double>(solved) / d };
    }
};

std::size_t require_instance(const Scenario &s, const std::string &id) {
    const auto idx = s.instance_index(id);
    if (!idx) {
        throw DataError{ fmt::format("instance '{}' is not part of scenario '{}'", id, s.scenario_id) };
    }
    return *idx;
}

}  // namespace

MeasureTriple vbs_triple(const Scenario &s, const std::vector<std::string> &instances) {
    Accumulator acc;
    for (const auto &id : instances) {
        const std::size_t i = require_instance(s, id);
        bool any = false;
        double best = 0.0;
        for (std::size_t a = 0; a < s.algorithms.size(); ++a) {
            const RunRecord &rec = s.run(i, a);
            if (rec.status == RunStatus::ok && (!any || rec.runtime < best)) {
                best = rec.runtime;
                any = true;
            }
        }
        acc.add(any, any ? best : s.cutoff, any ? best : s.cutoff, s.cutoff);
    }
    return acc.mean();
}

MeasureTriple sb_triple(const Scenario &s, std::string_view sb_algorithm, const std::vector<std::string> &instances) {
    const auto a = s.algorithm_index(sb_algorithm);
    if (!a) {
        throw DataError{ fmt::format("single best '{}' is not an algorithm of scenario '{}'", sb_algorithm, s.scenario_id) };
    }
    Accumulator acc;
    for (const auto &id : instances) {
        const std::size_t i = require_instance(s, id);
        const RunRecord &rec = s.run(i, *a);
        const bool ok = rec.status == RunStatus::ok && rec.runtime <= s.cutoff;
        acc.add(ok, ok ? rec.runtime : s.cutoff, vbs_time(s, i), s.cutoff);
    }
    return acc.mean();
}

NormalizationContext make_normalization(const Scenario &truth, std::string sb_algorithm, const std::vector<std::string> &instances) {
    NormalizationContext ctx;
    ctx.vbs = vbs_triple(truth, instances);
    ctx.sb = sb_triple(truth, sb_algorithm, instances);
    ctx.sb_algorithm = std::move(sb_algorithm);
    return ctx;
}

double normalize(double value, const NormalizationContext &ctx, Measure m) noexcept {
    const double v = ctx.vbs.get(m);
    const double s = ctx.sb.get(m);
    if (s == v) {
        return 0.0;
    }
    return (value - v) / (s - v);
}

// ---------------------------------------------------------------------------

void ScoreTable::add(ScoreKey key, ScoreValue value) {
    const auto [it, inserted] = entries_.emplace(std::move(key), value);
    if (!inserted) {
        throw DataError{ fmt::format("duplicate score for ({}, {}, {}, {})", it->first.system, it->first.scenario, it->first.split,
                                     to_string(it->first.measure)) };
    }
}

void ScoreTable::add_evaluation(const std::string &system, const std::string &scenario, std::size_t split, const MeasureTriple &raw,
                                const NormalizationContext &ctx) {
    for (const Measure m : all_measures) {
        add(ScoreKey{ system, scenario, split, m }, ScoreValue{ raw.get(m), normalize(raw.get(m), ctx, m) });
    }
}

std::vector<std::string> ScoreTable::systems() const {
    std::set<std::string> names;
    for (const auto &[key, value] : entries_) {
        names.insert(key.system);
    }
    return { names.begin(), names.end() };
}

std::vector<std::string> ScoreTable::scenarios() const {
    std::set<std::string> names;
    for (const auto &[key, value] : entries_) {
        names.insert(key.scenario);
    }
    return { names.begin(), names.end() };
}

void write_scores(std::ostream &out, const ScoreTable &table) {
    out << scores_header << '\n';
    for (const auto &[key, value] : table.entries()) {
        out << detail::csv_field(key.system) << ',' << detail::csv_field(key.scenario) << ',' << key.split << ',' << to_string(key.measure)
            << ',' << detail::format_double(value.raw) << ',' << detail::format_double(value.normalized) << '\n';
    }
}

ScoreTable parse_scores(std::istream &in, const std::string &source_name) {
    ScoreTable table;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> fields;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) {
            continue;
        }
        if (!detail::split_csv_line(line, fields)) {
            throw ParseError{ source_name, line_no, "unterminated quoted field" };
        }
        if (!header) {
            const std::vector<std::string> expected{ "system", "scenario", "split", "measure", "raw", "normalized" };
            if (fields != expected) {
                throw ParseError{ source_name, line_no, fmt::format("expected header '{}'", scores_header) };
            }
            header = true;
            continue;
        }
        if (fields.size() != 6) {
            throw ParseError{ source_name, line_no, fmt::format("expected 6 fields, found {}", fields.size()) };
        }
        const auto split = detail::parse_double(fields[2]);
        const auto raw = detail::parse_double(fields[4]);
        const auto norm = detail::parse_double(fields[5]);
        if (!split || *split < 0 || *split != std::floor(*split) || !raw || !norm) {
            throw ParseError{ source_name, line_no, "invalid numeric field" };
        }
        Measure m{};
        try {
            m = parse_measure(fields[3]);
        } catch (const ParseError &) {
            throw ParseError{ source_name, line_no, fmt::format("unknown measure '{}'", fields[3]) };
        }
        try {
            table.add(ScoreKey{ fields[0], fields[1], static_cast<std::size_t>(*split), m }, ScoreValue{ *raw, *norm });
        } catch (const DataError &e) {
            throw ParseError{ source_name, line_no, e.what() };
        }
    }
    if (!header) {
        throw ParseError{ source_name, line_no, "empty scores file" };
    }
    return table;
}

}  // namespace asbench
