#include "asbench/simulator.hpp"

#include "asbench/error.hpp"
#include "csv.hpp"
#include "text.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace asbench {

std::string_view to_string(SolvedStage stage) noexcept {
    switch (stage) {
        case SolvedStage::presolver: return "presolver";
        case SolvedStage::features: return "features";
        case SolvedStage::schedule: return "schedule";
        case SolvedStage::none: return "none";
    }
    return "none";
}

double vbs_time(const Scenario &truth, std::size_t inst) {
    double best = truth.cutoff;
    bool any = false;
    for (std::size_t a = 0; a < truth.algorithms.size(); ++a) {
        const RunRecord &rec = truth.run(inst, a);
        if (rec.status == RunStatus::ok && (!any || rec.runtime < best)) {
            best = rec.runtime;
            any = true;
        }
    }
    return best;
}

double par10_score(bool solved, double elapsed, double cutoff) noexcept { return solved ? elapsed : 10.0 * cutoff; }

double misclassification_penalty(bool solved, SolvedStage stage, double elapsed, double vbs, double cutoff) noexcept {
    if (solved && stage == SolvedStage::features) {
        return 0.0;
    }
    const double achieved = solved ? elapsed : cutoff;
    return std::max(0.0, achieved - vbs);
}

InstanceOutcome simulate_instance(const Scenario &truth, const SystemManifest &m, std::string_view instance,
                                  std::span<const ScheduleEntry> entries) {
    const auto inst = truth.instance_index(instance);
    if (!inst) {
        throw DataError{ fmt::format("instance '{}' is not part of scenario '{}'", instance, truth.scenario_id) };
    }
    std::vector<ScheduleEntry> ordered(entries.begin(), entries.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const ScheduleEntry &a, const ScheduleEntry &b) { return a.run_id < b.run_id; });
    std::vector<std::size_t> solver_idx;
    solver_idx.reserve(ordered.size());
    for (const auto &e : ordered) {
        const auto a = truth.algorithm_index(e.solver);
        if (!a) {
            throw DataError{ fmt::format("schedule for instance '{}' references unknown solver '{}'", instance, e.solver) };
        }
        solver_idx.push_back(*a);
    }

    InstanceOutcome out;
    out.instance_id = std::string(instance);
    const double cutoff = truth.cutoff;

    const auto finish = [&](bool solved, SolvedStage stage) {
        out.solved = solved;
        out.stage = solved ? stage : SolvedStage::none;
        out.par10 = par10_score(solved, out.elapsed, cutoff);
        out.mcp = misclassification_penalty(solved, out.stage, out.elapsed, vbs_time(truth, *inst), cutoff);
        return out;
    };

    // presolver
    if (m.presolver) {
        const auto p = truth.algorithm_index(m.presolver->algorithm);
        if (!p) {
            throw DataError{ fmt::format("presolver '{}' is not an algorithm of scenario '{}'", m.presolver->algorithm, truth.scenario_id) };
        }
        const RunRecord &rec = truth.run(*inst, *p);
        if (rec.status == RunStatus::ok && rec.runtime <= m.presolver->seconds) {
            out.elapsed = rec.runtime;
            out.solver_used = m.presolver->algorithm;
            return finish(true, SolvedStage::presolver);
        }
        out.elapsed += m.presolver->seconds;
    }

    // feature computation
    bool presolved_by_features = false;
    for (const std::size_t k : retained_steps(m, truth)) {
        out.elapsed += truth.feature_costs(*inst, k).value_or(0.0);
        presolved_by_features = presolved_by_features || truth.feature_runstatus(*inst, k) == FeatureStatus::presolved;
    }
    if (presolved_by_features) {
        return finish(true, SolvedStage::features);
    }

    // schedule
    for (std::size_t r = 0; r < ordered.size(); ++r) {
        const RunRecord &rec = truth.run(*inst, solver_idx[r]);
        if (rec.status == RunStatus::ok && rec.runtime <= ordered[r].time_limit) {
            out.elapsed += rec.runtime;
            if (out.elapsed <= cutoff) {
                out.solver_used = ordered[r].solver;
                return finish(true, SolvedStage::schedule);
            }
            return finish(false, SolvedStage::none);
        }
        out.elapsed += std::min(ordered[r].time_limit, rec.runtime);
        if (out.elapsed > cutoff) {
            return finish(false, SolvedStage::none);
        }
    }
    return finish(false, SolvedStage::none);
}

std::vector<InstanceOutcome> simulate_submission(const Scenario &truth, const SystemManifest &m, const Schedule &schedule,
                                                 const std::vector<std::string> &test_instances) {
    check_manifest_binding(m, truth);
    const std::set<std::string_view> test_set(test_instances.begin(), test_instances.end());
    const auto groups = group_by_instance(schedule);
    for (const auto &[id, entries] : groups) {
        if (!test_set.count(id)) {
            throw DataError{ fmt::format("schedule row for '{}', which is not a test instance of scenario '{}'", id, truth.scenario_id) };
        }
    }
    std::vector<InstanceOutcome> outcomes;
    outcomes.reserve(test_instances.size());
    const std::vector<ScheduleEntry> none;
    for (const auto &id : test_instances) {
        const auto it = groups.find(id);
        outcomes.push_back(simulate_instance(truth, m, id, it == groups.end() ? std::span<const ScheduleEntry>(none)
                                                                              : std::span<const ScheduleEntry>(it->second)));
    }
    return outcomes;
}

void write_outcomes(std::ostream &out, const std::vector<InstanceOutcome> &outcomes) {
    out << outcome_header << '\n';
    for (const auto &o : outcomes) {
        out << detail::csv_field(o.instance_id) << ',' << (o.solved ? "true" : "false") << ',' << detail::format_double(o.elapsed) << ','
            << to_string(o.stage) << ',' << detail::format_double(o.par10) << ',' << detail::format_double(o.mcp) << '\n';
    }
}

}  // namespace asbench
