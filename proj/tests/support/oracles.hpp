#pragma once

// Straight-line reference implementations used to cross-check the library.
// None of these call into the code under test except for plain data access.

#include "asbench/manifest.hpp"
#include "asbench/ranking.hpp"
#include "asbench/scenario.hpp"
#include "asbench/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracles {

using namespace asbench;

struct Trace {
    bool solved{ false };
    double elapsed{ 0.0 };
    double par10{ 0.0 };
};

inline std::size_t find_index(const std::vector<std::string> &v, const std::string &x) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
}

/// Feature steps a manifest pays for, by explicit closure over `requires`.
inline std::set<std::string> paid_steps(const SystemManifest &m, const Scenario &s) {
    std::set<std::string> paid;
    if (!m.compute_features) {
        return paid;
    }
    for (const auto &step : s.feature_steps) {
        bool wanted = !m.feature_subset;
        for (const auto &f : step.provides) {
            wanted = wanted || m.feature_subset->count(f) > 0;
        }
        if (wanted) {
            paid.insert(step.name);
        }
    }
    for (std::size_t round = 0; round < s.feature_steps.size(); ++round) {
        for (const auto &step : s.feature_steps) {
            if (paid.count(step.name)) {
                paid.insert(step.requires_steps.begin(), step.requires_steps.end());
            }
        }
    }
    return paid;
}

/// Replays one instance exactly as the protocol describes it, one stage at a time.
inline Trace brute_force_trace(const Scenario &s, const SystemManifest &m, const std::string &instance, std::vector<ScheduleEntry> entries) {
    const std::size_t i = find_index(s.instances, instance);
    const double cutoff = s.cutoff;
    const auto done = [&](bool solved, double elapsed) { return Trace{ solved, elapsed, solved ? elapsed : 10.0 * cutoff }; };

    double elapsed = 0.0;
    if (m.presolver) {
        const RunRecord rec = *s.runs(i, find_index(s.algorithms, m.presolver->algorithm));
        if (rec.status == RunStatus::ok && rec.runtime <= m.presolver->seconds) {
            return done(true, rec.runtime);
        }
        elapsed = m.presolver->seconds;
    }

    const auto paid = paid_steps(m, s);
    bool presolved = false;
    for (std::size_t k = 0; k < s.feature_steps.size(); ++k) {
        if (paid.count(s.feature_steps[k].name)) {
            const auto c = s.feature_costs(i, k);
            elapsed += c ? *c : 0.0;
            if (s.feature_runstatus(i, k) == FeatureStatus::presolved) {
                presolved = true;
            }
        }
    }
    if (presolved) {
        return done(true, elapsed);
    }

    // insertion sort keeps equal run ids in input order
    for (std::size_t a = 1; a < entries.size(); ++a) {
        for (std::size_t b = a; b > 0 && entries[b].run_id < entries[b - 1].run_id; --b) {
            std::swap(entries[b], entries[b - 1]);
        }
    }
    for (const auto &e : entries) {
        const RunRecord rec = *s.runs(i, find_index(s.algorithms, e.solver));
        const bool succeeds = rec.status == RunStatus::ok && rec.runtime <= e.time_limit;
        if (succeeds) {
            elapsed += rec.runtime;
            return done(elapsed <= cutoff, elapsed);
        }
        elapsed += rec.runtime < e.time_limit ? rec.runtime : e.time_limit;
        if (elapsed > cutoff) {
            return done(false, elapsed);
        }
    }
    return done(false, elapsed);
}

/// Summed Spearman rho of `order` (best first) against all ballots, using
/// rho = 1 - 6 sum d^2 / (n (n^2 - 1)) with average ranks on ballot ties.
inline double summed_rho(const std::vector<std::string> &order, const std::vector<RankBallot> &ballots) {
    double total = 0.0;
    for (const auto &b : ballots) {
        const double n = static_cast<double>(b.systems.size());
        if (b.systems.size() < 2) {
            total += 1.0;
            continue;
        }
        double d2 = 0.0;
        for (std::size_t k = 0; k < b.systems.size(); ++k) {
            const double pos = static_cast<double>(find_index(order, b.systems[k])) + 1.0;
            d2 += (pos - b.ranks[k]) * (pos - b.ranks[k]);
        }
        total += 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
    }
    return total;
}

/// Maximum summed rho over every permutation of `systems`.
inline double best_summed_rho(std::vector<std::string> systems, const std::vector<RankBallot> &ballots) {
    std::sort(systems.begin(), systems.end());
    double best = -std::numeric_limits<double>::infinity();
    do {
        best = std::max(best, summed_rho(systems, ballots));
    } while (std::next_permutation(systems.begin(), systems.end()));
    return best;
}

/// Average ranks (1-based) of `scores`, lower score = better, ties share the mean rank.
inline std::vector<double> tied_ranks(const std::vector<double> &scores) {
    std::vector<double> ranks(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        double below = 0;
        double equal = 0;
        for (const double v : scores) {
            below += v < scores[i] ? 1 : 0;
            equal += v == scores[i] ? 1 : 0;
        }
        ranks[i] = below + (equal + 1.0) / 2.0;
    }
    return ranks;
}

/// Expected out-of-bag fraction of a size-n bootstrap, by direct simulation with an unrelated generator.
inline double simulated_oob_fraction(std::size_t n, std::size_t trials, unsigned seed) {
    std::minstd_rand gen{ seed };
    double total = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<char> drawn(n, 0);
        for (std::size_t d = 0; d < n; ++d) {
            drawn[gen() % n] = 1;
        }
        total += static_cast<double>(std::count(drawn.begin(), drawn.end(), 0)) / static_cast<double>(n);
    }
    return total / static_cast<double>(trials);
}

}  // namespace oracles
