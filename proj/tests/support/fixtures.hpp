#pragma once

// Scenario fixtures shared by the unit and acceptance suites.

#include "asbench/scenario.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef ASBENCH_TEST_DATA
#error "ASBENCH_TEST_DATA must point at tests/data"
#endif

namespace fixtures {

using namespace asbench;

inline std::filesystem::path data_dir() { return ASBENCH_TEST_DATA; }

inline std::string read_file(const std::filesystem::path &p) {
    std::ifstream in{ p, std::ios::binary };
    return { std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>() };
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
  public:
    explicit TempDir(const std::string &tag = "asbench") {
        static std::atomic<unsigned> counter{ 0 };
        const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        path_ = std::filesystem::temp_directory_path() / (tag + "_" + std::to_string(stamp) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir &) = delete;
    TempDir &operator=(const TempDir &) = delete;

    [[nodiscard]] const std::filesystem::path &path() const { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string &rel) const { return path_ / rel; }

  private:
    std::filesystem::path path_;
};

/// Shell scenario: every run ok at 1 s, every feature value 0, costs 0, statuses ok.
inline Scenario blank_scenario(std::string id, double cutoff, std::vector<std::string> algorithms, std::vector<std::string> instances,
                               std::vector<FeatureStep> steps) {
    Scenario s;
    s.scenario_id = std::move(id);
    s.cutoff = cutoff;
    s.algorithms = std::move(algorithms);
    s.instances = std::move(instances);
    s.feature_steps = std::move(steps);
    for (const auto &step : s.feature_steps) {
        s.features.insert(s.features.end(), step.provides.begin(), step.provides.end());
    }
    const std::size_t n = s.instances.size();
    s.runs = Grid<std::optional<RunRecord>>(n, s.algorithms.size(), RunRecord{ 1.0, RunStatus::ok });
    s.feature_values = Grid<std::optional<double>>(n, s.features.size(), 0.0);
    s.feature_costs = Grid<std::optional<double>>(n, s.feature_steps.size(), 0.0);
    s.feature_runstatus = Grid<FeatureStatus>(n, s.feature_steps.size(), FeatureStatus::ok);
    s.rebuild_index();
    return s;
}

inline std::vector<std::string> ids(const std::string &prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i) {
        out.push_back(prefix + std::to_string(i));
    }
    return out;
}

/**
 * Two well-separated clusters in (f1, f2). Cluster 0 (two thirds of the
 * instances) is solved quickly by "alpha" while "beta" times out; cluster 1
 * is the reverse. alpha is therefore the single best and a per-cluster
 * choice closes almost the whole SB-VBS gap.
 */
inline Scenario two_cluster_scenario(std::size_t n = 60, std::uint32_t seed = 7) {
    Scenario s = blank_scenario("two_cluster", 100.0, { "alpha", "beta" }, ids("inst", n), { FeatureStep{ "base", { "f1", "f2" }, {} } });
    std::mt19937 gen{ seed };
    std::uniform_real_distribution<double> noise{ -1.0, 1.0 };
    std::uniform_real_distribution<double> fast{ 2.0, 8.0 };
    for (std::size_t i = 0; i < n; ++i) {
        const bool second = i % 3 == 2;
        s.feature_values(i, 0) = (second ? 10.0 : 0.0) + noise(gen);
        s.feature_values(i, 1) = (second ? -5.0 : 5.0) + noise(gen);
        s.feature_costs(i, 0) = 0.1;
        const RunRecord good{ fast(gen), RunStatus::ok };
        const RunRecord bad{ 100.0, RunStatus::timeout };
        s.runs(i, 0) = second ? bad : good;
        s.runs(i, 1) = second ? good : bad;
    }
    return s;
}

/// Random scenario with a non-degenerate SB/VBS gap (used for the reference identities).
inline Scenario random_scenario(std::mt19937 &gen, std::string id, std::size_t n_instances, std::size_t n_algorithms) {
    Scenario s = blank_scenario(std::move(id), 50.0, ids("a", n_algorithms), ids("i", n_instances),
                                { FeatureStep{ "cheap", { "x1", "x2" }, {} }, FeatureStep{ "deep", { "x3" }, { "cheap" } } });
    std::uniform_real_distribution<double> runtime{ 0.1, 50.0 };
    std::uniform_real_distribution<double> value{ -3.0, 3.0 };
    std::uniform_real_distribution<double> cost{ 0.0, 2.0 };
    std::bernoulli_distribution fails{ 0.3 };
    for (std::size_t i = 0; i < n_instances; ++i) {
        for (std::size_t a = 0; a < n_algorithms; ++a) {
            s.runs(i, a) = fails(gen) ? RunRecord{ 50.0, RunStatus::timeout } : RunRecord{ runtime(gen), RunStatus::ok };
        }
        for (std::size_t f = 0; f < s.features.size(); ++f) {
            s.feature_values(i, f) = value(gen);
        }
        for (std::size_t st = 0; st < s.feature_steps.size(); ++st) {
            s.feature_costs(i, st) = cost(gen);
        }
    }
    return s;
}

}  // namespace fixtures
