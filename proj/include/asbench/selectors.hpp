#pragma once

#include "asbench/manifest.hpp"
#include "asbench/scenario.hpp"
#include "asbench/schedule.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace asbench {

/// Instance x feature matrix. Cells are finite after preprocess() (imputed and z-normalized).
struct FeatureMatrix {
    std::vector<std::string> instances;
    std::vector<std::string> features;
    Grid<double> values;
    std::vector<double> means;    // training statistics, per feature
    std::vector<double> stddevs;  // population standard deviation, > 0

    [[nodiscard]] std::span<const double> row(std::size_t i) const;
};

/**
 * Builds aligned train/test matrices: features present in both scenarios,
 * minus those constant or entirely missing on the training side; missing
 * cells are imputed with the training mean and every column is z-normalized
 * with training statistics. Throws DataError when no feature survives.
 */
[[nodiscard]] std::pair<FeatureMatrix, FeatureMatrix> preprocess(const Scenario &train, const Scenario &test);

/// Learner interface: one scalar target per training row.
class Regressor {
  public:
    virtual ~Regressor() = default;
    virtual void fit(const FeatureMatrix &x, std::span<const double> targets) = 0;
    [[nodiscard]] virtual double predict(std::span<const double> query) const = 0;
};

using LearnerFactory = std::function<std::unique_ptr<Regressor>()>;

/// Mean target of the k nearest rows (Euclidean); distance ties resolved by row order.
[[nodiscard]] double knn_regress(const FeatureMatrix &x, std::span<const double> targets, std::span<const double> query, std::size_t k);

class KnnRegressor final : public Regressor {
  public:
    explicit KnnRegressor(std::size_t k = 3) : k_{ k } {}

    void fit(const FeatureMatrix &x, std::span<const double> targets) override;
    [[nodiscard]] double predict(std::span<const double> query) const override;

  private:
    std::size_t k_;
    FeatureMatrix x_;
    std::vector<double> targets_;
};

[[nodiscard]] LearnerFactory knn_learner(std::size_t k = 3);

/// Training performance: runtime when ok, 10 x cutoff otherwise.
[[nodiscard]] double par10_target(const RunRecord &rec, double cutoff) noexcept;

struct RegressionModel {
    enum class Kind { per_algorithm, pairwise };

    Kind kind{ Kind::per_algorithm };
    std::vector<std::string> algorithms;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // pairwise only: (i, j), i < j by name order
    std::vector<std::unique_ptr<Regressor>> targets;        // one per algorithm or per pair
    double cutoff{ 0.0 };
};

/// One regressor per algorithm on PAR10 targets.
[[nodiscard]] RegressionModel train_regr(const Scenario &train, const FeatureMatrix &x, const LearnerFactory &learner);
/// One regressor per unordered algorithm pair on perf_i - perf_j.
[[nodiscard]] RegressionModel train_regr_pairs(const Scenario &train, const FeatureMatrix &x, const LearnerFactory &learner);

/// Index (into model.algorithms) of the predicted best algorithm for one row.
[[nodiscard]] std::size_t choose_algorithm(const RegressionModel &model, std::span<const double> row);

/// Single-run schedule per test instance: runID 1, chosen solver, timeLimit = cutoff.
[[nodiscard]] Schedule predict_schedule(const RegressionModel &model, const FeatureMatrix &test);

struct SelectorOutput {
    Schedule schedule;
    SystemManifest manifest;  // no presolver, the features actually used
};

/// Appendix-style llama-regr / llama-regrPairs analogues end to end on a train/test pair.
[[nodiscard]] SelectorOutput run_regr_selector(const Scenario &train, const Scenario &test, const LearnerFactory &learner,
                                               std::string system_name = "llama-regr");
[[nodiscard]] SelectorOutput run_pairs_selector(const Scenario &train, const Scenario &test, const LearnerFactory &learner,
                                                std::string system_name = "llama-regrPairs");

struct ReferenceSchedules {
    Schedule sb;
    Schedule vbs;
    std::string sb_algorithm;
};

/**
 * SB runs `sb_algorithm` on every instance; VBS runs each instance's fastest
 * successful algorithm (the SB choice when none succeeds). Both use the full
 * cutoff as time limit. `truth` must carry real runtimes.
 */
[[nodiscard]] ReferenceSchedules reference_submissions(const Scenario &truth, const std::vector<std::string> &instances,
                                                       const std::string &sb_algorithm);
[[nodiscard]] ReferenceSchedules reference_submissions(const Scenario &truth);

}  // namespace asbench
