#include "asbench/selectors.hpp"

#include "asbench/error.hpp"
#include "asbench/metrics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace asbench {

std::span<const double> FeatureMatrix::row(std::size_t i) const {
    return { &values(i, 0), values.cols() };
}

std::pair<FeatureMatrix, FeatureMatrix> preprocess(const Scenario &train, const Scenario &test) {
    FeatureMatrix tr;
    FeatureMatrix te;
    std::vector<std::size_t> train_cols;
    std::vector<std::size_t> test_cols;
    for (std::size_t f = 0; f < train.features.size(); ++f) {
        const auto in_test = test.feature_index(train.features[f]);
        if (!in_test) {
            continue;
        }
        std::vector<double> observed;
        for (std::size_t i = 0; i < train.instances.size(); ++i) {
            if (const auto &v = train.feature_values(i, f); v && std::isfinite(*v)) {
                observed.push_back(*v);
            }
        }
        if (observed.empty()) {
            continue;  // entirely missing
        }
        const double mean = std::accumulate(observed.begin(), observed.end(), 0.0) / static_cast<double>(observed.size());
        double var = 0.0;
        for (const double v : observed) {
            var += (v - mean) * (v - mean);
        }
        const double sd = std::sqrt(var / static_cast<double>(observed.size()));
        const bool constant = std::all_of(observed.begin(), observed.end(), [&](double v) { return v == observed.front(); });
        if (constant || !(sd > 0.0)) {
            continue;
        }
        train_cols.push_back(f);
        test_cols.push_back(*in_test);
        tr.features.push_back(train.features[f]);
        tr.means.push_back(mean);
        tr.stddevs.push_back(sd);
    }
    if (tr.features.empty()) {
        throw DataError{ fmt::format("scenario '{}': no usable features shared by training and test data", train.scenario_id) };
    }
    te.features = tr.features;
    te.means = tr.means;
    te.stddevs = tr.stddevs;

    const auto fill = [&](FeatureMatrix &m, const Scenario &s, const std::vector<std::size_t> &cols) {
        m.instances = s.instances;
        m.values = Grid<double>(s.instances.size(), cols.size());
        for (std::size_t i = 0; i < s.instances.size(); ++i) {
            for (std::size_t c = 0; c < cols.size(); ++c) {
                const auto &v = s.feature_values(i, cols[c]);
                const double raw = (v && std::isfinite(*v)) ? *v : m.means[c];
                m.values(i, c) = (raw - m.means[c]) / m.stddevs[c];
            }
        }
    };
    fill(tr, train, train_cols);
    fill(te, test, test_cols);
    return { std::move(tr), std::move(te) };
}

// ---------------------------------------------------------------------------
// k-NN

double knn_regress(const FeatureMatrix &x, std::span<const double> targets, std::span<const double> query, std::size_t k) {
    const std::size_t n = x.values.rows();
    if (n == 0) {
        throw DataError{ "k-NN regression on an empty training set" };
    }
    if (k < 1 || k > n) {
        throw UsageError{ fmt::format("k-NN needs 1 <= k <= {} training rows, got k = {}", n, k) };
    }
    if (targets.size() != n || query.size() != x.values.cols()) {
        throw DataError{ "k-NN dimension mismatch" };
    }
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t r = 0; r < n; ++r) {
        double d2 = 0.0;
        const auto row = x.row(r);
        for (std::size_t c = 0; c < query.size(); ++c) {
            d2 += (row[c] - query[c]) * (row[c] - query[c]);
        }
        dist[r] = { d2, r };
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sum += targets[dist[i].second];
    }
    return sum / static_cast<double>(k);
}

void KnnRegressor::fit(const FeatureMatrix &x, std::span<const double> targets) {
    if (x.values.rows() != targets.size()) {
        throw DataError{ "k-NN fit: one target per training row required" };
    }
    x_ = x;
    targets_.assign(targets.begin(), targets.end());
}

double KnnRegressor::predict(std::span<const double> query) const {
    return knn_regress(x_, targets_, query, std::min(k_, x_.values.rows()));
}

LearnerFactory knn_learner(std::size_t k) {
    if (k < 1) {
        throw UsageError{ "k-NN needs k >= 1" };
    }
    return [k] { return std::make_unique<KnnRegressor>(k); };
}

// ---------------------------------------------------------------------------
// Regression selectors

double par10_target(const RunRecord &rec, double cutoff) noexcept {
    return rec.status == RunStatus::ok ? rec.runtime : 10.0 * cutoff;
}

namespace {

std::vector<std::size_t> algorithms_by_name(const Scenario &s) {
    if (s.algorithms.size() < 2) {
        throw DataError{ fmt::format("scenario '{}': a selector needs at least 2 algorithms", s.scenario_id) };
    }
    std::vector<std::size_t> idx(s.algorithms.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.algorithms[a] < s.algorithms[b]; });
    return idx;
}

/// Row r of `x` corresponds to training instance rows[r].
std::vector<std::size_t> aligned_rows(const Scenario &train, const FeatureMatrix &x) {
    std::vector<std::size_t> rows;
    rows.reserve(x.instances.size());
    for (const auto &id : x.instances) {
        const auto i = train.instance_index(id);
        if (!i) {
            throw DataError{ fmt::format("feature matrix row '{}' is not a training instance", id) };
        }
        rows.push_back(*i);
    }
    if (rows.empty()) {
        throw DataError{ fmt::format("scenario '{}': no training instances", train.scenario_id) };
    }
    return rows;
}

}  // namespace

RegressionModel train_regr(const Scenario &train, const FeatureMatrix &x, const LearnerFactory &learner) {
    const auto order = algorithms_by_name(train);
    const auto rows = aligned_rows(train, x);
    RegressionModel model;
    model.kind = RegressionModel::Kind::per_algorithm;
    model.cutoff = train.cutoff;
    for (const std::size_t a : order) {
        std::vector<double> y;
        y.reserve(rows.size());
        for (const std::size_t i : rows) {
            y.push_back(par10_target(train.run(i, a), train.cutoff));
        }
        auto reg = learner();
        reg->fit(x, y);
        model.algorithms.push_back(train.algorithms[a]);
        model.targets.push_back(std::move(reg));
    }
    return model;
}

RegressionModel train_regr_pairs(const Scenario &train, const FeatureMatrix &x, const LearnerFactory &learner) {
    const auto order = algorithms_by_name(train);
    const auto rows = aligned_rows(train, x);
    RegressionModel model;
    model.kind = RegressionModel::Kind::pairwise;
    model.cutoff = train.cutoff;
    for (const std::size_t a : order) {
        model.algorithms.push_back(train.algorithms[a]);
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            std::vector<double> y;
            y.reserve(rows.size());
            for (const std::size_t r : rows) {
                y.push_back(par10_target(train.run(r, order[i]), train.cutoff) - par10_target(train.run(r, order[j]), train.cutoff));
            }
            auto reg = learner();
            reg->fit(x, y);
            model.pairs.emplace_back(i, j);
            model.targets.push_back(std::move(reg));
        }
    }
    return model;
}

std::size_t choose_algorithm(const RegressionModel &model, std::span<const double> row) {
    if (model.targets.empty()) {
        throw DataError{ "untrained selection model" };
    }
    std::vector<double> score(model.algorithms.size(), 0.0);
    if (model.kind == RegressionModel::Kind::per_algorithm) {
        for (std::size_t a = 0; a < model.algorithms.size(); ++a) {
            score[a] = model.targets.at(a)->predict(row);
        }
    } else {
        for (std::size_t p = 0; p < model.pairs.size(); ++p) {
            const double d = model.targets[p]->predict(row);  // predicted perf_i - perf_j
            score[model.pairs[p].first] += d;
            score[model.pairs[p].second] -= d;
        }
    }
    return static_cast<std::size_t>(std::min_element(score.begin(), score.end()) - score.begin());
}

Schedule predict_schedule(const RegressionModel &model, const FeatureMatrix &test) {
    Schedule schedule;
    schedule.reserve(test.instances.size());
    for (std::size_t i = 0; i < test.instances.size(); ++i) {
        const std::size_t a = choose_algorithm(model, test.row(i));
        schedule.push_back(ScheduleEntry{ test.instances[i], 1, model.algorithms[a], model.cutoff });
    }
    return schedule;
}

namespace {

SelectorOutput run_selector(const Scenario &train, const Scenario &test, const LearnerFactory &learner, std::string system_name,
                            bool pairwise) {
    const auto [x_train, x_test] = preprocess(train, test);
    const RegressionModel model = pairwise ? train_regr_pairs(train, x_train, learner) : train_regr(train, x_train, learner);
    SelectorOutput out;
    out.schedule = predict_schedule(model, x_test);
    out.manifest.system_name = std::move(system_name);
    out.manifest.feature_subset = std::set<std::string>(x_train.features.begin(), x_train.features.end());
    return out;
}

}  // namespace

SelectorOutput run_regr_selector(const Scenario &train, const Scenario &test, const LearnerFactory &learner, std::string system_name) {
    return run_selector(train, test, learner, std::move(system_name), false);
}

SelectorOutput run_pairs_selector(const Scenario &train, const Scenario &test, const LearnerFactory &learner, std::string system_name) {
    return run_selector(train, test, learner, std::move(system_name), true);
}

// ---------------------------------------------------------------------------

ReferenceSchedules reference_submissions(const Scenario &truth, const std::vector<std::string> &instances, const std::string &sb_algorithm) {
    const auto sb = truth.algorithm_index(sb_algorithm);
    if (!sb) {
        throw DataError{ fmt::format("single best '{}' is not an algorithm of scenario '{}'", sb_algorithm, truth.scenario_id) };
    }
    ReferenceSchedules out;
    out.sb_algorithm = sb_algorithm;
    for (const auto &id : instances) {
        const auto i = truth.instance_index(id);
        if (!i) {
            throw DataError{ fmt::format("instance '{}' is not part of scenario '{}'", id, truth.scenario_id) };
        }
        std::optional<std::size_t> best;
        for (std::size_t a = 0; a < truth.algorithms.size(); ++a) {
            const RunRecord &rec = truth.run(*i, a);
            if (rec.status == RunStatus::ok && (!best || rec.runtime < truth.run(*i, *best).runtime)) {
                best = a;
            }
        }
        out.sb.push_back(ScheduleEntry{ id, 1, sb_algorithm, truth.cutoff });
        out.vbs.push_back(ScheduleEntry{ id, 1, truth.algorithms[best.value_or(*sb)], truth.cutoff });
    }
    return out;
}

ReferenceSchedules reference_submissions(const Scenario &truth) {
    return reference_submissions(truth, truth.instances, single_best(truth));
}

}  // namespace asbench
