// asbench: command-line front end for split generation, evaluation and ranking.
//
// Exit codes: 0 success, 1 usage error, 2 data or parse error, 3 internal error.

#include "asbench/error.hpp"
#include "asbench/pipeline.hpp"
#include "asbench/schedule.hpp"
#include "asbench/selectors.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <map>

namespace {

using asbench::RunConfig;

void add_scenarios(CLI::App &cmd, RunConfig &cfg) {
    cmd.add_option("--scenarios", cfg.scenarios, "ASlib scenario directories")->required()->check(CLI::ExistingDirectory);
}

void add_systems(CLI::App &cmd, RunConfig &cfg, bool required) {
    auto *opt = cmd.add_option("--systems", cfg.systems, "system manifest files (JSON) or builtin:regr|regr_pairs|sb|vbs");
    if (required) {
        opt->required();
    }
}

void add_split_options(CLI::App &cmd, RunConfig &cfg) {
    cmd.add_option("--splits", cfg.n_splits, "bootstrap splits per scenario")->capture_default_str()->check(CLI::PositiveNumber);
    cmd.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    cmd.add_option("--folds", cfg.folds, "cross-validation folds written per split")->capture_default_str()->check(CLI::PositiveNumber);
    cmd.add_option("--cv-assignment", cfg.cv_assignment, "fold assignment of the cv file")
        ->transform(CLI::CheckedTransformer(std::map<std::string, asbench::FoldAssignment>{ { "round_robin", asbench::FoldAssignment::round_robin },
                                                                                            { "roundrobin", asbench::FoldAssignment::round_robin },
                                                                                            { "blocks", asbench::FoldAssignment::blocks } }))
        ->option_text("round_robin|blocks [round_robin]");
}

void add_eval_options(CLI::App &cmd, RunConfig &cfg) {
    cmd.add_option("--sb-scope", cfg.sb_scope, "instances that determine the single best solver")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, asbench::SbScope>{ { "full", asbench::SbScope::full }, { "train", asbench::SbScope::train } }))
        ->option_text("full|train [full]");
    cmd.add_option("--threads", cfg.threads, "worker threads (0: one per core)")->capture_default_str();
}

void add_rank_options(CLI::App &cmd, RunConfig &cfg) {
    cmd.add_option("--resamples", cfg.resamples, "bootstrap resamples")->capture_default_str()->check(CLI::PositiveNumber);
    cmd.add_option("--confidence", cfg.confidence, "confidence level of the bootstrap interval")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_flag("--plots", cfg.plots, "also write SVG boxplots");
}

void print_splits(const std::vector<asbench::SplitArtifact> &artifacts) {
    for (const auto &a : artifacts) {
        std::cout << fmt::format("{}\t{}\t{}\t{}\n", a.scenario, a.split, a.system.empty() ? "-" : a.system,
                                 a.layout.train_dir.parent_path().generic_string());
    }
}

int run_validate(const std::filesystem::path &dir) {
    const auto result = asbench::load_scenario_report(dir);
    std::cout << result.report.to_string();
    const auto &s = result.scenario;
    std::cout << fmt::format("{}: {} instances, {} algorithms, {} features, {} feature steps, cutoff {}\n", s.scenario_id, s.instances.size(),
                             s.algorithms.size(), s.features.size(), s.feature_steps.size(), s.cutoff);
    return result.report.ok() ? 0 : 2;
}

int run_select(const std::filesystem::path &train_dir, const std::filesystem::path &test_dir, const std::string &selector, std::size_t k,
               const std::filesystem::path &out, const std::filesystem::path &manifest_out) {
    const auto train = asbench::load_scenario(train_dir);
    const auto test = asbench::load_scenario(test_dir);
    const auto learner = asbench::knn_learner(k);
    asbench::SelectorOutput result;
    if (selector == "regr") {
        result = asbench::run_regr_selector(train, test, learner);
    } else if (selector == "regr_pairs") {
        result = asbench::run_pairs_selector(train, test, learner);
    } else {
        throw asbench::UsageError{ fmt::format("unknown selector '{}' (expected regr or regr_pairs)", selector) };
    }
    if (out.empty()) {
        asbench::write_schedule(std::cout, result.schedule);
    } else {
        asbench::write_schedule_file(out, result.schedule);
    }
    if (!manifest_out.empty()) {
        std::ofstream m{ manifest_out, std::ios::binary };
        m << asbench::manifest_to_json(result.manifest);
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{ "Algorithm selection benchmark harness" };
    app.require_subcommand(1);

    RunConfig cfg;
    std::filesystem::path scores_file;

    auto *split = app.add_subcommand("split", "draw bootstrap splits and write train/test scenario directories");
    add_scenarios(*split, cfg);
    add_systems(*split, cfg, false);
    add_split_options(*split, cfg);
    split->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();

    auto *evaluate = app.add_subcommand("evaluate", "simulate every system on every split and write scores.csv");
    add_scenarios(*evaluate, cfg);
    add_systems(*evaluate, cfg, true);
    evaluate->add_option("--splits", cfg.n_splits, "bootstrap splits per scenario")->capture_default_str()->check(CLI::PositiveNumber);
    add_eval_options(*evaluate, cfg);
    evaluate->add_option("--out", cfg.out_dir, "directory holding the splits; receives the scores")->capture_default_str();

    auto *rank = app.add_subcommand("rank", "rank systems from a scores file and write the report bundle");
    rank->add_option("--scores", scores_file, "scores file (default: <out>/scores.csv)");
    rank->add_option("--seed", cfg.seed, "bootstrap seed")->capture_default_str();
    add_rank_options(*rank, cfg);
    rank->add_option("--out", cfg.out_dir, "output directory (report written to <out>/report)")->capture_default_str();

    auto *run = app.add_subcommand("run", "split, evaluate and rank in one go");
    add_scenarios(*run, cfg);
    add_systems(*run, cfg, true);
    add_split_options(*run, cfg);
    add_eval_options(*run, cfg);
    add_rank_options(*run, cfg);
    run->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();

    std::filesystem::path validate_dir;
    auto *validate = app.add_subcommand("validate", "load a scenario directory and list every problem found");
    validate->add_option("dir", validate_dir, "scenario directory")->required();

    std::filesystem::path train_dir;
    std::filesystem::path test_dir;
    std::filesystem::path schedule_out;
    std::filesystem::path manifest_out;
    std::string selector = "regr";
    std::size_t knn_k = 3;
    auto *select = app.add_subcommand("select", "run a built-in selector on one train/test pair");
    select->add_option("--train", train_dir, "training scenario directory")->required();
    select->add_option("--test", test_dir, "test scenario directory")->required();
    select->add_option("--selector", selector, "regr or regr_pairs")->capture_default_str();
    select->add_option("--k", knn_k, "neighbours of the k-NN learner")->capture_default_str()->check(CLI::PositiveNumber);
    select->add_option("--schedule-out", schedule_out, "schedule file (default: stdout)");
    select->add_option("--manifest-out", manifest_out, "write the output manifest here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*split) {
            print_splits(asbench::cmd_split(cfg));
        } else if (*evaluate) {
            const auto result = asbench::cmd_evaluate(cfg);
            std::cout << fmt::format("{} evaluation units, scores written to {}\n", result.units.size(),
                                     (cfg.out_dir / "scores.csv").generic_string());
        } else if (*rank) {
            const auto report = asbench::cmd_rank(cfg, scores_file.empty() ? cfg.out_dir / "scores.csv" : scores_file);
            for (const auto &e : report.mean.ordering) {
                std::cout << fmt::format("{:>3}  {:<24} {:.5f}\n", e.rank, e.system, e.score);
            }
        } else if (*run) {
            print_splits(asbench::cmd_split(cfg));
            const auto result = asbench::cmd_evaluate(cfg);
            std::cout << fmt::format("{} evaluation units\n", result.units.size());
            const auto report = asbench::cmd_rank(cfg, cfg.out_dir / "scores.csv");
            for (const auto &e : report.mean.ordering) {
                std::cout << fmt::format("{:>3}  {:<24} {:.5f}\n", e.rank, e.system, e.score);
            }
        } else if (*validate) {
            return run_validate(validate_dir);
        } else if (*select) {
            return run_select(train_dir, test_dir, selector, knn_k, schedule_out, manifest_out);
        }
    } catch (const asbench::UsageError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const asbench::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
