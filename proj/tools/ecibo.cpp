// Command-line experiment runner: multi-seed optimization campaigns,
// convergence-data persistence, summary statistics and paired significance
// tests over the persisted results.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ecibo/harness.hpp"
#include "ecibo/version.hpp"

namespace {

using ecibo::Algorithm;
using ecibo::ExperimentConfig;

void fail(const std::string& message) {
  nlohmann::ordered_json err;
  err["error"] = message;
  std::cerr << err.dump() << "\n";
  std::exit(1);
}

ExperimentConfig config_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  ExperimentConfig cfg;
  cfg.problem = ecibo::problem_id_from_string(doc.at("problem").get<std::string>());
  cfg.dim = doc.at("dim").get<int>();
  for (const auto& name : doc.at("algorithms")) {
    cfg.algorithms.push_back(ecibo::algorithm_from_string(name.get<std::string>()));
  }
  cfg.n_init = doc.at("n_init").get<int>();
  cfg.n_max = doc.at("n_max").get<int>();
  cfg.runs = doc.at("runs").get<int>();
  cfg.base_seed = doc.at("seed").get<std::uint64_t>();
  cfg.out_dir = doc.at("out").get<std::string>();
  if (doc.contains("threads")) cfg.threads = doc.at("threads").get<int>();
  if (doc.contains("nugget")) cfg.nugget = doc.at("nugget").get<double>();
  if (doc.contains("fit_restarts")) {
    cfg.fit_restarts = doc.at("fit_restarts").get<int>();
  }
  return cfg;
}

void print_stats_table(const ecibo::SummaryStats& stats) {
  std::printf("%-20s %5s %14s %14s %14s %14s %14s\n", "algorithm", "runs",
              "mean", "median", "std", "min", "max");
  for (const auto& [name, s] : stats) {
    std::printf("%-20s %5d %14.6g %14.6g %14.6g %14.6g %14.6g\n", name.c_str(),
                s.runs, s.final_best.mean, s.final_best.median,
                s.final_best.stddev, s.final_best.min, s.final_best.max);
  }
}

int cmd_run(const ExperimentConfig& cfg) {
  const ecibo::CampaignResult result = ecibo::run_experiment(cfg);
  int failures = 0;
  for (const auto& job : result.jobs) {
    if (job.failed) {
      ++failures;
      std::printf("[failed] %-20s run %3d  %s\n",
                  to_string(job.algorithm).c_str(), job.run,
                  job.message.c_str());
    } else {
      std::printf("[done]   %-20s run %3d  best %.6g  acq-evals %llu  %.1fs\n",
                  to_string(job.algorithm).c_str(), job.run, job.final_best,
                  static_cast<unsigned long long>(job.acquisition_evals),
                  job.wall_time_s);
    }
  }
  std::printf("\ncampaign finished in %.1f s, results in %s\n",
              result.wall_time_s, cfg.out_dir.c_str());
  try {
    print_stats_table(ecibo::summarize_directory(cfg.out_dir));
  } catch (const std::exception&) {
    // no complete runs; per-job failures were already reported
  }
  return failures == static_cast<int>(result.jobs.size()) ? 1 : 0;
}

int cmd_summarize(const std::string& dir, bool as_json) {
  const ecibo::SummaryStats stats = ecibo::summarize_directory(dir);
  if (as_json) {
    nlohmann::ordered_json doc;
    for (const auto& [name, s] : stats) {
      doc[name] = {{"runs", s.runs},
                   {"mean", s.final_best.mean},
                   {"median", s.final_best.median},
                   {"std", s.final_best.stddev},
                   {"min", s.final_best.min},
                   {"max", s.final_best.max},
                   {"final_bests", s.final_bests}};
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    print_stats_table(stats);
  }
  return 0;
}

int cmd_compare(const std::string& dir, const std::string& baseline) {
  const auto finals = ecibo::final_bests_by_algorithm(dir);
  const auto base = finals.find(baseline);
  if (base == finals.end()) {
    throw std::runtime_error("baseline algorithm '" + baseline +
                             "' not found in " + dir);
  }
  std::printf("paired Wilcoxon signed-rank vs baseline %s (alpha = 0.05)\n",
              baseline.c_str());
  std::printf("%-20s %6s %12s %12s %10s %s\n", "algorithm", "runs", "median",
              "W", "p", "verdict");
  for (const auto& [name, values] : finals) {
    if (name == baseline) continue;
    const ecibo::TestResult t = ecibo::wilcoxon_signed_rank(values, base->second);
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const double median =
        sorted.size() % 2 == 1
            ? sorted[sorted.size() / 2]
            : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
    const char* symbol = t.verdict == ecibo::Verdict::better  ? "+"
                         : t.verdict == ecibo::Verdict::worse ? "-"
                                                              : "~";
    std::printf("%-20s %6zu %12.6g %12.6g %10.4g %s (%s)\n", name.c_str(),
                values.size(), median, t.w, t.p, symbol,
                to_string(t.verdict).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian optimization benchmark harness"};
  app.set_version_flag("--version", ecibo::kVersion);
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute a multi-seed campaign");
  std::string problem = "ellipsoid";
  int dim = 30;
  std::vector<std::string> algos;
  int n_init = 200;
  int n_max = 1000;
  int runs = 30;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out_dir;
  std::string config_path;
  auto* opt_problem = run->add_option("--problem", problem, "problem id");
  auto* opt_dim = run->add_option("--dim", dim, "problem dimension");
  auto* opt_algo =
      run->add_option("--algo", algos, "algorithm id (repeatable): bo, eci-bo, coordinate-line-bo");
  auto* opt_ninit = run->add_option("--n-init", n_init, "initial design size");
  auto* opt_nmax = run->add_option("--n-max", n_max, "total evaluation budget");
  auto* opt_runs = run->add_option("--runs", runs, "number of repeated runs");
  auto* opt_seed = run->add_option("--seed", seed, "base seed");
  auto* opt_threads = run->add_option("--threads", threads, "worker threads");
  auto* opt_out = run->add_option("--out", out_dir, "output directory");
  run->add_option("--config", config_path, "JSON config file (flags override)");

  auto* summarize = app.add_subcommand("summarize", "statistics from a campaign directory");
  std::string in_dir;
  bool as_json = false;
  summarize->add_option("--in", in_dir, "campaign directory")->required();
  summarize->add_flag("--json", as_json, "emit JSON instead of a table");

  auto* compare = app.add_subcommand("compare", "Wilcoxon tests against a baseline");
  std::string cmp_dir;
  std::string baseline;
  compare->add_option("--in", cmp_dir, "campaign directory")->required();
  compare->add_option("--baseline", baseline, "baseline algorithm id")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      ExperimentConfig cfg;
      if (!config_path.empty()) cfg = config_from_json(config_path);
      if (config_path.empty() || opt_problem->count() > 0) {
        cfg.problem = ecibo::problem_id_from_string(problem);
      }
      if (config_path.empty() || opt_dim->count() > 0) cfg.dim = dim;
      if (opt_algo->count() > 0 || config_path.empty()) {
        cfg.algorithms.clear();
        for (const auto& a : algos) {
          cfg.algorithms.push_back(ecibo::algorithm_from_string(a));
        }
      }
      if (config_path.empty() || opt_ninit->count() > 0) cfg.n_init = n_init;
      if (config_path.empty() || opt_nmax->count() > 0) cfg.n_max = n_max;
      if (config_path.empty() || opt_runs->count() > 0) cfg.runs = runs;
      if (config_path.empty() || opt_seed->count() > 0) cfg.base_seed = seed;
      if (config_path.empty() || opt_threads->count() > 0) cfg.threads = threads;
      if (config_path.empty() || opt_out->count() > 0) cfg.out_dir = out_dir;
      return cmd_run(cfg);
    }
    if (summarize->parsed()) return cmd_summarize(in_dir, as_json);
    if (compare->parsed()) return cmd_compare(cmp_dir, baseline);
  } catch (const std::exception& e) {
    fail(e.what());
  }
  return 0;
}
