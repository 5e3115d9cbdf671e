#ifndef ECIBO_HARNESS_HPP
#define ECIBO_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ecibo/bo.hpp"
#include "ecibo/stats.hpp"

namespace ecibo {

/// A multi-seed, multi-algorithm campaign. Within one run index every
/// algorithm sees the same initial design (the DoE stream depends on the base
/// seed and the run index only); everything algorithm-specific draws from
/// streams keyed additionally by the algorithm.
struct ExperimentConfig {
  ProblemId problem = ProblemId::ellipsoid;
  int dim = 30;
  std::vector<Algorithm> algorithms;
  int n_init = 200;
  int n_max = 1000;
  int runs = 30;
  std::uint64_t base_seed = 0;
  std::string out_dir;
  int threads = 1;
  double nugget = kDefaultNugget;
  int fit_restarts = 1;
};

/// Per-evaluation row as persisted to CSV.
struct CsvRow {
  int run = 0;
  std::string algorithm;
  int eval = 0;  // 1-based
  double best_f = 0.0;
  double f = 0.0;
  std::vector<double> x;
};

struct CsvFile {
  std::vector<CsvRow> rows;
};

/// CSV schema: header `run,algorithm,eval,best_f,f,x1,...,xd`, floats as
/// shortest round-trip decimals, '\n' line endings. write_csv replaces the
/// target atomically (write to temp file, then rename).
std::string csv_filename(Algorithm algo, int run);
void write_csv(const std::filesystem::path& path, const CsvFile& file);
CsvFile read_csv(const std::filesystem::path& path);
CsvFile to_csv(const RunRecord& record, int run);

/// BoConfig for one (run, algorithm) job of a campaign; the DoE stream
/// derived from this seed is identical for every algorithm of the run.
BoConfig job_config(const ExperimentConfig& cfg, int run);

struct JobOutcome {
  Algorithm algorithm{};
  int run = 0;
  bool failed = false;
  std::string message;
  double wall_time_s = 0.0;
  double final_best = 0.0;
  std::uint64_t acquisition_evals = 0;
};

struct CampaignResult {
  std::vector<JobOutcome> jobs;
  double wall_time_s = 0.0;
};

/// Executes runs x algorithms jobs on a pool of cfg.threads workers, writes
/// one CSV per job plus `summary.json` into cfg.out_dir. Job failures are
/// recorded in the summary and do not stop the campaign. Output bytes are
/// independent of the thread count.
CampaignResult run_experiment(const ExperimentConfig& cfg);

/// Recomputes summary statistics from the CSVs in a campaign directory.
SummaryStats summarize_directory(const std::filesystem::path& dir);

/// Final best per run, keyed by algorithm name, read back from the CSVs.
std::map<std::string, std::vector<double>> final_bests_by_algorithm(
    const std::filesystem::path& dir);

/// summary.json payload (config echo, per-algorithm statistics, pairwise
/// Wilcoxon results, version, wall times). Serialized with nlohmann; parse +
/// re-dump is byte-identical.
std::string summary_json(const ExperimentConfig& cfg,
                         const SummaryStats& stats,
                         const std::vector<JobOutcome>& jobs,
                         double wall_time_s);

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace ecibo

#endif
