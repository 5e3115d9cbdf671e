#include "ecibo/harness.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ecibo/format.hpp"
#include "ecibo/rng.hpp"
#include "ecibo/version.hpp"

namespace ecibo {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

void write_text_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + tmp.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string csv_filename(Algorithm algo, int run) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03d", run);
  return to_string(algo) + "_run" + buf + ".csv";
}

CsvFile to_csv(const RunRecord& record, int run) {
  CsvFile file;
  file.rows.reserve(record.entries.size());
  for (const auto& e : record.entries) {
    CsvRow row;
    row.run = run;
    row.algorithm = record.algorithm;
    row.eval = e.eval;
    row.best_f = e.best_f;
    row.f = e.f;
    row.x.assign(e.x.data(), e.x.data() + e.x.size());
    file.rows.push_back(std::move(row));
  }
  return file;
}

void write_csv(const fs::path& path, const CsvFile& file) {
  if (file.rows.empty()) {
    throw std::invalid_argument("write_csv: no rows");
  }
  std::string out = "run,algorithm,eval,best_f,f";
  for (std::size_t j = 0; j < file.rows.front().x.size(); ++j) {
    out += ",x" + std::to_string(j + 1);
  }
  out += '\n';
  for (const auto& row : file.rows) {
    out += std::to_string(row.run);
    out += ',';
    out += row.algorithm;
    out += ',';
    out += std::to_string(row.eval);
    out += ',';
    out += format_double(row.best_f);
    out += ',';
    out += format_double(row.f);
    for (double v : row.x) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  write_text_atomic(path, out);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

}  // namespace

CsvFile read_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty CSV: " + path.string());
  }
  const auto header = split_csv_line(line);
  if (header.size() < 6 || header[0] != "run" || header[1] != "algorithm" ||
      header[2] != "eval" || header[3] != "best_f" || header[4] != "f") {
    throw std::runtime_error("unexpected CSV header in " + path.string());
  }
  const std::size_t dim = header.size() - 5;
  CsvFile file;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error("ragged CSV row in " + path.string());
    }
    CsvRow row;
    row.run = std::stoi(fields[0]);
    row.algorithm = fields[1];
    row.eval = std::stoi(fields[2]);
    row.best_f = parse_double(fields[3]);
    row.f = parse_double(fields[4]);
    row.x.reserve(dim);
    for (std::size_t j = 0; j < dim; ++j) row.x.push_back(parse_double(fields[5 + j]));
    file.rows.push_back(std::move(row));
  }
  if (file.rows.empty()) {
    throw std::runtime_error("CSV has no data rows: " + path.string());
  }
  return file;
}

BoConfig job_config(const ExperimentConfig& cfg, int run) {
  BoConfig bo;
  bo.n_init = cfg.n_init;
  bo.n_max = cfg.n_max;
  bo.nugget = cfg.nugget;
  bo.fit_restarts = cfg.fit_restarts;
  // One seed per run index, shared by every algorithm of the run; the DoE
  // stream depends only on this value, giving all algorithms the same design.
  bo.seed = mix_seed(mix_seed(cfg.base_seed) ^
                     mix_seed(static_cast<std::uint64_t>(run)));
  return bo;
}

namespace {

void validate_experiment(const ExperimentConfig& cfg) {
  if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (cfg.algorithms.empty()) {
    throw std::invalid_argument("at least one algorithm required");
  }
  if (cfg.n_init < 2) throw std::invalid_argument("n_init must be >= 2");
  if (cfg.n_max < cfg.n_init) {
    throw std::invalid_argument("n_max must be >= n_init");
  }
  if (cfg.out_dir.empty()) throw std::invalid_argument("output directory required");
}

ordered_json stats_to_json(const SummaryStats& stats) {
  ordered_json algos = ordered_json::object();
  for (const auto& [name, s] : stats) {
    ordered_json entry;
    entry["runs"] = s.runs;
    entry["final_best"] = {{"mean", s.final_best.mean},
                           {"median", s.final_best.median},
                           {"std", s.final_best.stddev},
                           {"min", s.final_best.min},
                           {"max", s.final_best.max}};
    entry["final_bests"] = s.final_bests;
    entry["mean_curve"] = s.mean_curve;
    algos[name] = std::move(entry);
  }
  return algos;
}

}  // namespace

std::string summary_json(const ExperimentConfig& cfg, const SummaryStats& stats,
                         const std::vector<JobOutcome>& jobs,
                         double wall_time_s) {
  ordered_json doc;
  doc["version"] = kVersion;
  ordered_json algonames = ordered_json::array();
  for (auto a : cfg.algorithms) algonames.push_back(to_string(a));
  doc["config"] = {{"problem", to_string(cfg.problem)},
                   {"dim", cfg.dim},
                   {"algorithms", algonames},
                   {"n_init", cfg.n_init},
                   {"n_max", cfg.n_max},
                   {"runs", cfg.runs},
                   {"seed", cfg.base_seed},
                   {"threads", cfg.threads},
                   {"nugget", cfg.nugget},
                   {"fit_restarts", cfg.fit_restarts}};
  doc["algorithms"] = stats_to_json(stats);

  // Paired Wilcoxon tests over runs where both algorithms completed.
  ordered_json comparisons = ordered_json::array();
  std::map<std::string, std::map<int, double>> finals;
  for (const auto& j : jobs) {
    if (!j.failed) finals[to_string(j.algorithm)][j.run] = j.final_best;
  }
  for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
    for (std::size_t k = i + 1; k < cfg.algorithms.size(); ++k) {
      const std::string a = to_string(cfg.algorithms[i]);
      const std::string b = to_string(cfg.algorithms[k]);
      std::vector<double> va, vb;
      for (const auto& [run, fa] : finals[a]) {
        const auto it = finals[b].find(run);
        if (it != finals[b].end()) {
          va.push_back(fa);
          vb.push_back(it->second);
        }
      }
      ordered_json cmp;
      cmp["a"] = a;
      cmp["b"] = b;
      cmp["paired_runs"] = static_cast<int>(va.size());
      if (!va.empty()) {
        const TestResult t = wilcoxon_signed_rank(va, vb);
        cmp["w"] = t.w;
        cmp["p"] = t.p;
        cmp["verdict"] = to_string(t.verdict);
      } else {
        cmp["verdict"] = "unavailable";
      }
      comparisons.push_back(std::move(cmp));
    }
  }
  doc["comparisons"] = std::move(comparisons);

  ordered_json runs = ordered_json::array();
  for (const auto& j : jobs) {
    ordered_json r;
    r["algorithm"] = to_string(j.algorithm);
    r["run"] = j.run;
    r["failed"] = j.failed;
    if (j.failed) {
      r["message"] = j.message;
    } else {
      r["final_best"] = j.final_best;
    }
    r["acquisition_evals"] = j.acquisition_evals;
    r["wall_time_s"] = j.wall_time_s;
    runs.push_back(std::move(r));
  }
  doc["runs"] = std::move(runs);
  doc["wall_time_s"] = wall_time_s;
  return doc.dump(2) + "\n";
}

CampaignResult run_experiment(const ExperimentConfig& cfg) {
  validate_experiment(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(cfg.out_dir);

  struct Job {
    Algorithm algo;
    int run;
  };
  std::vector<Job> jobs;
  for (int run = 0; run < cfg.runs; ++run) {
    for (auto algo : cfg.algorithms) jobs.push_back(Job{algo, run});
  }

  std::vector<JobOutcome> outcomes(jobs.size());
  std::vector<RunRecord> records(jobs.size());

  auto execute = [&](std::size_t j) {
    const Job& job = jobs[j];
    JobOutcome out;
    out.algorithm = job.algo;
    out.run = job.run;
    try {
      const Problem problem = make_problem(cfg.problem, cfg.dim);
      const RunRecord rec = run_algorithm(job.algo, problem, job_config(cfg, job.run));
      out.failed = rec.failed;
      out.message = rec.failure_message;
      out.wall_time_s = rec.wall_time_s;
      out.acquisition_evals = rec.acquisition_evals;
      if (!rec.entries.empty()) {
        write_csv(fs::path(cfg.out_dir) / csv_filename(job.algo, job.run),
                  to_csv(rec, job.run));
        out.final_best = rec.final_best();
      }
      records[j] = rec;
    } catch (const std::exception& e) {
      out.failed = true;
      out.message = e.what();
    }
    outcomes[j] = std::move(out);
  };

  const int workers =
      std::clamp<int>(cfg.threads, 1, static_cast<int>(jobs.size()));
  if (workers == 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) execute(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t j = next.fetch_add(1); j < jobs.size();
             j = next.fetch_add(1)) {
          execute(j);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<RunRecord> complete;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (!outcomes[j].failed && !records[j].entries.empty()) {
      complete.push_back(std::move(records[j]));
    }
  }
  SummaryStats stats;
  if (!complete.empty()) stats = summarize(complete);

  CampaignResult result;
  result.jobs = std::move(outcomes);
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_text_atomic(fs::path(cfg.out_dir) / "summary.json",
                    summary_json(cfg, stats, result.jobs, result.wall_time_s));
  return result;
}

namespace {

struct LoadedCsv {
  std::string algorithm;
  int run = 0;
  std::vector<double> best_curve;
};

std::vector<LoadedCsv> load_directory(const fs::path& dir) {
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".csv") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<LoadedCsv> out;
  for (const auto& p : paths) {
    const CsvFile file = read_csv(p);
    LoadedCsv loaded;
    loaded.algorithm = file.rows.front().algorithm;
    loaded.run = file.rows.front().run;
    loaded.best_curve.reserve(file.rows.size());
    for (const auto& row : file.rows) loaded.best_curve.push_back(row.best_f);
    out.push_back(std::move(loaded));
  }
  if (out.empty()) {
    throw std::runtime_error("no CSV files in " + dir.string());
  }
  return out;
}

}  // namespace

SummaryStats summarize_directory(const fs::path& dir) {
  const auto files = load_directory(dir);
  std::size_t n_max = 0;
  for (const auto& f : files) n_max = std::max(n_max, f.best_curve.size());

  SummaryStats stats;
  for (const auto& f : files) {
    if (f.best_curve.size() != n_max) continue;  // incomplete (failed) run
    auto& s = stats[f.algorithm];
    s.runs += 1;
    s.final_bests.push_back(f.best_curve.back());
    if (s.mean_curve.empty()) s.mean_curve.assign(n_max, 0.0);
    for (std::size_t e = 0; e < n_max; ++e) s.mean_curve[e] += f.best_curve[e];
  }
  if (stats.empty()) {
    throw std::runtime_error("no complete runs in " + dir.string());
  }
  for (auto& [name, s] : stats) {
    (void)name;
    const double n = static_cast<double>(s.runs);
    for (auto& v : s.mean_curve) v /= n;
    std::vector<double> fb = s.final_bests;
    std::sort(fb.begin(), fb.end());
    s.final_best.min = fb.front();
    s.final_best.max = fb.back();
    s.final_best.median = fb.size() % 2 == 1
                              ? fb[fb.size() / 2]
                              : 0.5 * (fb[fb.size() / 2 - 1] + fb[fb.size() / 2]);
    double sum = 0.0;
    for (double v : fb) sum += v;
    s.final_best.mean = sum / n;
    double ss = 0.0;
    for (double v : fb) ss += (v - s.final_best.mean) * (v - s.final_best.mean);
    s.final_best.stddev = s.runs > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  }
  return stats;
}

std::map<std::string, std::vector<double>> final_bests_by_algorithm(
    const fs::path& dir) {
  const auto files = load_directory(dir);
  std::size_t n_max = 0;
  for (const auto& f : files) n_max = std::max(n_max, f.best_curve.size());

  std::map<std::string, std::map<int, double>> by_run;
  for (const auto& f : files) {
    if (f.best_curve.size() != n_max) continue;
    by_run[f.algorithm][f.run] = f.best_curve.back();
  }
  // Keep only run indices present for every algorithm so tests stay paired.
  std::map<std::string, std::vector<double>> out;
  if (by_run.empty()) return out;
  std::vector<int> shared;
  for (const auto& [run, value] : by_run.begin()->second) {
    (void)value;
    bool everywhere = true;
    for (const auto& [algo, runs] : by_run) {
      (void)algo;
      if (runs.find(run) == runs.end()) {
        everywhere = false;
        break;
      }
    }
    if (everywhere) shared.push_back(run);
  }
  for (const auto& [algo, runs] : by_run) {
    auto& v = out[algo];
    for (int run : shared) v.push_back(runs.at(run));
  }
  return out;
}

}  // namespace ecibo
