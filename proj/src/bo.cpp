#include "ecibo/bo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "ecibo/doe.hpp"
#include "ecibo/errors.hpp"

namespace ecibo {

namespace {

// RNG stream tags; every random decision of a run draws from a child stream
// addressed by (seed, tags...), so runs are reproducible bit-for-bit and the
// initial design is shared across algorithms given the same seed.
constexpr std::uint64_t kTagDoe = 0x01;
constexpr std::uint64_t kTagInfill = 0x02;
constexpr std::uint64_t kTagOrder = 0x03;
constexpr std::uint64_t kTagFallback = 0x04;
constexpr std::uint64_t kTagCoordPick = 0x05;

std::uint64_t algo_tag(Algorithm a) {
  return 0x100 + static_cast<std::uint64_t>(a);
}

class StopWatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

void validate_config(const Problem& problem, const BoConfig& cfg) {
  if (cfg.n_init < 2) {
    throw std::invalid_argument("BoConfig: n_init must be >= 2");
  }
  if (cfg.n_max < cfg.n_init) {
    throw std::invalid_argument("BoConfig: n_max must be >= n_init");
  }
  if (problem.dim() < 1) {
    throw std::invalid_argument("BoConfig: problem dimension must be >= 1");
  }
}

GaConfig resolve_full_ga(const GaConfig& ga, int dim) {
  GaConfig out = ga;
  if (out.pop_size == 0) out.pop_size = 2 * dim;
  out.pop_size = std::max(2, out.pop_size);
  return out;
}

/// Uniform random in-bounds point that does not duplicate an archived one.
Eigen::VectorXd fallback_point(const Dataset& data, RngStream& rng) {
  const auto& bounds = data.bounds();
  Eigen::VectorXd x(static_cast<Eigen::Index>(bounds.size()));
  for (int attempt = 0; attempt < 100; ++attempt) {
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const auto& b = bounds[static_cast<std::size_t>(j)];
      x[j] = rng.uniform(b.lo, b.hi);
    }
    if (!data.has_point_near(x)) return x;
  }
  throw DuplicatePointError("fallback_point: no non-duplicate point found");
}

void log_evaluation(const Problem& problem, Dataset& data, RunRecord& rec,
                    const Eigen::VectorXd& x, int coord, bool substituted) {
  const double f = problem.evaluate(x);
  data.append(x, f);
  const double best =
      rec.entries.empty() ? f : std::min(f, rec.entries.back().best_f);
  rec.entries.push_back(
      EvalEntry{static_cast<int>(rec.entries.size()) + 1, x, f, best, coord,
                substituted});
}

/// LHS design of n_init points, evaluated and archived. Duplicate rows (a
/// measure-zero event) are replaced from the same stream so the design stays
/// identical across algorithms sharing the seed.
void initial_design(const Problem& problem, const BoConfig& cfg, Dataset& data,
                    RunRecord& rec) {
  RngStream doe_rng = RngStream::derive(cfg.seed, {kTagDoe});
  const Eigen::MatrixXd design =
      latin_hypercube(cfg.n_init, problem.bounds(), doe_rng);
  for (int i = 0; i < cfg.n_init; ++i) {
    Eigen::VectorXd x = design.row(i);
    bool substituted = false;
    if (data.has_point_near(x)) {
      x = fallback_point(data, doe_rng);
      substituted = true;
    }
    log_evaluation(problem, data, rec, x, -1, substituted);
  }
}

RunRecord make_record(Algorithm algo, const Problem& problem,
                      const BoConfig& cfg) {
  RunRecord rec;
  rec.algorithm = to_string(algo);
  rec.problem = problem.id();
  rec.dim = problem.dim();
  rec.config = cfg;
  return rec;
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::standard_bo: return "bo";
    case Algorithm::eci_bo: return "eci-bo";
    case Algorithm::coordinate_line_bo: return "coordinate-line-bo";
  }
  throw std::invalid_argument("to_string: unknown Algorithm");
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "bo") return Algorithm::standard_bo;
  if (name == "eci-bo") return Algorithm::eci_bo;
  if (name == "coordinate-line-bo") return Algorithm::coordinate_line_bo;
  throw std::invalid_argument("unknown algorithm: '" + name + "'");
}

std::vector<int> descending_order(const std::vector<double>& values) {
  std::vector<double> sane = values;
  for (auto& v : sane) {
    if (std::isnan(v)) v = -std::numeric_limits<double>::infinity();
  }
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return sane[a] > sane[b]; });
  return idx;
}

CoordinateOrder compute_coordinate_order(const GpModel& model,
                                         const Incumbent& inc,
                                         const BoConfig& cfg, int sweep,
                                         std::uint64_t* acq_evals) {
  const int d = model.dim();
  std::vector<double> values(static_cast<std::size_t>(d), 0.0);
  std::vector<std::uint64_t> evals(static_cast<std::size_t>(d), 0);

  auto maximize_coord = [&](int coord) {
    RngStream rng = RngStream::derive(
        cfg.seed, {algo_tag(Algorithm::eci_bo), kTagOrder,
                   static_cast<std::uint64_t>(sweep),
                   static_cast<std::uint64_t>(coord)});
    std::uint64_t count = 0;
    auto objective = [&](const Eigen::VectorXd& t) {
      ++count;
      return eci(model, inc, coord, t[0]);
    };
    const Bounds line{model.bounds()[static_cast<std::size_t>(coord)]};
    const GaResult res = ga_maximize(objective, line, cfg.ga_1d, rng);
    values[static_cast<std::size_t>(coord)] = res.value;
    evals[static_cast<std::size_t>(coord)] = count;
  };

  const int threads = std::clamp(cfg.order_threads, 1, d);
  if (threads == 1) {
    for (int coord = 0; coord < d; ++coord) maximize_coord(coord);
  } else {
    // The d searches are independent reads of the immutable model with
    // per-coordinate streams; the outcome is scheduling-invariant.
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int coord = next.fetch_add(1); coord < d;
             coord = next.fetch_add(1)) {
          maximize_coord(coord);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  if (acq_evals != nullptr) {
    for (auto c : evals) *acq_evals += c;
  }
  CoordinateOrder out;
  out.order = descending_order(values);
  out.max_eci.reserve(out.order.size());
  for (int coord : out.order) {
    out.max_eci.push_back(values[static_cast<std::size_t>(coord)]);
  }
  return out;
}

RunRecord run_standard_bo(const Problem& problem, const BoConfig& cfg) {
  validate_config(problem, cfg);
  const StopWatch watch;
  RunRecord rec = make_record(Algorithm::standard_bo, problem, cfg);
  const GaConfig ga_full = resolve_full_ga(cfg.ga_full, problem.dim());
  Dataset data(problem.bounds());
  RngStream fallback_rng =
      RngStream::derive(cfg.seed, {algo_tag(Algorithm::standard_bo), kTagFallback});

  try {
    initial_design(problem, cfg, data, rec);
    while (data.size() < cfg.n_max) {
      const GpModel model = fit(data, cfg.nugget, cfg.fit_restarts);
      const Incumbent inc = incumbent_of(data);
      RngStream rng = RngStream::derive(
          cfg.seed, {algo_tag(Algorithm::standard_bo), kTagInfill,
                     static_cast<std::uint64_t>(data.size())});
      auto objective = [&](const Eigen::VectorXd& x) {
        ++rec.acquisition_evals;
        const Prediction p = model.predict(x);
        return expected_improvement(p.mu, p.sigma, inc.f);
      };
      const GaResult res = ga_maximize(objective, problem.bounds(), ga_full, rng);
      Eigen::VectorXd x = res.x;
      bool substituted = false;
      if (data.has_point_near(x)) {
        x = fallback_point(data, fallback_rng);
        substituted = true;
      }
      log_evaluation(problem, data, rec, x, -1, substituted);
    }
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.failure_message = e.what();
  }
  rec.wall_time_s = watch.seconds();
  return rec;
}

RunRecord run_eci_bo(const Problem& problem, const BoConfig& cfg) {
  validate_config(problem, cfg);
  const StopWatch watch;
  RunRecord rec = make_record(Algorithm::eci_bo, problem, cfg);
  Dataset data(problem.bounds());
  RngStream fallback_rng =
      RngStream::derive(cfg.seed, {algo_tag(Algorithm::eci_bo), kTagFallback});

  try {
    initial_design(problem, cfg, data, rec);
    int sweep = 0;
    while (data.size() < cfg.n_max) {
      // One model per sweep drives the ordering; each coordinate step below
      // refits on the grown archive.
      GpModel model = fit(data, cfg.nugget, cfg.fit_restarts);
      const CoordinateOrder order = compute_coordinate_order(
          model, incumbent_of(data), cfg, sweep, &rec.acquisition_evals);
      bool sweep_start = true;
      for (int coord : order.order) {
        if (data.size() >= cfg.n_max) break;
        if (!sweep_start) {
          // First step works on the same archive the ordering saw; fit is
          // deterministic, so the sweep-start model is reused as-is.
          model = fit(data, cfg.nugget, cfg.fit_restarts);
        }
        sweep_start = false;
        const Incumbent inc = incumbent_of(data);
        RngStream rng = RngStream::derive(
            cfg.seed, {algo_tag(Algorithm::eci_bo), kTagInfill,
                       static_cast<std::uint64_t>(data.size())});
        auto objective = [&](const Eigen::VectorXd& t) {
          ++rec.acquisition_evals;
          return eci(model, inc, coord, t[0]);
        };
        const Bounds line{problem.bounds()[static_cast<std::size_t>(coord)]};
        const GaResult res = ga_maximize(objective, line, cfg.ga_1d, rng);
        Eigen::VectorXd z = inc.x;
        z[coord] = res.x[0];
        bool substituted = false;
        if (data.has_point_near(z)) {
          z = fallback_point(data, fallback_rng);
          substituted = true;
        }
        log_evaluation(problem, data, rec, z, coord, substituted);
      }
      ++sweep;
    }
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.failure_message = e.what();
  }
  rec.wall_time_s = watch.seconds();
  return rec;
}

RunRecord run_coordinate_line_bo(const Problem& problem, const BoConfig& cfg) {
  validate_config(problem, cfg);
  const StopWatch watch;
  RunRecord rec = make_record(Algorithm::coordinate_line_bo, problem, cfg);
  Dataset data(problem.bounds());
  RngStream fallback_rng = RngStream::derive(
      cfg.seed, {algo_tag(Algorithm::coordinate_line_bo), kTagFallback});
  RngStream pick_rng = RngStream::derive(
      cfg.seed, {algo_tag(Algorithm::coordinate_line_bo), kTagCoordPick});

  try {
    initial_design(problem, cfg, data, rec);
    while (data.size() < cfg.n_max) {
      const GpModel model = fit(data, cfg.nugget, cfg.fit_restarts);
      const Incumbent inc = incumbent_of(data);
      const int coord =
          static_cast<int>(pick_rng.index(static_cast<std::size_t>(problem.dim())));
      RngStream rng = RngStream::derive(
          cfg.seed, {algo_tag(Algorithm::coordinate_line_bo), kTagInfill,
                     static_cast<std::uint64_t>(data.size())});
      auto objective = [&](const Eigen::VectorXd& t) {
        ++rec.acquisition_evals;
        return eci(model, inc, coord, t[0]);
      };
      const Bounds line{problem.bounds()[static_cast<std::size_t>(coord)]};
      const GaResult res = ga_maximize(objective, line, cfg.ga_1d, rng);
      Eigen::VectorXd z = inc.x;
      z[coord] = res.x[0];
      bool substituted = false;
      if (data.has_point_near(z)) {
        z = fallback_point(data, fallback_rng);
        substituted = true;
      }
      log_evaluation(problem, data, rec, z, coord, substituted);
    }
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.failure_message = e.what();
  }
  rec.wall_time_s = watch.seconds();
  return rec;
}

RunRecord run_algorithm(Algorithm algo, const Problem& problem,
                        const BoConfig& cfg) {
  switch (algo) {
    case Algorithm::standard_bo: return run_standard_bo(problem, cfg);
    case Algorithm::eci_bo: return run_eci_bo(problem, cfg);
    case Algorithm::coordinate_line_bo:
      return run_coordinate_line_bo(problem, cfg);
  }
  throw std::invalid_argument("run_algorithm: unknown algorithm");
}

}  // namespace ecibo
