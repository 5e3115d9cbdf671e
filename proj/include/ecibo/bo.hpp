#ifndef ECIBO_BO_HPP
#define ECIBO_BO_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "ecibo/acquisition.hpp"
#include "ecibo/benchmarks.hpp"
#include "ecibo/ga.hpp"
#include "ecibo/gp.hpp"

namespace ecibo {

enum class Algorithm {
  standard_bo,
  eci_bo,
  coordinate_line_bo,
};

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

/// Settings shared by all three drivers. ga_full.pop_size == 0 means "2 * d",
/// resolved against the problem dimension at run time.
struct BoConfig {
  int n_init = 200;
  int n_max = 1000;
  GaConfig ga_full{0, 100};   // full-space EI search
  GaConfig ga_1d{10, 20};     // 1-D ECI search
  double nugget = kDefaultNugget;
  int fit_restarts = 1;
  std::uint64_t seed = 0;
  int order_threads = 1;      // parallelism of the per-coordinate ECI searches
};

/// One expensive evaluation. `coord` is the coordinate optimized to produce
/// the point (-1 for DoE points and full-space infills); `substituted` marks
/// duplicate-infill fallbacks, where the logged point is a uniform random
/// replacement rather than the acquisition maximizer.
struct EvalEntry {
  int eval = 0;  // 1-based evaluation index
  Eigen::VectorXd x;
  double f = 0.0;
  double best_f = 0.0;
  int coord = -1;
  bool substituted = false;
};

struct RunRecord {
  std::string algorithm;
  ProblemId problem{};
  int dim = 0;
  BoConfig config;
  std::vector<EvalEntry> entries;
  std::uint64_t acquisition_evals = 0;  // actual acquisition-function calls
  double wall_time_s = 0.0;
  bool failed = false;
  std::string failure_message;

  double final_best() const { return entries.back().best_f; }
};

/// Indices of `values` sorted by descending value; stable, so equal values
/// keep their original relative order (lower index first).
std::vector<int> descending_order(const std::vector<double>& values);

/// Permutation of coordinates in descending order of their maximal ECI.
struct CoordinateOrder {
  std::vector<int> order;       // 0-based coordinate indices
  std::vector<double> max_eci;  // aligned with `order`, nonincreasing
};

/// Maximizes ECI along every coordinate with the 1-D GA (cfg.ga_1d) and sorts
/// the coordinates by the resulting maxima. The d searches are independent;
/// cfg.order_threads > 1 runs them concurrently with per-coordinate RNG
/// streams, so the result never depends on scheduling. `sweep` scopes the
/// streams so successive sweeps draw fresh randomness.
/// `acq_evals`, when non-null, is incremented per acquisition evaluation.
CoordinateOrder compute_coordinate_order(const GpModel& model,
                                         const Incumbent& inc,
                                         const BoConfig& cfg, int sweep,
                                         std::uint64_t* acq_evals = nullptr);

/// Standard BO: LHS design, then one full-space EI maximization per
/// evaluation until exactly cfg.n_max evaluations are spent.
RunRecord run_standard_bo(const Problem& problem, const BoConfig& cfg);

/// Coordinate-wise BO: after the design, repeatedly computes a coordinate
/// order from the maximal ECI values (once per sweep), then walks the order,
/// refitting the GP and maximizing the 1-D ECI at each step. Each infill
/// differs from the selection-time incumbent in one coordinate.
RunRecord run_eci_bo(const Problem& problem, const BoConfig& cfg);

/// Baseline: same 1-D machinery as run_eci_bo, but the coordinate is drawn
/// uniformly at random (with replacement) each iteration.
RunRecord run_coordinate_line_bo(const Problem& problem, const BoConfig& cfg);

RunRecord run_algorithm(Algorithm algo, const Problem& problem,
                        const BoConfig& cfg);

}  // namespace ecibo

#endif
