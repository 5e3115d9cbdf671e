#ifndef ECIBO_GA_HPP
#define ECIBO_GA_HPP

#include <Eigen/Core>
#include <functional>
#include <utility>
#include <vector>

#include "ecibo/bounds.hpp"
#include "ecibo/rng.hpp"

namespace ecibo {

/// Real-coded GA settings. Distribution indices follow the usual value of 20;
/// p_mutation < 0 means "1/k" with k the number of variables.
struct GaConfig {
  int pop_size = 10;
  int max_gen = 20;
  double eta_crossover = 20.0;
  double eta_mutation = 20.0;
  double p_crossover = 0.9;
  double p_mutation = -1.0;
  int tournament_size = 2;
};

/// Simulated binary crossover. Children are symmetric about the parents'
/// midpoint before clipping to bounds: c1 + c2 = p1 + p2 componentwise.
std::pair<Eigen::VectorXd, Eigen::VectorXd> sbx_crossover(
    const Eigen::VectorXd& p1, const Eigen::VectorXd& p2, double eta,
    const Bounds& bounds, RngStream& rng);

/// Scalar kernel of bounded polynomial mutation: perturbation of x driven by
/// the uniform draw u in [0,1). u = 0.5 leaves x unchanged.
double polynomial_mutation_value(double x, double u, double eta, double lo,
                                 double hi);

/// Mutates each variable independently with probability p_mut. Result stays
/// within bounds.
Eigen::VectorXd polynomial_mutation(const Eigen::VectorXd& x, double eta,
                                    double p_mut, const Bounds& bounds,
                                    RngStream& rng);

/// Index of the best of k candidates drawn uniformly with replacement
/// (maximization; ties resolved to the lowest index).
/// Throws std::invalid_argument on an empty population or k < 1.
std::size_t tournament_select(const std::vector<double>& fitness, int k,
                              RngStream& rng);

struct GaResult {
  Eigen::VectorXd x;
  double value = 0.0;
};

/// Maximizes `objective` over the box. Uses exactly
/// pop_size * (max_gen + 1) objective evaluations: a uniform initial
/// population plus max_gen offspring generations with single-elitism
/// generational replacement. Non-finite objective values are treated as
/// -infinity fitness. Returns the best individual ever evaluated.
GaResult ga_maximize(const std::function<double(const Eigen::VectorXd&)>& objective,
                     const Bounds& bounds, const GaConfig& cfg, RngStream& rng);

}  // namespace ecibo

#endif
