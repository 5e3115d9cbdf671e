#ifndef ECIBO_ACQUISITION_HPP
#define ECIBO_ACQUISITION_HPP

#include <cmath>
#include <stdexcept>

#include "ecibo/dataset.hpp"
#include "ecibo/gp.hpp"

namespace ecibo {

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

inline double normal_pdf(double z) {
  constexpr double inv_sqrt_2pi = 0.3989422804014326779;
  return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

/// Expected improvement over f_best of a Gaussian prediction N(mu, sigma^2),
/// for minimization:
///   sigma > 0: (f_best - mu) Phi(z) + sigma phi(z),  z = (f_best - mu) / sigma
///   sigma = 0: max(f_best - mu, 0)                   (analytic limit)
/// Always finite and >= 0.
inline double expected_improvement(double mu, double sigma, double f_best) {
  if (sigma <= 0.0) return std::max(f_best - mu, 0.0);
  const double z = (f_best - mu) / sigma;
  const double ei = (f_best - mu) * normal_cdf(z) + sigma * normal_pdf(z);
  return ei > 0.0 ? ei : 0.0;
}

/// Best evaluated point so far: the first argmin row of the dataset.
struct Incumbent {
  Eigen::VectorXd x;
  double f = 0.0;
};

inline Incumbent incumbent_of(const Dataset& data) {
  const int i = data.argmin();
  return Incumbent{data.point(i), data.value(i)};
}

/// Expected coordinate improvement: EI restricted to the axis-aligned line
/// through the incumbent. Replaces coordinate `coord` (0-based) of the
/// incumbent with t, predicts there, and evaluates EI against inc.f.
inline double eci(const GpModel& model, const Incumbent& inc, int coord,
                  double t) {
  if (coord < 0 || coord >= model.dim()) {
    throw std::invalid_argument("eci: coordinate index out of range");
  }
  Eigen::VectorXd z = inc.x;
  z[coord] = t;
  const Prediction p = model.predict(z);
  return expected_improvement(p.mu, p.sigma, inc.f);
}

}  // namespace ecibo

#endif
