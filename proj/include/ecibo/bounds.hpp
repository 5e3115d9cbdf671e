#ifndef ECIBO_BOUNDS_HPP
#define ECIBO_BOUNDS_HPP

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ecibo {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double width() const { return hi - lo; }
};

/// Box constraints, one interval per dimension.
using Bounds = std::vector<Interval>;

inline Bounds uniform_bounds(int dim, double lo, double hi) {
  return Bounds(static_cast<std::size_t>(dim), Interval{lo, hi});
}

inline bool contains(const Bounds& bounds, const Eigen::VectorXd& x,
                     double slack = 0.0) {
  if (x.size() != static_cast<Eigen::Index>(bounds.size())) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const auto& b = bounds[static_cast<std::size_t>(i)];
    const double s = slack * std::max(1.0, std::abs(b.width()));
    if (x[i] < b.lo - s || x[i] > b.hi + s) return false;
  }
  return true;
}

/// Map a point to [0,1]^d by the box bounds. Degenerate dimensions map to 0.
inline Eigen::VectorXd normalize(const Bounds& bounds, const Eigen::VectorXd& x) {
  Eigen::VectorXd u(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const auto& b = bounds[static_cast<std::size_t>(i)];
    u[i] = b.width() > 0.0 ? (x[i] - b.lo) / b.width() : 0.0;
  }
  return u;
}

inline Eigen::VectorXd denormalize(const Bounds& bounds, const Eigen::VectorXd& u) {
  Eigen::VectorXd x(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const auto& b = bounds[static_cast<std::size_t>(i)];
    x[i] = b.lo + b.width() * u[i];
  }
  return x;
}

inline double clip(double v, double lo, double hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

}  // namespace ecibo

#endif
