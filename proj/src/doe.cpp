#include "ecibo/doe.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ecibo {

Eigen::MatrixXd latin_hypercube(int n, const Bounds& bounds, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("latin_hypercube: n must be >= 1");
  if (bounds.empty()) {
    throw std::invalid_argument("latin_hypercube: bounds must be nonempty");
  }
  for (const auto& b : bounds) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi) {
      throw std::invalid_argument("latin_hypercube: invalid bounds");
    }
  }
  const auto d = static_cast<Eigen::Index>(bounds.size());
  Eigen::MatrixXd points(n, d);
  std::vector<int> strata(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < d; ++j) {
    std::iota(strata.begin(), strata.end(), 0);
    for (std::size_t i = strata.size() - 1; i > 0; --i) {  // Fisher-Yates
      std::swap(strata[i], strata[rng.index(i + 1)]);
    }
    const auto& b = bounds[static_cast<std::size_t>(j)];
    for (int i = 0; i < n; ++i) {
      const double u01 = (strata[static_cast<std::size_t>(i)] + rng.uniform()) / n;
      points(i, j) = b.lo + b.width() * u01;
    }
  }
  return points;
}

}  // namespace ecibo
