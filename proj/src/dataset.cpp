#include "ecibo/dataset.hpp"

#include <cmath>
#include <stdexcept>

#include "ecibo/errors.hpp"

namespace ecibo {

Dataset::Dataset(Bounds bounds) : bounds_(std::move(bounds)) {
  if (bounds_.empty()) {
    throw std::invalid_argument("Dataset: bounds must be nonempty");
  }
  for (const auto& b : bounds_) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi) {
      throw std::invalid_argument("Dataset: invalid bounds interval");
    }
  }
  points_.resize(0, dim());
  normalized_.resize(0, dim());
  values_.resize(0);
}

bool Dataset::has_point_near(const Eigen::VectorXd& x, double tol) const {
  const Eigen::VectorXd u = normalize(bounds_, x);
  for (Eigen::Index i = 0; i < normalized_.rows(); ++i) {
    if ((normalized_.row(i).transpose() - u).lpNorm<Eigen::Infinity>() <= tol) {
      return true;
    }
  }
  return false;
}

void Dataset::append(const Eigen::VectorXd& x, double f) {
  if (x.size() != dim()) {
    throw std::invalid_argument("Dataset::append: dimension mismatch");
  }
  if (!x.allFinite() || !std::isfinite(f)) {
    throw std::invalid_argument("Dataset::append: non-finite input");
  }
  if (!contains(bounds_, x, 1e-12)) {
    throw std::invalid_argument("Dataset::append: point out of bounds");
  }
  if (has_point_near(x)) {
    throw DuplicatePointError("Dataset::append: duplicate point");
  }
  const Eigen::Index n = points_.rows();
  points_.conservativeResize(n + 1, Eigen::NoChange);
  normalized_.conservativeResize(n + 1, Eigen::NoChange);
  values_.conservativeResize(n + 1);
  points_.row(n) = x;
  normalized_.row(n) = normalize(bounds_, x);
  values_[n] = f;
}

int Dataset::argmin() const {
  if (size() == 0) {
    throw std::invalid_argument("Dataset::argmin: empty dataset");
  }
  int best = 0;
  for (int i = 1; i < size(); ++i) {
    if (values_[i] < values_[best]) best = i;
  }
  return best;
}

}  // namespace ecibo
