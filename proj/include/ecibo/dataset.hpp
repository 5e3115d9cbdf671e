#ifndef ECIBO_DATASET_HPP
#define ECIBO_DATASET_HPP

#include <Eigen/Core>

#include "ecibo/bounds.hpp"

namespace ecibo {

/// Tolerance (in normalized space, infinity norm) below which two sample
/// points count as duplicates. Duplicate rows make the correlation matrix
/// singular, so insertion rejects them.
inline constexpr double kDuplicateTol = 1e-10;

/// Archive of evaluated design points and their objective values.
/// Points are stored in original design-space units; duplicate detection
/// happens in bounds-normalized space.
class Dataset {
 public:
  explicit Dataset(Bounds bounds);

  int size() const { return static_cast<int>(points_.rows()); }
  int dim() const { return static_cast<int>(bounds_.size()); }
  const Bounds& bounds() const { return bounds_; }

  const Eigen::MatrixXd& points() const { return points_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd point(int i) const { return points_.row(i); }
  double value(int i) const { return values_[i]; }

  /// True if x lies within kDuplicateTol (normalized) of an archived point.
  bool has_point_near(const Eigen::VectorXd& x, double tol = kDuplicateTol) const;

  /// Appends (x, f). Throws std::invalid_argument if x is out of bounds or
  /// non-finite, DuplicatePointError if x duplicates an archived point.
  void append(const Eigen::VectorXd& x, double f);

  /// Index of the lowest value; first such index under ties.
  int argmin() const;

 private:
  Bounds bounds_;
  Eigen::MatrixXd points_;   // n x d
  Eigen::VectorXd values_;   // n
  Eigen::MatrixXd normalized_;  // n x d cache for duplicate checks
};

}  // namespace ecibo

#endif
