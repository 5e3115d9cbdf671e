#ifndef ECIBO_GP_HPP
#define ECIBO_GP_HPP

#include <Eigen/Core>

#include "ecibo/dataset.hpp"

namespace ecibo {

/// Fitted length-scale is searched within this box (normalized input units).
inline constexpr double kLengthScaleMin = 0.01;
inline constexpr double kLengthScaleMax = 100.0;

/// Default relative nugget added to the correlation diagonal; escalated x10 up
/// to kNuggetMax on Cholesky failure, after which ModelSingularError is raised.
inline constexpr double kDefaultNugget = 1e-10;
inline constexpr double kNuggetMax = 1e-4;

struct KernelParams {
  double length_scale = 1.0;  // shared across dimensions (isotropic)
  double variance = 1.0;      // process variance s^2
};

/// Squared-exponential covariance s^2 * exp(-|u-v|^2 / (2 l^2)).
/// Throws std::invalid_argument on non-finite inputs or l <= 0.
double se_kernel(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                 const KernelParams& params);

/// Result of profiling the constant mean and process variance out of the
/// marginal likelihood at a fixed length-scale.
struct ProfiledLikelihood {
  double log_likelihood = 0.0;  // up to an additive constant
  double mean = 0.0;            // GLS estimate m_hat
  double variance = 0.0;        // s2_hat
  double nugget = 0.0;          // diagonal term actually used
  Eigen::MatrixXd chol_lower;   // L with L L^T = C + nugget I (unit-diag C)
};

/// Profiled log marginal likelihood of a unit-variance SE correlation model:
///   m_hat  = (1^T R^-1 y) / (1^T R^-1 1)
///   s2_hat = (y - m 1)^T R^-1 (y - m 1) / n
///   logL   = -(n/2) log s2_hat - (1/2) log det R     (+ const)
/// where R = C + nugget I. The nugget escalates x10 on Cholesky failure up to
/// kNuggetMax; ModelSingularError if all attempts fail.
/// x holds normalized inputs row-wise; requires n >= 2 points.
ProfiledLikelihood concentrated_log_likelihood(const Eigen::MatrixXd& x,
                                               const Eigen::VectorXd& y,
                                               double length_scale,
                                               double nugget = kDefaultNugget);

struct Prediction {
  double mu = 0.0;
  double sigma = 0.0;  // standard deviation, >= 0
};

/// Immutable fitted GP posterior. predict() is a pure read and is safe to
/// call from many threads concurrently.
class GpModel {
 public:
  /// Assembles a model from prepared pieces: bounds-normalized inputs,
  /// standardized outputs with their shift/scale, kernel parameters, GLS mean
  /// and nugget. Computes the Cholesky factor and weight vector. fit() is the
  /// usual way to obtain a model; this constructor exists for tests and tools
  /// that need explicit hyperparameters.
  GpModel(Bounds bounds, Eigen::MatrixXd x_norm, Eigen::VectorXd y_std,
          double output_shift, double output_scale, KernelParams params,
          double gls_mean, double nugget);

  /// Posterior mean and standard deviation at x (original units).
  /// Throws std::invalid_argument on non-finite input.
  Prediction predict(const Eigen::VectorXd& x) const;

  int size() const { return static_cast<int>(x_norm_.rows()); }
  int dim() const { return static_cast<int>(x_norm_.cols()); }
  const Bounds& bounds() const { return bounds_; }
  const KernelParams& params() const { return params_; }
  double gls_mean() const { return gls_mean_; }
  double nugget() const { return nugget_; }
  double output_shift() const { return output_shift_; }
  double output_scale() const { return output_scale_; }
  const Eigen::MatrixXd& normalized_inputs() const { return x_norm_; }
  const Eigen::VectorXd& standardized_outputs() const { return y_std_; }
  const Eigen::MatrixXd& chol() const { return chol_; }
  const Eigen::VectorXd& weights() const { return weights_; }

 private:
  Bounds bounds_;
  Eigen::MatrixXd x_norm_;   // n x d, inputs mapped to [0,1]^d
  Eigen::VectorXd y_std_;    // standardized outputs
  double output_shift_ = 0.0;
  double output_scale_ = 1.0;
  KernelParams params_;
  double gls_mean_ = 0.0;    // in standardized output units
  double nugget_ = 0.0;
  Eigen::MatrixXd chol_;     // L, lower triangular: L L^T = C + nugget I
  Eigen::VectorXd weights_;  // (C + nugget I)^-1 (y_std - mean 1)
};

/// Maximum-likelihood fit: inputs normalized to [0,1]^d by the dataset bounds,
/// outputs standardized to zero mean / unit variance, then the single
/// length-scale is searched over [kLengthScaleMin, kLengthScaleMax] with a
/// 21-point log-spaced grid followed by golden-section refinement around the
/// best `restarts` grid cells.
/// Throws InsufficientDataError for n < 2, ModelSingularError if the
/// correlation matrix cannot be factorized at any grid point.
GpModel fit(const Dataset& data, double nugget = kDefaultNugget,
            int restarts = 1);

}  // namespace ecibo

#endif
