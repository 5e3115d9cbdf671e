#include "ecibo/gp.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ecibo/errors.hpp"

namespace ecibo {

namespace {

constexpr double kGoldenRatio = 0.6180339887498949;
constexpr int kGridPoints = 21;
constexpr int kGoldenIterations = 20;

Eigen::MatrixXd pairwise_sq_dist(const Eigen::MatrixXd& x) {
  const Eigen::VectorXd sq = x.rowwise().squaredNorm();
  Eigen::MatrixXd d = sq.replicate(1, x.rows()) +
                      sq.transpose().replicate(x.rows(), 1) -
                      2.0 * x * x.transpose();
  return d.cwiseMax(0.0);
}

struct LikelihoodEval {
  double log_likelihood;
  double mean;
  double variance;
  double nugget;
  Eigen::LLT<Eigen::MatrixXd> llt;
};

/// Profiled likelihood at one length-scale from a precomputed squared-distance
/// matrix. Escalates the nugget x10 on factorization failure.
LikelihoodEval eval_profiled(const Eigen::MatrixXd& sq_dist,
                             const Eigen::VectorXd& y, double length_scale,
                             double base_nugget) {
  const auto n = y.size();
  const Eigen::MatrixXd corr =
      (-sq_dist / (2.0 * length_scale * length_scale)).array().exp();

  double nugget = base_nugget;
  while (true) {
    Eigen::MatrixXd r = corr;
    r.diagonal().array() += nugget;
    Eigen::LLT<Eigen::MatrixXd> llt(r);
    if (llt.info() == Eigen::Success) {
      const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
      const Eigen::VectorXd ri_y = llt.solve(y);
      const Eigen::VectorXd ri_1 = llt.solve(ones);
      const double denom = ri_1.sum();
      const double mean = ri_y.sum() / denom;
      const Eigen::VectorXd resid = y.array() - mean;
      const double s2 =
          std::max(0.0, resid.dot(llt.solve(resid)) / static_cast<double>(n));
      const double log_det =
          2.0 * llt.matrixLLT().diagonal().array().log().sum();
      const double logl =
          -0.5 * (static_cast<double>(n) * std::log(std::max(s2, 1e-300)) +
                  log_det);
      return LikelihoodEval{logl, mean, s2, nugget, std::move(llt)};
    }
    if (nugget >= kNuggetMax) {
      throw ModelSingularError(
          "correlation matrix not positive definite at length_scale " +
          std::to_string(length_scale) + " even with nugget " +
          std::to_string(nugget));
    }
    nugget *= 10.0;
  }
}

double standardized_scale(const Eigen::VectorXd& y, double shift) {
  const double var =
      (y.array() - shift).square().sum() / static_cast<double>(y.size());
  const double sd = std::sqrt(var);
  return sd > 1e-12 * std::max(1.0, std::abs(shift)) ? sd : 1.0;
}

}  // namespace

double se_kernel(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                 const KernelParams& params) {
  if (!u.allFinite() || !v.allFinite()) {
    throw std::invalid_argument("se_kernel: non-finite input");
  }
  if (u.size() != v.size()) {
    throw std::invalid_argument("se_kernel: dimension mismatch");
  }
  if (!(params.length_scale > 0.0) || !std::isfinite(params.length_scale)) {
    throw std::invalid_argument("se_kernel: length_scale must be positive");
  }
  const double d2 = (u - v).squaredNorm();
  return params.variance *
         std::exp(-d2 / (2.0 * params.length_scale * params.length_scale));
}

ProfiledLikelihood concentrated_log_likelihood(const Eigen::MatrixXd& x,
                                               const Eigen::VectorXd& y,
                                               double length_scale,
                                               double nugget) {
  if (x.rows() < 2) {
    throw InsufficientDataError("concentrated_log_likelihood: need n >= 2");
  }
  if (x.rows() != y.size()) {
    throw std::invalid_argument("concentrated_log_likelihood: size mismatch");
  }
  if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
    throw std::invalid_argument(
        "concentrated_log_likelihood: length_scale must be positive");
  }
  auto eval = eval_profiled(pairwise_sq_dist(x), y, length_scale, nugget);
  ProfiledLikelihood out;
  out.log_likelihood = eval.log_likelihood;
  out.mean = eval.mean;
  out.variance = eval.variance;
  out.nugget = eval.nugget;
  out.chol_lower = eval.llt.matrixL();
  return out;
}

GpModel::GpModel(Bounds bounds, Eigen::MatrixXd x_norm, Eigen::VectorXd y_std,
                 double output_shift, double output_scale, KernelParams params,
                 double gls_mean, double nugget)
    : bounds_(std::move(bounds)),
      x_norm_(std::move(x_norm)),
      y_std_(std::move(y_std)),
      output_shift_(output_shift),
      output_scale_(output_scale),
      params_(params),
      gls_mean_(gls_mean),
      nugget_(nugget) {
  const auto n = x_norm_.rows();
  const Eigen::MatrixXd sq_dist = pairwise_sq_dist(x_norm_);
  const Eigen::MatrixXd corr =
      (-sq_dist / (2.0 * params_.length_scale * params_.length_scale))
          .array()
          .exp();
  while (true) {
    Eigen::MatrixXd r = corr;
    r.diagonal().array() += nugget_;
    Eigen::LLT<Eigen::MatrixXd> llt(r);
    if (llt.info() == Eigen::Success) {
      chol_ = llt.matrixL();
      weights_ = llt.solve((y_std_.array() - gls_mean_).matrix());
      return;
    }
    if (nugget_ >= kNuggetMax) {
      throw ModelSingularError("GpModel: correlation matrix singular for n = " +
                               std::to_string(n));
    }
    nugget_ *= 10.0;
  }
}

Prediction GpModel::predict(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) {
    throw std::invalid_argument("GpModel::predict: dimension mismatch");
  }
  if (!x.allFinite()) {
    throw std::invalid_argument("GpModel::predict: non-finite input");
  }
  assert(contains(bounds_, x, 1e-9) && "predict: query outside bounds");

  const Eigen::VectorXd u = normalize(bounds_, x);
  const Eigen::VectorXd r =
      (-(x_norm_.rowwise() - u.transpose()).rowwise().squaredNorm() /
       (2.0 * params_.length_scale * params_.length_scale))
          .array()
          .exp();

  const double mu_std = gls_mean_ + r.dot(weights_);
  const Eigen::VectorXd v =
      chol_.triangularView<Eigen::Lower>().solve(r);
  const double var_std = params_.variance * (1.0 - v.squaredNorm());
  assert(var_std >= -1e-8 * params_.variance && "predicted variance below clamp floor");
  const double sigma_std = std::sqrt(std::max(0.0, var_std));

  return Prediction{output_shift_ + output_scale_ * mu_std,
                    output_scale_ * sigma_std};
}

GpModel fit(const Dataset& data, double nugget, int restarts) {
  if (data.size() < 2) {
    throw InsufficientDataError("fit: need at least 2 samples");
  }
  if (!(nugget > 0.0)) {
    throw std::invalid_argument("fit: nugget must be positive");
  }
  restarts = std::max(1, restarts);

  Eigen::MatrixXd x_norm(data.size(), data.dim());
  for (int i = 0; i < data.size(); ++i) {
    x_norm.row(i) = normalize(data.bounds(), data.point(i));
  }
  const double shift = data.values().mean();
  const double scale = standardized_scale(data.values(), shift);
  const Eigen::VectorXd y_std = (data.values().array() - shift) / scale;

  const Eigen::MatrixXd sq_dist = pairwise_sq_dist(x_norm);

  const double t_lo = std::log(kLengthScaleMin);
  const double t_hi = std::log(kLengthScaleMax);
  const double t_step = (t_hi - t_lo) / (kGridPoints - 1);

  struct Candidate {
    int cell;
    double t;
    double logl;
  };
  std::vector<Candidate> grid;
  grid.reserve(kGridPoints);
  const double neg_inf = -std::numeric_limits<double>::infinity();

  auto logl_at = [&](double t) -> double {
    try {
      return eval_profiled(sq_dist, y_std, std::exp(t), nugget).log_likelihood;
    } catch (const ModelSingularError&) {
      return neg_inf;
    }
  };

  for (int i = 0; i < kGridPoints; ++i) {
    const double t = t_lo + i * t_step;
    grid.push_back(Candidate{i, t, logl_at(t)});
  }

  std::vector<int> ranked(grid.size());
  std::iota(ranked.begin(), ranked.end(), 0);
  std::stable_sort(ranked.begin(), ranked.end(), [&](int a, int b) {
    return grid[a].logl > grid[b].logl;
  });
  if (grid[ranked[0]].logl == neg_inf) {
    throw ModelSingularError("fit: likelihood undefined on the whole grid");
  }

  double best_t = grid[ranked[0]].t;
  double best_logl = grid[ranked[0]].logl;

  // Golden-section refinement inside the bracket around each selected cell.
  const int n_refine = std::min<int>(restarts, static_cast<int>(ranked.size()));
  for (int r = 0; r < n_refine; ++r) {
    const int cell = grid[ranked[r]].cell;
    if (grid[ranked[r]].logl == neg_inf) break;
    double a = t_lo + std::max(0, cell - 1) * t_step;
    double b = t_lo + std::min(kGridPoints - 1, cell + 1) * t_step;
    double c = b - kGoldenRatio * (b - a);
    double d = a + kGoldenRatio * (b - a);
    double fc = logl_at(c);
    double fd = logl_at(d);
    for (int it = 0; it < kGoldenIterations; ++it) {
      if (fc > best_logl) {
        best_logl = fc;
        best_t = c;
      }
      if (fd > best_logl) {
        best_logl = fd;
        best_t = d;
      }
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kGoldenRatio * (b - a);
        fc = logl_at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kGoldenRatio * (b - a);
        fd = logl_at(d);
      }
    }
  }

  const double l = clip(std::exp(best_t), kLengthScaleMin, kLengthScaleMax);
  auto final_eval = eval_profiled(sq_dist, y_std, l, nugget);
  return GpModel(data.bounds(), std::move(x_norm), y_std, shift, scale,
                 KernelParams{l, final_eval.variance}, final_eval.mean,
                 final_eval.nugget);
}

}  // namespace ecibo
