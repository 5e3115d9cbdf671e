#include <doctest.h>

#include <Eigen/Core>
#include <cmath>

#include "ecibo/errors.hpp"
#include "ecibo/gp.hpp"
#include "ecibo/rng.hpp"
#include "oracles.hpp"

using ecibo::Bounds;
using ecibo::Dataset;
using ecibo::GpModel;
using ecibo::Interval;
using ecibo::KernelParams;
using ecibo::RngStream;

TEST_CASE("se_kernel: zero distance returns the variance") {
  Eigen::VectorXd u(3);
  u << 0.2, -1.0, 4.0;
  CHECK(ecibo::se_kernel(u, u, KernelParams{2.0, 3.0}) == 3.0);
}

TEST_CASE("se_kernel: unit distance at l = 1 gives exp(-1/2)") {
  Eigen::VectorXd u(1), v(1);
  u << 0.0;
  v << 1.0;
  const double k = ecibo::se_kernel(u, v, KernelParams{1.0, 1.0});
  CHECK(k == doctest::Approx(0.6065306597126334).epsilon(1e-12));
}

TEST_CASE("se_kernel: symmetric in its arguments") {
  RngStream rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    Eigen::VectorXd u(4), v(4);
    for (int j = 0; j < 4; ++j) {
      u[j] = rng.uniform(-5.0, 5.0);
      v[j] = rng.uniform(-5.0, 5.0);
    }
    const KernelParams p{rng.uniform(1.0, 3.0), rng.uniform(0.1, 4.0)};
    const double kuv = ecibo::se_kernel(u, v, p);
    CHECK(kuv == ecibo::se_kernel(v, u, p));
    CHECK(kuv > 0.0);
    CHECK(kuv <= p.variance);
  }
}

TEST_CASE("se_kernel: rejects non-finite input and bad length-scale") {
  Eigen::VectorXd u(1), v(1);
  u << 0.0;
  v << std::nan("");
  CHECK_THROWS_AS(ecibo::se_kernel(u, v, KernelParams{1.0, 1.0}),
                  std::invalid_argument);
  v << 1.0;
  CHECK_THROWS_AS(ecibo::se_kernel(u, v, KernelParams{0.0, 1.0}),
                  std::invalid_argument);
}

namespace {

Eigen::MatrixXd random_unit_points(RngStream& rng, int n, int d) {
  Eigen::MatrixXd x(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) x(i, j) = rng.uniform();
  }
  return x;
}

}  // namespace

TEST_CASE("concentrated likelihood: shifting y shifts the mean, not the variance") {
  RngStream rng(11);
  const Eigen::MatrixXd x = random_unit_points(rng, 6, 2);
  Eigen::VectorXd y(6);
  for (int i = 0; i < 6; ++i) y[i] = rng.uniform(-2.0, 2.0);
  const double c = 13.75;

  const auto base = ecibo::concentrated_log_likelihood(x, y, 0.7);
  const auto shifted =
      ecibo::concentrated_log_likelihood(x, (y.array() + c).matrix(), 0.7);
  CHECK(shifted.mean == doctest::Approx(base.mean + c).epsilon(1e-10));
  CHECK(shifted.variance == doctest::Approx(base.variance).epsilon(1e-9));
}

TEST_CASE("concentrated likelihood: constant y gives zero variance") {
  RngStream rng(12);
  const Eigen::MatrixXd x = random_unit_points(rng, 5, 3);
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(5, 4.25);
  const auto res = ecibo::concentrated_log_likelihood(x, y, 1.0);
  CHECK(res.mean == doctest::Approx(4.25).epsilon(1e-10));
  CHECK(res.variance == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("concentrated likelihood: matches the dense direct-inverse oracle") {
  RngStream rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3 + static_cast<int>(rng.index(6));
    const Eigen::MatrixXd x = random_unit_points(rng, n, 2);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = rng.uniform(-3.0, 3.0);
    const double l = rng.uniform(0.2, 2.0);

    const auto got = ecibo::concentrated_log_likelihood(x, y, l);
    const auto want = oracles::dense_profile(x, y, l, got.nugget);
    CHECK(got.mean == doctest::Approx(want.mean).epsilon(1e-8));
    CHECK(got.variance == doctest::Approx(want.variance).epsilon(1e-8));
    CHECK(got.log_likelihood ==
          doctest::Approx(want.log_likelihood).epsilon(1e-8));
  }
}

TEST_CASE("concentrated likelihood: requires n >= 2") {
  Eigen::MatrixXd x(1, 1);
  x << 0.5;
  Eigen::VectorXd y(1);
  y << 1.0;
  CHECK_THROWS_AS(ecibo::concentrated_log_likelihood(x, y, 1.0),
                  ecibo::InsufficientDataError);
}

namespace {

Dataset sine_dataset(int n = 7) {
  Dataset data(Bounds{Interval{0.0, 2.0 * M_PI}});
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x(1);
    x << 2.0 * M_PI * i / (n - 1);
    data.append(x, std::sin(x[0]));
  }
  return data;
}

}  // namespace

TEST_CASE("fit: posterior mean interpolates the samples") {
  const Dataset data = sine_dataset();
  const GpModel model = ecibo::fit(data);
  CHECK(model.params().length_scale >= ecibo::kLengthScaleMin);
  CHECK(model.params().length_scale <= ecibo::kLengthScaleMax);
  for (int i = 0; i < data.size(); ++i) {
    const auto p = model.predict(data.point(i));
    CHECK(std::abs(p.mu - data.value(i)) <= 1e-6 * model.output_scale());
    CHECK(p.sigma <= 1e-4 * model.output_scale());
  }
}

TEST_CASE("fit: constant data predicts that constant with zero spread") {
  Dataset data(Bounds{Interval{-1.0, 1.0}, Interval{-1.0, 1.0}});
  RngStream rng(21);
  for (int i = 0; i < 6; ++i) {
    Eigen::VectorXd x(2);
    x << rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0);
    data.append(x, 3.5);
  }
  const GpModel model = ecibo::fit(data);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::VectorXd x(2);
    x << rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0);
    const auto p = model.predict(x);
    CHECK(p.mu == doctest::Approx(3.5).epsilon(1e-9));
    CHECK(p.sigma <= 1e-9);
  }
}

TEST_CASE("fit: rejects fewer than two samples") {
  Dataset data(Bounds{Interval{0.0, 1.0}});
  Eigen::VectorXd x(1);
  x << 0.5;
  data.append(x, 1.0);
  CHECK_THROWS_AS(ecibo::fit(data), ecibo::InsufficientDataError);
}

TEST_CASE("fit: nugget escalates rather than failing on clustered data") {
  Dataset data(Bounds{Interval{0.0, 1.0}});
  // near-duplicate cluster; base nugget far below the default
  const double eps = 2e-9;
  for (int i = 0; i < 8; ++i) {
    Eigen::VectorXd x(1);
    x << 0.5 + i * eps;
    data.append(x, static_cast<double>(i % 2));
  }
  const GpModel model = ecibo::fit(data, 1e-16);
  CHECK(model.nugget() >= 1e-16);
  CHECK(std::isfinite(model.predict(data.point(0)).mu));
}

TEST_CASE("predict: reverts to the prior far from the data") {
  // assembled directly so the length-scale is known
  const Bounds bounds{Interval{0.0, 1.0}, Interval{0.0, 1.0}};
  Eigen::MatrixXd x_norm(5, 2);
  x_norm << 0.01, 0.02, 0.05, 0.03, 0.02, 0.08, 0.07, 0.07, 0.04, 0.05;
  Eigen::VectorXd y_std(5);
  y_std << 0.3, -0.7, 1.1, 0.2, -0.4;
  const double shift = 2.0, scale = 1.5, mean = 0.3, s2 = 0.8;
  const GpModel model(bounds, x_norm, y_std, shift, scale,
                      KernelParams{0.05, s2}, mean, 1e-10);

  Eigen::VectorXd far(2);
  far << 0.9, 0.9;  // normalized distance > 1.1 >= 10 * l = 0.5
  const auto p = model.predict(far);
  CHECK(std::abs(p.mu - (shift + scale * mean)) <= 1e-3);
  CHECK(std::abs(p.sigma - scale * std::sqrt(s2)) <= 1e-3);
}

TEST_CASE("predict: matches the dense direct-inverse oracle") {
  RngStream rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 5 + static_cast<int>(rng.index(8));
    const int d = 1 + static_cast<int>(rng.index(3));
    const Dataset data = oracles::random_dataset(rng, n, d);
    const GpModel model = ecibo::fit(data);
    for (int q = 0; q < 20; ++q) {
      Eigen::VectorXd x(d);
      for (int j = 0; j < d; ++j) {
        x[j] = rng.uniform(data.bounds()[static_cast<std::size_t>(j)].lo,
                           data.bounds()[static_cast<std::size_t>(j)].hi);
      }
      const auto got = model.predict(x);
      const auto want = oracles::dense_predict(data, model, x);
      const double tol = 1e-8 * std::max(1.0, std::abs(want.mu));
      CHECK(std::abs(got.mu - want.mu) <= tol);
      CHECK(std::abs(got.sigma - want.sigma) <=
            1e-8 * std::max(1.0, want.sigma));
    }
  }
}

TEST_CASE("predict: invariant under permutation of the dataset rows") {
  RngStream rng(41);
  const Dataset data = oracles::random_dataset(rng, 9, 2);
  Dataset permuted(data.bounds());
  const int order[] = {4, 0, 8, 2, 6, 1, 7, 3, 5};
  for (int i : order) permuted.append(data.point(i), data.value(i));

  const GpModel a = ecibo::fit(data);
  const GpModel b = ecibo::fit(permuted);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXd x(2);
    for (int j = 0; j < 2; ++j) {
      x[j] = rng.uniform(data.bounds()[static_cast<std::size_t>(j)].lo,
                         data.bounds()[static_cast<std::size_t>(j)].hi);
    }
    const auto pa = a.predict(x);
    const auto pb = b.predict(x);
    CHECK(pa.mu == doctest::Approx(pb.mu).epsilon(1e-10));
    CHECK(pa.sigma == doctest::Approx(pb.sigma).epsilon(1e-10));
  }
}

TEST_CASE("fit: equivariant under affine output transforms") {
  const Dataset data = sine_dataset(9);
  const double alpha = 2.5, beta = -7.0;
  Dataset scaled(data.bounds());
  for (int i = 0; i < data.size(); ++i) {
    scaled.append(data.point(i), alpha * data.value(i) + beta);
  }
  const GpModel base = ecibo::fit(data);
  const GpModel xformed = ecibo::fit(scaled);
  CHECK(xformed.params().length_scale ==
        doctest::Approx(base.params().length_scale).epsilon(1e-8));
  RngStream rng(51);
  for (int rep = 0; rep < 25; ++rep) {
    Eigen::VectorXd x(1);
    x << rng.uniform(0.0, 2.0 * M_PI);
    const auto p0 = base.predict(x);
    const auto p1 = xformed.predict(x);
    CHECK(p1.mu == doctest::Approx(alpha * p0.mu + beta).epsilon(1e-8));
    CHECK(std::abs(p1.sigma - alpha * p0.sigma) <=
          1e-8 * std::max(1.0, alpha * p0.sigma));
  }
}

TEST_CASE("model: Cholesky factor reconstructs the correlation system") {
  RngStream rng(61);
  const Dataset data = oracles::random_dataset(rng, 12, 3);
  const GpModel model = ecibo::fit(data);
  const Eigen::MatrixXd& l = model.chol();
  const Eigen::MatrixXd reconstructed = l * l.transpose();

  const int n = model.size();
  Eigen::MatrixXd expected(n, n);
  const KernelParams corr{model.params().length_scale, 1.0};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      expected(i, j) = ecibo::se_kernel(model.normalized_inputs().row(i),
                                        model.normalized_inputs().row(j), corr);
    }
  }
  expected.diagonal().array() += model.nugget();
  CHECK((reconstructed - expected).norm() <= 1e-8 * expected.norm());
}

TEST_CASE("predict: rejects non-finite queries") {
  const Dataset data = sine_dataset();
  const GpModel model = ecibo::fit(data);
  Eigen::VectorXd x(1);
  x << std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(model.predict(x), std::invalid_argument);
}
