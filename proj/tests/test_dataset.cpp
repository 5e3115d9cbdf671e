#include <doctest.h>

#include <Eigen/Core>

#include "ecibo/dataset.hpp"
#include "ecibo/errors.hpp"

using ecibo::Bounds;
using ecibo::Dataset;
using ecibo::Interval;

namespace {
Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}
}  // namespace

TEST_CASE("dataset: append and accessors") {
  Dataset data(Bounds{Interval{0.0, 1.0}, Interval{-2.0, 2.0}});
  data.append(vec2(0.5, 0.0), 3.0);
  data.append(vec2(0.25, 1.0), -1.0);
  CHECK(data.size() == 2);
  CHECK(data.dim() == 2);
  CHECK(data.value(1) == -1.0);
  CHECK(data.point(1)[1] == 1.0);
}

TEST_CASE("dataset: rejects out-of-bounds and non-finite points") {
  Dataset data(Bounds{Interval{0.0, 1.0}});
  Eigen::VectorXd x(1);
  x << 1.5;
  CHECK_THROWS_AS(data.append(x, 0.0), std::invalid_argument);
  x << std::nan("");
  CHECK_THROWS_AS(data.append(x, 0.0), std::invalid_argument);
  x << 0.5;
  CHECK_THROWS_AS(data.append(x, std::nan("")), std::invalid_argument);
  Eigen::VectorXd wrong(2);
  wrong << 0.1, 0.2;
  CHECK_THROWS_AS(data.append(wrong, 0.0), std::invalid_argument);
}

TEST_CASE("dataset: duplicates within 1e-10 normalized are rejected") {
  Dataset data(Bounds{Interval{0.0, 10.0}, Interval{0.0, 10.0}});
  data.append(vec2(5.0, 5.0), 1.0);
  // 0.5e-10 in normalized units = 0.5e-9 in original units here
  CHECK(data.has_point_near(vec2(5.0 + 5e-10, 5.0)));
  CHECK_THROWS_AS(data.append(vec2(5.0 + 5e-10, 5.0), 2.0),
                  ecibo::DuplicatePointError);
  // just beyond the tolerance is fine
  CHECK_FALSE(data.has_point_near(vec2(5.0 + 5e-9, 5.0)));
  data.append(vec2(5.0 + 5e-9, 5.0), 2.0);
  CHECK(data.size() == 2);
}

TEST_CASE("dataset: argmin returns first index under ties") {
  Dataset data(Bounds{Interval{0.0, 1.0}});
  Eigen::VectorXd x(1);
  x << 0.1;
  data.append(x, 2.0);
  x << 0.2;
  data.append(x, 1.0);
  x << 0.3;
  data.append(x, 1.0);
  CHECK(data.argmin() == 1);
}

TEST_CASE("dataset: invalid bounds throw") {
  CHECK_THROWS_AS(Dataset(Bounds{}), std::invalid_argument);
  CHECK_THROWS_AS(Dataset(Bounds{Interval{1.0, 0.0}}), std::invalid_argument);
}
