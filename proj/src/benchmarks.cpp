#include "ecibo/benchmarks.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ecibo {

std::string to_string(ProblemId id) {
  switch (id) {
    case ProblemId::ellipsoid: return "ellipsoid";
    case ProblemId::rosenbrock: return "rosenbrock";
    case ProblemId::ackley: return "ackley";
    case ProblemId::griewank: return "griewank";
    case ProblemId::rastrigin: return "rastrigin";
    case ProblemId::three_hump_camel: return "three-hump-camel";
    case ProblemId::sine_demo: return "sine-demo";
  }
  throw std::invalid_argument("to_string: unknown ProblemId");
}

ProblemId problem_id_from_string(const std::string& name) {
  if (name == "ellipsoid") return ProblemId::ellipsoid;
  if (name == "rosenbrock") return ProblemId::rosenbrock;
  if (name == "ackley") return ProblemId::ackley;
  if (name == "griewank") return ProblemId::griewank;
  if (name == "rastrigin") return ProblemId::rastrigin;
  if (name == "three-hump-camel") return ProblemId::three_hump_camel;
  if (name == "sine-demo") return ProblemId::sine_demo;
  throw std::invalid_argument("unknown problem: '" + name + "'");
}

Problem::Problem(ProblemId id, int dim, Bounds bounds)
    : id_(id),
      dim_(dim),
      bounds_(std::move(bounds)),
      counter_(std::make_shared<std::atomic<std::uint64_t>>(0)) {}

namespace {

double ellipsoid(const Eigen::VectorXd& x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    s += static_cast<double>(i + 1) * x[i] * x[i];
  }
  return s;
}

double rosenbrock(const Eigen::VectorXd& x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    s += 100.0 * a * a + b * b;
  }
  return s;
}

double ackley(const Eigen::VectorXd& x) {
  const double a = 20.0, b = 0.2, c = 2.0 * M_PI;
  const double n = static_cast<double>(x.size());
  const double sq = x.squaredNorm() / n;
  double cs = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) cs += std::cos(c * x[i]);
  return -a * std::exp(-b * std::sqrt(sq)) - std::exp(cs / n) + a + std::exp(1.0);
}

double griewank(const Eigen::VectorXd& x) {
  double s = x.squaredNorm() / 4000.0;
  double p = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return s - p + 1.0;
}

double rastrigin(const Eigen::VectorXd& x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    s += x[i] * x[i] - 10.0 * std::cos(2.0 * M_PI * x[i]);
  }
  return s;
}

double three_hump_camel(const Eigen::VectorXd& x) {
  const double x1 = x[0], x2 = x[1];
  const double x1_2 = x1 * x1;
  return 2.0 * x1_2 - 1.05 * x1_2 * x1_2 + x1_2 * x1_2 * x1_2 / 6.0 +
         x1 * x2 + x2 * x2;
}

}  // namespace

double Problem::evaluate(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("Problem::evaluate: dimension mismatch");
  }
  if (!x.allFinite()) {
    throw std::invalid_argument("Problem::evaluate: non-finite input");
  }
  assert(contains(bounds_, x, 1e-9) && "evaluate: point outside bounds");
  counter_->fetch_add(1, std::memory_order_relaxed);
  switch (id_) {
    case ProblemId::ellipsoid: return ellipsoid(x);
    case ProblemId::rosenbrock: return rosenbrock(x);
    case ProblemId::ackley: return ackley(x);
    case ProblemId::griewank: return griewank(x);
    case ProblemId::rastrigin: return rastrigin(x);
    case ProblemId::three_hump_camel: return three_hump_camel(x);
    case ProblemId::sine_demo: return std::sin(x[0]);
  }
  throw std::invalid_argument("Problem::evaluate: unknown id");
}

Problem make_problem(ProblemId id, int dim) {
  switch (id) {
    case ProblemId::ellipsoid:
      if (dim < 1) throw std::invalid_argument("ellipsoid: dim must be >= 1");
      return Problem(id, dim, uniform_bounds(dim, -5.12, 5.12));
    case ProblemId::rosenbrock:
      if (dim < 2) throw std::invalid_argument("rosenbrock: dim must be >= 2");
      return Problem(id, dim, uniform_bounds(dim, -2.048, 2.048));
    case ProblemId::ackley:
      if (dim < 1) throw std::invalid_argument("ackley: dim must be >= 1");
      return Problem(id, dim, uniform_bounds(dim, -32.768, 32.768));
    case ProblemId::griewank:
      if (dim < 1) throw std::invalid_argument("griewank: dim must be >= 1");
      return Problem(id, dim, uniform_bounds(dim, -600.0, 600.0));
    case ProblemId::rastrigin:
      if (dim < 1) throw std::invalid_argument("rastrigin: dim must be >= 1");
      return Problem(id, dim, uniform_bounds(dim, -5.12, 5.12));
    case ProblemId::three_hump_camel:
      if (dim != 2) {
        throw std::invalid_argument("three-hump-camel: dim is fixed at 2");
      }
      return Problem(id, 2, uniform_bounds(2, -2.0, 2.0));
    case ProblemId::sine_demo:
      if (dim != 1) throw std::invalid_argument("sine-demo: dim is fixed at 1");
      return Problem(id, 1, Bounds{Interval{0.0, 2.0 * M_PI}});
  }
  throw std::invalid_argument("make_problem: unknown id");
}

}  // namespace ecibo
