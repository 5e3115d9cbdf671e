#ifndef ECIBO_BENCHMARKS_HPP
#define ECIBO_BENCHMARKS_HPP

#include <Eigen/Core>
#include <atomic>
#include <cstdint>
#include <memory>
#include <string>

#include "ecibo/bounds.hpp"

namespace ecibo {

enum class ProblemId {
  ellipsoid,
  rosenbrock,
  ackley,
  griewank,
  rastrigin,
  three_hump_camel,
  sine_demo,
};

std::string to_string(ProblemId id);
ProblemId problem_id_from_string(const std::string& name);

/// An analytical black-box minimization problem. Copies share the evaluation
/// counter, so budget audits see every evaluate() call on any copy. The
/// counter update is atomic; evaluation itself is pure.
class Problem {
 public:
  Problem(ProblemId id, int dim, Bounds bounds);

  ProblemId id() const { return id_; }
  std::string name() const { return to_string(id_); }
  int dim() const { return dim_; }
  const Bounds& bounds() const { return bounds_; }

  /// Objective value at x. Throws std::invalid_argument on dimension
  /// mismatch or non-finite input. Increments the evaluation counter.
  double evaluate(const Eigen::VectorXd& x) const;

  std::uint64_t evaluation_count() const { return counter_->load(); }
  void reset_evaluation_count() const { counter_->store(0); }

 private:
  ProblemId id_;
  int dim_;
  Bounds bounds_;
  std::shared_ptr<std::atomic<std::uint64_t>> counter_;
};

/// Standard forms and domains:
///   ellipsoid        sum i * x_i^2                     on [-5.12, 5.12]^d
///   rosenbrock       sum 100(x_{i+1}-x_i^2)^2+(1-x_i)^2 on [-2.048, 2.048]^d, d >= 2
///   ackley           a=20, b=0.2, c=2*pi               on [-32.768, 32.768]^d
///   griewank         sum x^2/4000 - prod cos(x_i/sqrt(i)) + 1 on [-600, 600]^d
///   rastrigin        10 d + sum x^2 - 10 cos(2 pi x)   on [-5.12, 5.12]^d
///   three_hump_camel 2x1^2 - 1.05x1^4 + x1^6/6 + x1 x2 + x2^2 on [-2, 2]^2
///   sine_demo        sin(x)                            on [0, 2*pi]
/// Throws std::invalid_argument for an unsupported (id, d) combination.
Problem make_problem(ProblemId id, int dim);

}  // namespace ecibo

#endif
