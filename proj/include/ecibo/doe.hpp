#ifndef ECIBO_DOE_HPP
#define ECIBO_DOE_HPP

#include <Eigen/Core>

#include "ecibo/bounds.hpp"
#include "ecibo/rng.hpp"

namespace ecibo {

/// Latin hypercube sample of n points (rows) in the box, original units.
/// Each dimension is split into n equal strata; exactly one point falls in
/// each stratum, at a uniform position within it, with an independent random
/// stratum permutation per dimension. Degenerate dimensions (lo == hi)
/// collapse to that value.
Eigen::MatrixXd latin_hypercube(int n, const Bounds& bounds, RngStream& rng);

}  // namespace ecibo

#endif
