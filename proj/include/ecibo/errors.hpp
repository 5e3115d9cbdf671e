#ifndef ECIBO_ERRORS_HPP
#define ECIBO_ERRORS_HPP

#include <stdexcept>

namespace ecibo {

/// Covariance matrix could not be factorized even after nugget escalation.
class ModelSingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fewer samples than the operation requires (GP fitting needs n >= 2).
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point coincides with an archived sample within the duplicate tolerance.
class DuplicatePointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ecibo

#endif
