#pragma once

#include <stdexcept>
#include <string>

namespace rotosc {

/// A solver (SVD, eigenvalue iteration, LU) failed to produce a result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws std::domain_error unless |theta| < pi/2.
void require_admissible_angle(double theta, const char* where);

}  // namespace rotosc
