#pragma once

#include <stdexcept>
#include <string>

namespace torsion {

/// Bad caller input: out-of-range parameter, malformed value, shape mismatch.
class invalid_argument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class division_by_zero : public std::domain_error {
  public:
    division_by_zero() : std::domain_error("division by zero") {}
};

/// Requested cyclotomic order exceeds the configured cap.
class order_limit_exceeded : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// A rational function was evaluated at 0 or at one of its zeros or poles.
class evaluation_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// abel_witness was asked for a divisor that is not principal.
class not_principal : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A mathematical identity that must always hold did not. Never expected.
class invariant_violation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace torsion
