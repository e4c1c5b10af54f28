#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace torsion {

using BigInt = mpz_class;
using BigRational = mpq_class; // mpq_class keeps itself canonical after every arithmetic op

/// "num/den", or just "num" when den == 1.
std::string to_string(const BigRational& q);

/// Accepts "n", "-n", "n/d". Throws torsion::invalid_argument on garbage or d == 0.
BigRational parse_rational(std::string_view text);

} // namespace torsion
