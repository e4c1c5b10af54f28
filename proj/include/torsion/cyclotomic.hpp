#pragma once

#include "torsion/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace torsion {

/// Integer polynomial, coefficient i multiplies x^i.
using IntPoly = std::vector<BigInt>;

/// Largest cyclotomic order accepted anywhere in the library (default 10000).
std::uint64_t max_order();
void set_max_order(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

/// Phi_N by the recursive division (x^N - 1) / prod_{d | N, d < N} Phi_d.
/// Memoized; safe to call concurrently. The reference stays valid for the
/// lifetime of the process.
const IntPoly& cyclotomic_polynomial(std::uint64_t n);

/// Exact element of Q(zeta_N), stored as a polynomial in zeta_N of degree
/// < phi(N) reduced modulo Phi_N, so equal numbers of the same order have
/// identical representations. Internally the coefficients are kept as an
/// integer vector over one positive common denominator.
///
/// Binary operations on elements of different orders embed both operands into
/// Q(zeta_L), L = lcm of the orders. The result's order is L; no attempt is
/// made to shrink it back down.
class CycloElem {
  public:
    CycloElem();
    CycloElem(long value); // NOLINT: implicit conversion from integer literals is intended
    explicit CycloElem(const BigRational& value, std::uint64_t order = 1);

    /// Builds sum coeffs[i] * zeta_N^i; any length is accepted and reduced mod Phi_N.
    static CycloElem from_coeffs(std::uint64_t order, const std::vector<BigRational>& coeffs);

    std::uint64_t order() const { return order_; }
    /// Reduced coefficient vector, length phi(order).
    std::vector<BigRational> coeffs() const;

    bool is_zero() const;
    bool is_one() const;
    std::optional<BigRational> as_rational() const;

    /// Same number as an element of Q(zeta_M). Requires order() | M.
    CycloElem embed(std::uint64_t m) const;

    CycloElem inverse() const;
    CycloElem pow(std::int64_t e) const;

    CycloElem operator-() const;
    CycloElem& operator+=(const CycloElem& rhs);
    CycloElem& operator-=(const CycloElem& rhs);
    CycloElem& operator*=(const CycloElem& rhs);
    CycloElem& operator/=(const CycloElem& rhs);

    friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
    friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
    friend CycloElem operator*(CycloElem a, const CycloElem& b) { return a *= b; }
    friend CycloElem operator/(CycloElem a, const CycloElem& b) { return a /= b; }

    /// Numeric equality; works across orders.
    friend bool operator==(const CycloElem& a, const CycloElem& b);

    /// Strict total order on the representation (order first, then coefficients).
    /// Only meaningful as numeric ordering when both sides share an order.
    friend std::strong_ordering representation_order(const CycloElem& a, const CycloElem& b);

  private:
    CycloElem(std::uint64_t order, std::vector<BigInt> num, BigInt den);
    void normalize();
    std::optional<CycloElem> shrink() const;

    std::uint64_t order_ = 1;
    std::vector<BigInt> num_;
    BigInt den_ = 1;
};

/// zeta_N^k with zeta_N = exp(2 pi i / N).
CycloElem root_of_unity(std::uint64_t n, std::int64_t k);

inline CycloElem embed(const CycloElem& x, std::uint64_t m) { return x.embed(m); }

/// x = zeta_order^exponent with exponent in [0, order) and gcd(order, exponent) = 1
/// (so order is the multiplicative order of x).
struct RootOfUnity {
    std::uint64_t order = 1;
    std::uint64_t exponent = 0;
    friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
};

std::optional<RootOfUnity> as_root_of_unity(const CycloElem& x);

/// Exponent e in [0, m) with x = zeta_m^e, if x is an m-th root of unity.
std::optional<std::uint64_t> discrete_log(const CycloElem& x, std::uint64_t m);

/// "zeta_N^k" for roots of unity (minimal N), "a/b" for other rationals,
/// otherwise a polynomial in z = zeta_N, e.g. "1 - 2*z^3 (N=7)".
std::string to_string(const CycloElem& x);

/// "zeta_m^k" with k in [0, m). Throws invariant_violation if x is not in mu_m.
std::string render_root(const CycloElem& x, std::uint64_t m);

} // namespace torsion
