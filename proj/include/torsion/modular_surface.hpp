#pragma once

#include "torsion/fiber.hpp"
#include "torsion/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace torsion {

bool is_prime(std::uint64_t n);

/// An element of G(p) = (Z/p)^x / +-1, stored by its representative in
/// [1, (p-1)/2] (1 when p = 2).
class GpClass {
  public:
    /// Class of value mod p. Throws invalid_argument when p | value.
    GpClass(std::int64_t value, std::uint64_t p);

    std::uint64_t rep() const { return rep_; }
    std::uint64_t p() const { return p_; }
    bool contains(std::int64_t value) const;
    GpClass inverse() const;
    friend GpClass operator*(const GpClass& a, const GpClass& b);
    friend bool operator==(const GpClass&, const GpClass&) = default;

  private:
    std::uint64_t rep_;
    std::uint64_t p_;
};

/// Inverse of a mod p in [1, p). Throws invalid_argument when p | a.
std::uint64_t inverse_mod(std::int64_t a, std::uint64_t p);

enum class CuspKind { I1, Ip };

std::string to_string(CuspKind kind);

/// A cusp of X_1(p): r/p (fiber I_1) or 1/s (fiber I_p), 1 <= index <= (p-1)/2.
struct CuspData {
    CuspKind kind;
    std::uint64_t index;
    std::uint64_t weight; // number of fiber components: 1 or p
    std::uint64_t p;

    /// "r/p" or "1/s".
    std::string rep() const;
    friend bool operator==(const CuspData&, const CuspData&) = default;
};

/// Throws invalid_argument unless p is a prime >= 5.
void require_surface_prime(std::uint64_t p);

/// The p - 1 cusps, I_1 cusps r = 1..(p-1)/2 first, then I_p cusps s = 1..(p-1)/2.
std::vector<CuspData> cusps(std::uint64_t p);

/// l_r(T_alpha) = alpha r^{-1} as a class. Throws invalid_argument for the
/// zero section or an index out of range.
GpClass root_of_unity_number(std::uint64_t p, std::int64_t alpha, std::uint64_t r);

/// k(T_alpha) at a cusp: alpha s at the I_p cusp 1/s, empty (component 0)
/// at I_1 cusps and for the zero section.
std::optional<GpClass> component_number(std::uint64_t p, std::int64_t alpha, const CuspData& cusp);

/// Where T_alpha meets the singular fiber over the cusp, as a point of I_1 or
/// I_p: (zeta_p^{alpha r^{-1}}, C_0) over r/p and (1, C_{alpha s}) over 1/s.
FiberPoint section_point(std::uint64_t p, std::int64_t alpha, const CuspData& cusp);

/// M[i] for i = 0..(p-1)/2 and R[i] for i = 1..(p-1)/2 (R[0] unused, 0).
struct Equidistribution {
    std::vector<BigRational> M;
    std::vector<BigRational> R;
    friend bool operator==(const Equidistribution&, const Equidistribution&) = default;
};

/// Weighted fractions from the component and root-of-unity number formulas.
Equidistribution equidistribution(std::uint64_t p, std::int64_t alpha);

/// The same fractions obtained by multiplying T inside each singular fiber
/// with the fiber group law and reading off components and coordinates.
Equidistribution equidistribution_from_fibers(std::uint64_t p, std::int64_t alpha);

BigRational m_fraction(std::uint64_t p, std::int64_t alpha, std::uint64_t i);

/// For p = 2, 3 there is a single class and R_1 = 1; larger p go through the
/// cusp tables.
BigRational r_fraction(std::uint64_t p, std::int64_t alpha, std::uint64_t i);

BigRational m_closed_form(std::uint64_t p, std::uint64_t i);
BigRational r_closed_form(std::uint64_t p);

/// Z[i-1][j-1] = class of i j^{-1}, 1 <= i, j <= (p-1)/2.
std::vector<std::vector<GpClass>> z_matrix(std::uint64_t p);

/// r/p <-> 1/r.
CuspData involution(const CuspData& cusp);

struct CheckLine {
    std::string what;
    bool pass;
};

struct CheckReport {
    std::vector<CheckLine> lines;
    bool ok() const;
    std::size_t passed() const;
};

/// l_x(T) = k_{Ax}(T)^{-1} for every I_1 cusp x.
CheckReport duality_check(std::uint64_t p);

struct QuotientRow {
    CuspData cusp;           // the cusp of X_1(p)
    CuspKind quotient_kind;  // fiber type of the quotient fibration there
    std::uint64_t quotient_weight;
    std::optional<GpClass> k; // component number of T'; empty means 0
};

/// Component numbers of T' on the quotient fibration, where the fiber types
/// over r/p and 1/s are swapped and k_x(T') = l_x(T_alpha)^{-1}.
std::vector<QuotientRow> quotient_component_numbers(std::uint64_t p, std::int64_t alpha = 1);

/// For each I_1 cusp and alpha != 0: w_star(a, p), a = alpha r^{-1} mod p,
/// lies in the quotient component class, and the Z with e_p(aT, Z) = zeta_p
/// are exactly the p-torsion points on component w_star(a, p).
CheckReport weil_cross_check(std::uint64_t p);

} // namespace torsion
