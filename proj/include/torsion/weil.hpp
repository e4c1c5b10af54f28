#pragma once

#include "torsion/cyclotomic.hpp"
#include "torsion/fiber.hpp"
#include "torsion/function_group.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace torsion {

/// M(t, s) = tT + sS with T = (zeta_m, C_0), S = (1, C_k) on an I_{mk} fiber.
struct TorsionLabel {
    std::uint64_t t = 0;
    std::uint64_t s = 0;

    /// Reduces both entries into [0, m).
    static TorsionLabel reduced(std::int64_t t, std::int64_t s, std::uint64_t m);
    friend bool operator==(const TorsionLabel&, const TorsionLabel&) = default;
};

/// zeta_m^{t1 s2 - t2 s1}.
CycloElem weil_formula(TorsionLabel p, TorsionLabel q, std::uint64_t m);

/// k for a fiber with mk components; throws invalid_argument if m does not divide.
std::uint64_t fiber_multiplier(FiberShape shape, std::uint64_t m);

/// [m]^*(Q) - [m]^*(origin) for Q = (zeta_m^t, C_0): the m^2 points
/// (zeta_{m^2}^{t + m i}, C_{ck}) minus the m^2 points of order m.
Divisor pullback_divisor(FiberShape shape, std::uint64_t m, std::int64_t t);

/// The closed-form element with divisor pullback_divisor(shape, m, t):
/// g_j = zeta_m^{-t floor(j/k)} (u^m - zeta_m^t) / (u^m - 1) on components
/// j divisible by k, and the constant zeta_m^{-t floor(j/k)} elsewhere.
KElement explicit_pullback_function(FiberShape shape, std::uint64_t m, std::int64_t t);

enum class PullbackSource { abel_witness, explicit_formula };

/// The limit Weil pairing e_m computed from its definition in one standard
/// coordinate system, u'_j = twist^j u_j for an mk-th root of unity twist.
/// Arguments are always given in the untwisted coordinates.
///
/// e(P, tT) = g(X + P) / g(X) where div g = [m]^*(tT) - [m]^*(origin) and X
/// = (x, C_0), x running through 2, 3, 5, 7, ... until both sides are
/// defined. Other pairs go through e(P, Q) = e(P, T)^{t2} e(S, T)^{-t1 s2}.
///
/// Immutable after construction, so one instance may be shared by threads.
class LimitWeilPairing {
  public:
    LimitWeilPairing(FiberShape shape, std::uint64_t m, CycloElem twist = CycloElem(1),
                     PullbackSource source = PullbackSource::abel_witness);

    FiberShape shape() const { return shape_; }
    std::uint64_t m() const { return m_; }

    /// Coordinates (t, s) of an m-torsion point relative to this system's T and S.
    TorsionLabel label(const FiberPoint& p) const;

    /// The element g used for leaves with second argument tT.
    const KElement& pullback_function(std::uint64_t t) const { return g_.at(t % m_); }

    /// e(P, tT), straight from the definition.
    CycloElem leaf(const FiberPoint& p, std::uint64_t t) const;

    CycloElem operator()(const FiberPoint& p, const FiberPoint& q) const;

    /// values[i][j] = e(points[i], points[j]), sharing leaf evaluations.
    std::vector<std::vector<CycloElem>> table(const std::vector<FiberPoint>& points) const;

  private:
    FiberPoint local(const FiberPoint& p) const;
    CycloElem leaf_local(const FiberPoint& p, std::uint64_t t) const;

    FiberShape shape_;
    std::uint64_t m_;
    std::uint64_t k_;
    CycloElem twist_;
    std::vector<KElement> g_;
};

/// Definitional value of e_m(M(p), M(q)) on the given I_{mk} fiber.
CycloElem weil_definitional(TorsionLabel p, TorsionLabel q, std::uint64_t m, FiberShape shape);

struct WeilSuiteReport {
    std::uint64_t m = 0;
    std::uint64_t k = 0;
    std::uint64_t pairs_checked = 0;
    std::uint64_t twists_checked = 0;
    /// e(P_i, P_j) = zeta_m^exponents[i][j], points in torsion_points order.
    std::vector<std::vector<std::uint64_t>> exponents;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Exhaustive check over all m^4 ordered pairs: agreement with weil_formula,
/// mu_m-valuedness, bilinearity in both arguments, skew-symmetry, the
/// alternating property, non-degeneracy, agreement of the witness and the
/// closed-form pullback functions, and invariance under all mk coordinate
/// twists.
WeilSuiteReport weil_bilinearity_suite(std::uint64_t m, FiberShape shape);

/// The b in [1, m) with a b = 1 mod m (0 when m = 1). Throws invalid_argument
/// unless gcd(a, m) = 1.
std::uint64_t w_star(std::int64_t a, std::uint64_t m);

} // namespace torsion
