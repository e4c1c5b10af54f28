#pragma once

#include "torsion/cyclotomic.hpp"
#include "torsion/errors.hpp"
#include "torsion/fiber.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace torsion {

/// g(u) = alpha * u^ell * prod (u - zeros_i) / prod (u - poles_k), all of
/// alpha, zeros, poles nonzero. Values common to zeros and poles are
/// cancelled on construction, so e = |zeros| and f = |poles| are well defined.
class RationalFunc {
  public:
    RationalFunc(CycloElem alpha, std::int64_t ell, std::vector<CycloElem> zeros = {},
                 std::vector<CycloElem> poles = {});

    static RationalFunc constant(CycloElem c) { return RationalFunc(std::move(c), 0); }

    const CycloElem& alpha() const { return alpha_; }
    std::int64_t ell() const { return ell_; }
    const std::vector<CycloElem>& zeros() const { return zeros_; }
    const std::vector<CycloElem>& poles() const { return poles_; }
    bool is_constant() const { return ell_ == 0 && zeros_.empty() && poles_.empty(); }

    RationalFunc inverse() const;
    friend RationalFunc operator*(const RationalFunc& a, const RationalFunc& b);

    /// Same alpha, same ell, same zero and pole multisets.
    friend bool operator==(const RationalFunc& a, const RationalFunc& b);

  private:
    CycloElem alpha_;
    std::int64_t ell_;
    std::vector<CycloElem> zeros_;
    std::vector<CycloElem> poles_;
};

/// Order at u = 0.
std::int64_t n0(const RationalFunc& g);
/// Order at u = infinity: f - e - ell.
std::int64_t n_inf(const RationalFunc& g);
/// Leading Laurent coefficient at u = 0: alpha (-1)^{e+f} prod zeros / prod poles.
CycloElem c0(const RationalFunc& g);
/// Leading Laurent coefficient at u = infinity: alpha.
CycloElem c_inf(const RationalFunc& g);

/// Throws evaluation_error when u is 0 or a zero or pole of g.
CycloElem evaluate(const RationalFunc& g, const CycloElem& u);

struct KViolation {
    char condition;     // 'a', 'b' or 'c'
    std::uint64_t node; // node j / j+1 for a and b; 0 for c
    std::string message;
};

class k_condition_error : public invalid_argument {
  public:
    explicit k_condition_error(std::vector<KViolation> violations);
    const std::vector<KViolation>& violations() const { return violations_; }

  private:
    std::vector<KViolation> violations_;
};

/// Every failure of the three membership conditions:
///   a) n_inf(g_j) + n0(g_{j+1}) = 0
///   b) c_inf(g_j) = c0(g_{j+1})
///   c) sum_j n0(g_j) = 0
/// with indices mod m.
std::vector<KViolation> k_violations(const std::vector<RationalFunc>& funcs, FiberShape shape);

/// An element of the function group: an m-tuple (g_0, ..., g_{m-1}), g_j a
/// function of the standard coordinate u_j, satisfying conditions a)-c).
/// Only obtainable through k_validate and the group operations.
class KElement {
  public:
    FiberShape shape() const { return shape_; }
    const std::vector<RationalFunc>& funcs() const { return funcs_; }
    const RationalFunc& operator[](std::size_t j) const { return funcs_[j]; }

    friend bool operator==(const KElement&, const KElement&) = default;

  private:
    KElement(FiberShape shape, std::vector<RationalFunc> funcs) : shape_(shape), funcs_(std::move(funcs)) {}
    friend KElement k_validate(std::vector<RationalFunc> funcs, FiberShape shape);

    FiberShape shape_;
    std::vector<RationalFunc> funcs_;
};

/// Throws invalid_argument on a length mismatch and k_condition_error
/// listing every violated condition otherwise.
KElement k_validate(std::vector<RationalFunc> funcs, FiberShape shape);

KElement k_constant(FiberShape shape, const CycloElem& c);
KElement k_mul(const KElement& g, const KElement& h);
KElement k_inv(const KElement& g);

/// Zeros and poles of each g_j placed on C_j; the parts at the nodes
/// (u_j = 0, infinity) are dropped.
Divisor div_map(const KElement& g);

/// deg D = 0 and D sums to the origin.
bool abel_check(const Divisor& d);

/// Some g in K with div_map(g) = D, normalized by alpha_0 = 1. Unique up to a
/// constant factor. Throws not_principal when abel_check(D) fails.
KElement abel_witness(const Divisor& d);

/// The common value c when g_j = c for every j.
std::optional<CycloElem> is_constant(const KElement& g);

} // namespace torsion
