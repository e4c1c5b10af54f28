#include "torsion/function_group.hpp"

#include <algorithm>
#include <numeric>

namespace torsion {

namespace {

void require_nonzero(const CycloElem& x, const char* what)
{
    if (x.is_zero()) throw invalid_argument(std::string(what) + " must be nonzero");
}

CycloElem product(const std::vector<CycloElem>& xs)
{
    CycloElem acc(1);
    for (const auto& x : xs) acc *= x;
    return acc;
}

bool same_multiset(const std::vector<CycloElem>& a, const std::vector<CycloElem>& b)
{
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& x : a) {
        bool found = false;
        for (std::size_t i = 0; i < b.size() && !found; ++i) {
            if (!used[i] && b[i] == x) used[i] = found = true;
        }
        if (!found) return false;
    }
    return true;
}

std::string idx(std::uint64_t j) { return std::to_string(j); }

} // namespace

RationalFunc::RationalFunc(CycloElem alpha, std::int64_t ell, std::vector<CycloElem> zeros,
                           std::vector<CycloElem> poles)
    : alpha_(std::move(alpha)), ell_(ell)
{
    require_nonzero(alpha_, "leading scalar alpha");
    for (const auto& z : zeros) require_nonzero(z, "zero lambda_i");
    for (const auto& p : poles) require_nonzero(p, "pole mu_k");

    std::vector<bool> pole_used(poles.size(), false);
    for (auto& z : zeros) {
        bool cancelled = false;
        for (std::size_t k = 0; k < poles.size() && !cancelled; ++k) {
            if (!pole_used[k] && poles[k] == z) pole_used[k] = cancelled = true;
        }
        if (!cancelled) zeros_.push_back(std::move(z));
    }
    for (std::size_t k = 0; k < poles.size(); ++k)
        if (!pole_used[k]) poles_.push_back(std::move(poles[k]));
}

RationalFunc RationalFunc::inverse() const { return RationalFunc(alpha_.inverse(), -ell_, poles_, zeros_); }

RationalFunc operator*(const RationalFunc& a, const RationalFunc& b)
{
    std::vector<CycloElem> zeros = a.zeros_, poles = a.poles_;
    zeros.insert(zeros.end(), b.zeros_.begin(), b.zeros_.end());
    poles.insert(poles.end(), b.poles_.begin(), b.poles_.end());
    return RationalFunc(a.alpha_ * b.alpha_, a.ell_ + b.ell_, std::move(zeros), std::move(poles));
}

bool operator==(const RationalFunc& a, const RationalFunc& b)
{
    return a.ell_ == b.ell_ && a.alpha_ == b.alpha_ && same_multiset(a.zeros_, b.zeros_) &&
           same_multiset(a.poles_, b.poles_);
}

std::int64_t n0(const RationalFunc& g) { return g.ell(); }

std::int64_t n_inf(const RationalFunc& g)
{
    return static_cast<std::int64_t>(g.poles().size()) - static_cast<std::int64_t>(g.zeros().size()) - g.ell();
}

CycloElem c0(const RationalFunc& g)
{
    CycloElem value = g.alpha() * product(g.zeros()) / product(g.poles());
    return (g.zeros().size() + g.poles().size()) % 2 == 0 ? value : -value;
}

CycloElem c_inf(const RationalFunc& g) { return g.alpha(); }

CycloElem evaluate(const RationalFunc& g, const CycloElem& u)
{
    if (u.is_zero()) throw evaluation_error("cannot evaluate at u = 0");
    CycloElem num = g.alpha() * u.pow(g.ell());
    for (const auto& z : g.zeros()) {
        CycloElem f = u - z;
        if (f.is_zero()) throw evaluation_error("evaluation point " + to_string(u) + " is a zero");
        num *= f;
    }
    CycloElem den(1);
    for (const auto& p : g.poles()) {
        CycloElem f = u - p;
        if (f.is_zero()) throw evaluation_error("evaluation point " + to_string(u) + " is a pole");
        den *= f;
    }
    return num / den;
}

// ---------------------------------------------------------------------------

k_condition_error::k_condition_error(std::vector<KViolation> violations)
    : invalid_argument([&] {
          std::string msg = "not an element of K:";
          for (const auto& v : violations) msg += " [" + std::string(1, v.condition) + "] " + v.message + ";";
          return msg;
      }()),
      violations_(std::move(violations))
{
}

std::vector<KViolation> k_violations(const std::vector<RationalFunc>& funcs, FiberShape shape)
{
    const std::uint64_t m = shape.m();
    if (funcs.size() != m)
        throw invalid_argument("K element on I_" + std::to_string(m) + " needs " + std::to_string(m) +
                               " functions, got " + std::to_string(funcs.size()));
    std::vector<KViolation> out;
    for (std::uint64_t j = 0; j < m; ++j) {
        const auto& g = funcs[j];
        const auto& next = funcs[(j + 1) % m];
        if (n_inf(g) + n0(next) != 0)
            out.push_back({'a', j,
                           "order mismatch at node " + idx(j) + "/" + idx((j + 1) % m) + ": n_inf(g_" + idx(j) +
                               ") = " + std::to_string(n_inf(g)) + ", n_0(g_" + idx((j + 1) % m) +
                               ") = " + std::to_string(n0(next))});
    }
    for (std::uint64_t j = 0; j < m; ++j) {
        const auto& g = funcs[j];
        const auto& next = funcs[(j + 1) % m];
        if (c_inf(g) != c0(next))
            out.push_back({'b', j,
                           "leading-coefficient mismatch at node " + idx(j) + "/" + idx((j + 1) % m) + ": c_inf = " +
                               to_string(c_inf(g)) + ", c_0 = " + to_string(c0(next))});
    }
    std::int64_t total = 0;
    for (const auto& g : funcs) total += n0(g);
    if (total != 0) out.push_back({'c', 0, "sum of n_0 is " + std::to_string(total)});
    return out;
}

KElement k_validate(std::vector<RationalFunc> funcs, FiberShape shape)
{
    auto violations = k_violations(funcs, shape);
    if (!violations.empty()) throw k_condition_error(std::move(violations));
    return KElement(shape, std::move(funcs));
}

KElement k_constant(FiberShape shape, const CycloElem& c)
{
    return k_validate(std::vector<RationalFunc>(shape.m(), RationalFunc::constant(c)), shape);
}

KElement k_mul(const KElement& g, const KElement& h)
{
    if (g.shape() != h.shape()) throw invalid_argument("K elements live on different fibers");
    std::vector<RationalFunc> funcs;
    funcs.reserve(g.funcs().size());
    for (std::size_t j = 0; j < g.funcs().size(); ++j) funcs.push_back(g[j] * h[j]);
    return k_validate(std::move(funcs), g.shape());
}

KElement k_inv(const KElement& g)
{
    std::vector<RationalFunc> funcs;
    funcs.reserve(g.funcs().size());
    for (const auto& f : g.funcs()) funcs.push_back(f.inverse());
    return k_validate(std::move(funcs), g.shape());
}

Divisor div_map(const KElement& g)
{
    Divisor d(g.shape());
    for (std::size_t j = 0; j < g.funcs().size(); ++j) {
        const auto comp = static_cast<std::int64_t>(j);
        for (const auto& z : g[j].zeros()) d.add(FiberPoint(g.shape(), comp, z), 1);
        for (const auto& p : g[j].poles()) d.add(FiberPoint(g.shape(), comp, p), -1);
    }
    return d;
}

bool abel_check(const Divisor& d) { return divisor_degree(d) == 0 && divisor_sum(d).is_identity(); }

KElement abel_witness(const Divisor& d)
{
    if (divisor_degree(d) != 0)
        throw not_principal("divisor has degree " + std::to_string(divisor_degree(d)) + ", not 0");
    if (!divisor_sum(d).is_identity()) {
        FiberPoint s = divisor_sum(d);
        throw not_principal("divisor sums to (" + to_string(s.coord()) + ", C_" + std::to_string(s.component()) +
                            "), not the origin");
    }

    const std::uint64_t m = d.shape().m();
    std::vector<std::vector<CycloElem>> zeros(m), poles(m);
    for (const auto& [p, mult] : d.terms()) {
        auto& bucket = mult > 0 ? zeros[p.component()] : poles[p.component()];
        for (std::int64_t i = 0; i < std::abs(mult); ++i) bucket.push_back(p.coord());
    }

    // Condition a) forces ell_{j+1} = ell_j + (e_j - f_j); condition c) then
    // fixes ell_0 = sum_j j (e_j - f_j) / m, an integer because the Z/m part
    // of the sum of D vanishes.
    std::int64_t weighted = 0;
    for (std::uint64_t j = 0; j < m; ++j)
        weighted += static_cast<std::int64_t>(j) *
                    (static_cast<std::int64_t>(zeros[j].size()) - static_cast<std::int64_t>(poles[j].size()));
    const auto sm = static_cast<std::int64_t>(m);
    if (weighted % sm != 0) throw invariant_violation("abel_witness: component sum not divisible by m");
    std::vector<std::int64_t> ell(m);
    ell[0] = weighted / sm;
    for (std::uint64_t j = 0; j + 1 < m; ++j)
        ell[j + 1] = ell[j] + static_cast<std::int64_t>(zeros[j].size()) - static_cast<std::int64_t>(poles[j].size());

    // Condition b): alpha_j = alpha_{j+1} r_{j+1}, where r_j = c0(g_j)/alpha_j.
    // Starting from alpha_0 = 1 the chain closes at node m-1/0 because the C*
    // part of the sum of D is 1.
    std::vector<RationalFunc> funcs;
    funcs.reserve(m);
    funcs.emplace_back(CycloElem(1), ell[0], zeros[0], poles[0]);
    CycloElem alpha(1);
    for (std::uint64_t j = 1; j < m; ++j) {
        RationalFunc unit(CycloElem(1), ell[j], zeros[j], poles[j]);
        alpha /= c0(unit);
        funcs.emplace_back(alpha, ell[j], std::move(zeros[j]), std::move(poles[j]));
    }

    try {
        return k_validate(std::move(funcs), d.shape());
    } catch (const k_condition_error& e) {
        throw invariant_violation(std::string("abel_witness produced an invalid K element: ") + e.what());
    }
}

std::optional<CycloElem> is_constant(const KElement& g)
{
    const auto& first = g[0];
    if (!first.is_constant()) return std::nullopt;
    for (const auto& f : g.funcs())
        if (!f.is_constant() || f.alpha() != first.alpha()) return std::nullopt;
    return first.alpha();
}

} // namespace torsion
