#include "torsion/weil.hpp"

#include <numeric>
#include <optional>
#include <utility>

namespace torsion {

namespace {

std::uint64_t reduce(std::int64_t a, std::uint64_t m)
{
    const auto sm = static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(((a % sm) + sm) % sm);
}

std::uint64_t next_prime(std::uint64_t n)
{
    for (++n;; ++n) {
        bool prime = true;
        for (std::uint64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
        if (prime) return n;
    }
}

// Pairing exponents combine through the reduction
//   e(P, Q) = e(P, T)^{t2} * e(S, T)^{-t1 s2},
// with the s2 = 0 case read off a direct leaf.
template <class Leaf>
CycloElem reduce_to_leaves(TorsionLabel p, TorsionLabel q, std::uint64_t m, Leaf&& leaf)
{
    if (q.s == 0) return leaf(0, q.t);
    const auto e_pt = leaf(0, 1);
    const auto e_st = leaf(1, 1);
    const std::uint64_t back = (m - (p.t * q.s) % m) % m;
    return e_pt.pow(static_cast<std::int64_t>(q.t)) * e_st.pow(static_cast<std::int64_t>(back));
}

constexpr std::size_t max_reported = 40;

void report(WeilSuiteReport& r, std::string msg)
{
    if (r.violations.size() < max_reported)
        r.violations.push_back(std::move(msg));
    else if (r.violations.size() == max_reported)
        r.violations.push_back("... further violations suppressed");
}

std::string label_str(TorsionLabel l) { return "M(" + std::to_string(l.t) + "," + std::to_string(l.s) + ")"; }

} // namespace

TorsionLabel TorsionLabel::reduced(std::int64_t t, std::int64_t s, std::uint64_t m)
{
    if (m == 0) throw invalid_argument("torsion label needs m >= 1");
    return {reduce(t, m), reduce(s, m)};
}

CycloElem weil_formula(TorsionLabel p, TorsionLabel q, std::uint64_t m)
{
    const auto e = static_cast<std::int64_t>(p.t * q.s) - static_cast<std::int64_t>(q.t * p.s);
    return root_of_unity(m, e);
}

std::uint64_t fiber_multiplier(FiberShape shape, std::uint64_t m)
{
    if (m == 0 || shape.m() % m != 0)
        throw invalid_argument(std::to_string(m) + "-torsion pairing needs a fiber I_{mk}; got I_" +
                               std::to_string(shape.m()));
    return shape.m() / m;
}

Divisor pullback_divisor(FiberShape shape, std::uint64_t m, std::int64_t t)
{
    const std::uint64_t k = fiber_multiplier(shape, m);
    const auto sm = static_cast<std::int64_t>(m);
    Divisor d(shape);
    for (std::int64_t i = 0; i < sm; ++i) {
        const CycloElem above = root_of_unity(m * m, t + sm * i);
        const CycloElem torsion = root_of_unity(m * m, sm * i);
        for (std::uint64_t c = 0; c < m; ++c) {
            const auto comp = static_cast<std::int64_t>(c * k);
            d.add(FiberPoint(shape, comp, above), 1);
            d.add(FiberPoint(shape, comp, torsion), -1);
        }
    }
    return d;
}

KElement explicit_pullback_function(FiberShape shape, std::uint64_t m, std::int64_t t)
{
    const std::uint64_t k = fiber_multiplier(shape, m);
    const auto sm = static_cast<std::int64_t>(m);
    std::vector<CycloElem> zeros, poles;
    for (std::int64_t i = 0; i < sm; ++i) {
        zeros.push_back(root_of_unity(m * m, t + sm * i)); // roots of u^m - zeta_m^t
        poles.push_back(root_of_unity(m * m, sm * i));     // roots of u^m - 1
    }
    std::vector<RationalFunc> funcs;
    for (std::uint64_t j = 0; j < shape.m(); ++j) {
        const CycloElem scale = root_of_unity(m, -t * static_cast<std::int64_t>(j / k));
        if (j % k == 0)
            funcs.emplace_back(scale, 0, zeros, poles);
        else
            funcs.push_back(RationalFunc::constant(scale));
    }
    return k_validate(std::move(funcs), shape);
}

// ---------------------------------------------------------------------------

LimitWeilPairing::LimitWeilPairing(FiberShape shape, std::uint64_t m, CycloElem twist, PullbackSource source)
    : shape_(shape), m_(m), k_(fiber_multiplier(shape, m)), twist_(std::move(twist))
{
    if (!twist_.pow(static_cast<std::int64_t>(shape.m())).is_one())
        throw invalid_argument("coordinate twist must be a root of unity of order dividing " +
                               std::to_string(shape.m()));
    g_.reserve(m);
    for (std::uint64_t t = 0; t < m; ++t) {
        const auto st = static_cast<std::int64_t>(t);
        g_.push_back(source == PullbackSource::abel_witness ? abel_witness(pullback_divisor(shape, m, st))
                                                            : explicit_pullback_function(shape, m, st));
    }
}

FiberPoint LimitWeilPairing::local(const FiberPoint& p) const
{
    if (p.shape() != shape_) throw invalid_argument("point lives on a different fiber");
    return twist_.is_one() ? p : twist_coordinates(p, twist_);
}

TorsionLabel LimitWeilPairing::label(const FiberPoint& p) const
{
    const FiberPoint q = local(p);
    auto t = discrete_log(q.coord(), m_);
    if (!t || q.component() % k_ != 0)
        throw invalid_argument("(" + to_string(p.coord()) + ", C_" + std::to_string(p.component()) +
                               ") is not an m-torsion point, m=" + std::to_string(m_));
    return {*t, q.component() / k_};
}

CycloElem LimitWeilPairing::leaf_local(const FiberPoint& p, std::uint64_t t) const
{
    const KElement& g = g_[t % m_];
    const RationalFunc& at_p = g[p.component()];
    std::uint64_t x = 1;
    for (int attempt = 0; attempt < 64; ++attempt) {
        x = next_prime(x);
        const CycloElem u(static_cast<long>(x));
        try {
            // X = (x, C_0), X + P = (x * coord, C_j).
            return evaluate(at_p, u * p.coord()) / evaluate(g[0], u);
        } catch (const evaluation_error&) {
        }
    }
    throw invariant_violation("no evaluation point avoided the divisor of the pullback function");
}

CycloElem LimitWeilPairing::leaf(const FiberPoint& p, std::uint64_t t) const { return leaf_local(local(p), t); }

CycloElem LimitWeilPairing::operator()(const FiberPoint& p, const FiberPoint& q) const
{
    const TorsionLabel lp = label(p), lq = label(q);
    const FiberPoint pl = local(p);
    const FiberPoint s(shape_, static_cast<std::int64_t>(k_), CycloElem(1));
    return reduce_to_leaves(lp, lq, m_, [&](int which, std::uint64_t t) {
        return leaf_local(which == 0 ? pl : s, t);
    });
}

std::vector<std::vector<CycloElem>> LimitWeilPairing::table(const std::vector<FiberPoint>& points) const
{
    const std::size_t n = points.size();
    std::vector<FiberPoint> locals;
    std::vector<TorsionLabel> labels;
    for (const auto& p : points) {
        labels.push_back(label(p));
        locals.push_back(local(p));
    }
    const FiberPoint s(shape_, static_cast<std::int64_t>(k_), CycloElem(1));
    const CycloElem e_st = leaf_local(s, 1);

    // leaves[i][t] = e(P_i, tT), filled on demand.
    std::vector<std::vector<std::optional<CycloElem>>> leaves(n, std::vector<std::optional<CycloElem>>(m_));
    auto cached = [&](std::size_t i, std::uint64_t t) -> const CycloElem& {
        auto& slot = leaves[i][t];
        if (!slot) slot = leaf_local(locals[i], t);
        return *slot;
    };

    std::vector<std::vector<CycloElem>> out(n, std::vector<CycloElem>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out[i][j] = reduce_to_leaves(labels[i], labels[j], m_, [&](int which, std::uint64_t t) {
                return which == 0 ? cached(i, t) : e_st;
            });
    return out;
}

CycloElem weil_definitional(TorsionLabel p, TorsionLabel q, std::uint64_t m, FiberShape shape)
{
    LimitWeilPairing e(shape, m);
    const auto sp = TorsionLabel::reduced(static_cast<std::int64_t>(p.t), static_cast<std::int64_t>(p.s), m);
    const auto sq = TorsionLabel::reduced(static_cast<std::int64_t>(q.t), static_cast<std::int64_t>(q.s), m);
    return e(torsion_point(shape, m, static_cast<std::int64_t>(sp.t), static_cast<std::int64_t>(sp.s)),
             torsion_point(shape, m, static_cast<std::int64_t>(sq.t), static_cast<std::int64_t>(sq.s)));
}

// ---------------------------------------------------------------------------

WeilSuiteReport weil_bilinearity_suite(std::uint64_t m, FiberShape shape)
{
    WeilSuiteReport r;
    r.m = m;
    r.k = fiber_multiplier(shape, m);
    const auto points = torsion_points(shape, m);
    const std::size_t n = points.size();
    std::vector<TorsionLabel> labels;
    for (std::uint64_t t = 0; t < m; ++t)
        for (std::uint64_t s = 0; s < m; ++s) labels.push_back({t, s});
    auto index = [&](TorsionLabel l) { return l.t * m + l.s; };

    for (std::uint64_t t = 0; t < m; ++t) {
        const auto st = static_cast<std::int64_t>(t);
        const KElement witness = abel_witness(pullback_divisor(shape, m, st));
        if (!(witness == explicit_pullback_function(shape, m, st)))
            report(r, "abel witness differs from the closed-form pullback function for t=" + std::to_string(t));
        if (!(div_map(witness) == pullback_divisor(shape, m, st)))
            report(r, "divisor of the pullback function is not [m]^*(tT) - [m]^*(0) for t=" + std::to_string(t));
    }

    const LimitWeilPairing standard(shape, m);
    const auto values = standard.table(points);
    r.exponents.assign(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            ++r.pairs_checked;
            const CycloElem& v = values[i][j];
            if (!v.pow(static_cast<std::int64_t>(m)).is_one()) {
                report(r, "e(" + label_str(labels[i]) + ", " + label_str(labels[j]) + ") = " + to_string(v) +
                              " is not an m-th root of unity");
                continue;
            }
            r.exponents[i][j] = *discrete_log(v, m);
            if (v != weil_formula(labels[i], labels[j], m))
                report(r, "e(" + label_str(labels[i]) + ", " + label_str(labels[j]) + ") = " + to_string(v) +
                              ", closed form gives " + to_string(weil_formula(labels[i], labels[j], m)));
        }
    }
    if (!r.ok()) return r;

    const auto& e = r.exponents;
    auto sum = [&](std::size_t i, std::size_t j) {
        return index({(labels[i].t + labels[j].t) % m, (labels[i].s + labels[j].s) % m});
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (e[i][i] != 0) report(r, "e(P, P) != 1 for P = " + label_str(labels[i]));
        bool degenerate = i != 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (e[i][j] != 0) degenerate = false;
            if ((e[i][j] + e[j][i]) % m != 0)
                report(r, "skew-symmetry fails for " + label_str(labels[i]) + ", " + label_str(labels[j]));
            for (std::size_t q = 0; q < n; ++q) {
                if (e[sum(i, j)][q] != (e[i][q] + e[j][q]) % m)
                    report(r, "additivity in the first argument fails for " + label_str(labels[i]) + ", " +
                                  label_str(labels[j]) + ", " + label_str(labels[q]));
                if (e[q][sum(i, j)] != (e[q][i] + e[q][j]) % m)
                    report(r, "additivity in the second argument fails for " + label_str(labels[q]) + ", " +
                                  label_str(labels[i]) + ", " + label_str(labels[j]));
            }
        }
        if (degenerate) report(r, label_str(labels[i]) + " pairs trivially with everything");
    }

    for (std::uint64_t i = 1; i < shape.m(); ++i) {
        const LimitWeilPairing twisted(shape, m, root_of_unity(shape.m(), static_cast<std::int64_t>(i)));
        ++r.twists_checked;
        const auto tv = twisted.table(points);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (tv[a][b] != values[a][b])
                    report(r, "twist by zeta_" + std::to_string(shape.m()) + "^" + std::to_string(i) + " changes e(" +
                                  label_str(labels[a]) + ", " + label_str(labels[b]) + ") to " + to_string(tv[a][b]));
    }
    return r;
}

std::uint64_t w_star(std::int64_t a, std::uint64_t m)
{
    if (m == 0) throw invalid_argument("w_star needs m >= 1");
    const std::uint64_t r = reduce(a, m);
    if (std::gcd(r, m) != 1)
        throw invalid_argument(std::to_string(a) + " is not invertible mod " + std::to_string(m));
    if (m == 1) return 0;
    // Extended Euclid on (r, m).
    std::int64_t old_r = static_cast<std::int64_t>(r), cur_r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, cur_s = 0;
    while (cur_r != 0) {
        const std::int64_t q = old_r / cur_r;
        old_r = std::exchange(cur_r, old_r - q * cur_r);
        old_s = std::exchange(cur_s, old_s - q * cur_s);
    }
    return reduce(old_s, m);
}

} // namespace torsion
