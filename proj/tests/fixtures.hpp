#pragma once

// Shared test fixtures: the two worked example elements of K on an I_{mk}
// fiber, and random generators for points, divisors and K elements.

#include "torsion/function_group.hpp"

#include "generators.hpp"

namespace torsion::fixture {

/// The point of C_{alpha k} with coordinate zeta, on I_{mk}.
inline FiberPoint example_point(std::uint64_t m, std::uint64_t k, std::uint64_t alpha, const CycloElem& zeta)
{
    return FiberPoint(FiberShape(m * k), static_cast<std::int64_t>(alpha * k), zeta);
}

/// D = m p - m 0 for the point above.
inline Divisor example_divisor(std::uint64_t m, std::uint64_t k, std::uint64_t alpha, const CycloElem& zeta)
{
    FiberShape shape(m * k);
    Divisor d(shape);
    d.add(example_point(m, k, alpha, zeta), static_cast<std::int64_t>(m));
    d.add(FiberPoint::identity(shape), -static_cast<std::int64_t>(m));
    return d;
}

/// The explicit tuples with divisor m p - m 0, transcribed literally:
///   alpha = 0:  g_0 = (u - zeta)^m / (u - 1)^m, g_j = 1 otherwise
///   alpha >= 1: g_0 = u^alpha / (u - 1)^m,
///               g_j = u^{alpha - m}                    for 1 <= j < alpha k,
///               g_{alpha k} = (-1)^m u^{alpha - m} (u - zeta)^m,
///               g_j = (-1)^m u^alpha                   for alpha k < j < mk.
inline std::vector<RationalFunc> example_funcs(std::uint64_t m, std::uint64_t k, std::uint64_t alpha,
                                               const CycloElem& zeta)
{
    const std::uint64_t n = m * k;
    const auto sm = static_cast<std::int64_t>(m);
    const auto sa = static_cast<std::int64_t>(alpha);
    const std::vector<CycloElem> zetas(m, zeta), ones(m, CycloElem(1));
    const CycloElem sign = m % 2 == 0 ? CycloElem(1) : CycloElem(-1);
    std::vector<RationalFunc> g;
    if (alpha == 0) {
        g.emplace_back(CycloElem(1), 0, zetas, ones);
        for (std::uint64_t j = 1; j < n; ++j) g.push_back(RationalFunc::constant(CycloElem(1)));
        return g;
    }
    g.emplace_back(CycloElem(1), sa, std::vector<CycloElem>{}, ones);
    for (std::uint64_t j = 1; j < alpha * k; ++j) g.emplace_back(CycloElem(1), sa - sm);
    g.emplace_back(sign, sa - sm, zetas);
    for (std::uint64_t j = alpha * k + 1; j < n; ++j) g.emplace_back(sign, sa);
    return g;
}

inline FiberPoint random_point(gen::Rng& rng, FiberShape shape, std::uint64_t root_order = 12)
{
    BigRational q(gen::uniform(rng, 1, 4), gen::uniform(rng, 1, 3));
    q.canonicalize();
    if (gen::uniform(rng, 0, 3) == 0) q = 1; // favour roots of unity
    const auto r = static_cast<std::int64_t>(root_order);
    CycloElem c = CycloElem(q) * root_of_unity(root_order, gen::uniform(rng, 0, r - 1));
    return FiberPoint(shape, gen::uniform(rng, 0, static_cast<std::int64_t>(shape.m()) - 1), c);
}

/// Random divisor with 1..4 support points, multiplicities in [-3, 3].
inline Divisor random_divisor(gen::Rng& rng, FiberShape shape)
{
    Divisor d(shape);
    const auto n = gen::uniform(rng, 1, 4);
    for (std::int64_t i = 0; i < n; ++i) d.add(random_point(rng, shape), gen::uniform(rng, -3, 3));
    return d;
}

/// Random divisor forced to have degree 0 and to sum to the origin:
/// D' + (-sum D') - (1 + deg D') 0.
inline Divisor random_principal_divisor(gen::Rng& rng, FiberShape shape)
{
    Divisor d = random_divisor(rng, shape);
    const std::int64_t deg = divisor_degree(d);
    FiberPoint s = divisor_sum(d);
    d.add(point_neg(s), 1);
    d.add(FiberPoint::identity(shape), -(1 + deg));
    return d;
}

/// Random element of K built straight from the membership conditions:
/// orders ell_j with sum 0, zero/pole counts with f_j - e_j = ell_j - ell_{j+1},
/// scalars chained through condition b), and one zero on C_0 rescaled so the
/// chain closes.
inline std::vector<RationalFunc> random_k_funcs(gen::Rng& rng, FiberShape shape)
{
    const std::uint64_t m = shape.m();
    std::vector<std::int64_t> ell(m);
    std::int64_t sum = 0;
    for (std::uint64_t j = 1; j < m; ++j) sum += ell[j] = gen::uniform(rng, -2, 2);
    ell[0] = -sum;

    auto coord = [&] { return random_point(rng, shape).coord(); };
    std::vector<std::vector<CycloElem>> zeros(m), poles(m);
    for (std::uint64_t j = 0; j < m; ++j) {
        const std::int64_t delta = ell[(j + 1) % m] - ell[j]; // = e_j - f_j
        std::int64_t f = std::max<std::int64_t>(0, -delta) + gen::uniform(rng, 0, 2);
        if (j == 0) f = std::max<std::int64_t>(f, 1 - delta); // need e_0 >= 1
        const std::int64_t e = f + delta;
        for (std::int64_t i = 0; i < e; ++i) zeros[j].push_back(coord());
        for (std::int64_t i = 0; i < f; ++i) poles[j].push_back(coord());
    }

    auto r = [&](std::uint64_t j) {
        CycloElem v(1);
        for (const auto& z : zeros[j]) v *= z;
        for (const auto& p : poles[j]) v /= p;
        return (zeros[j].size() + poles[j].size()) % 2 == 0 ? v : -v;
    };
    CycloElem total(1);
    for (std::uint64_t j = 0; j < m; ++j) total *= r(j);
    zeros[0][0] /= total;

    CycloElem alpha = CycloElem(gen::uniform(rng, 1, 3)) * root_of_unity(6, gen::uniform(rng, 0, 5));
    std::vector<RationalFunc> g;
    g.emplace_back(alpha, ell[0], zeros[0], poles[0]);
    for (std::uint64_t j = 1; j < m; ++j) {
        alpha /= r(j);
        g.emplace_back(alpha, ell[j], zeros[j], poles[j]);
    }
    return g;
}

} // namespace torsion::fixture
