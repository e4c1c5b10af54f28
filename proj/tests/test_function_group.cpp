#include "torsion/function_group.hpp"

#include "fixtures.hpp"

#include <doctest.h>

using namespace torsion;

namespace {

CycloElem z(std::uint64_t n, std::int64_t k) { return root_of_unity(n, k); }

std::vector<CycloElem> repeat(const CycloElem& x, std::size_t n) { return std::vector<CycloElem>(n, x); }

} // namespace

TEST_CASE("RationalFunc invariants")
{
    CHECK_THROWS_AS(RationalFunc(CycloElem(0), 0), invalid_argument);
    CHECK_THROWS_AS(RationalFunc(CycloElem(1), 0, {CycloElem(0)}), invalid_argument);
    CHECK_THROWS_AS(RationalFunc(CycloElem(1), 0, {}, {CycloElem(0)}), invalid_argument);

    RationalFunc g(CycloElem(2), 1, {z(3, 1), CycloElem(5), z(6, 2)}, {z(3, 1), CycloElem(7)});
    CHECK(g.zeros().size() == 2); // zeta_3 cancelled once; zeta_6^2 = zeta_3 survives
    CHECK(g.poles().size() == 1);
}

TEST_CASE("cancellation preserves c0 and c_inf")
{
    const CycloElem lambda = z(5, 2) * CycloElem(3);
    std::vector<CycloElem> zeros{lambda, CycloElem(2), z(4, 1)};
    std::vector<CycloElem> poles{lambda, CycloElem(-1)};
    // c0 of the uncancelled expression, by hand
    CycloElem raw = CycloElem(7) * (lambda * CycloElem(2) * z(4, 1)) / (lambda * CycloElem(-1));
    raw = -raw; // (-1)^{3+2}
    RationalFunc g(CycloElem(7), -2, zeros, poles);
    CHECK(g.zeros().size() == 2);
    CHECK(g.poles().size() == 1);
    CHECK(c0(g) == raw);
    CHECK(c_inf(g) == CycloElem(7));
    CHECK(n_inf(g) == 1 - 2 + 2);
}

TEST_CASE("n0 / n_inf / c0 / c_inf examples")
{
    const std::uint64_t m = 4;
    const CycloElem zeta = z(m, 1);
    RationalFunc ratio(CycloElem(1), 0, repeat(zeta, m), repeat(CycloElem(1), m));
    CHECK(n0(RationalFunc(CycloElem(1), 0, {zeta}, {CycloElem(1)})) == 0);
    CHECK(n0(RationalFunc(CycloElem(1), 3)) == 3);
    CHECK(n0(RationalFunc::constant(CycloElem(5))) == 0);

    CHECK(n_inf(ratio) == 0);
    CHECK(n_inf(RationalFunc(CycloElem(1), 3)) == -3);
    CHECK(n_inf(RationalFunc::constant(CycloElem(5))) == 0);

    CHECK(c0(RationalFunc(CycloElem(1), 0, {zeta}, {CycloElem(1)})) == zeta);
    CHECK(c0(RationalFunc::constant(z(5, 1))) == z(5, 1));
    const CycloElem lambda = CycloElem(3) * z(7, 2);
    CHECK(c0(RationalFunc(CycloElem(1), 1, {lambda})) == -lambda);

    CHECK(c_inf(RationalFunc(z(5, 1), 2, {CycloElem(3)}, {CycloElem(4)})) == z(5, 1));
    CHECK(c_inf(RationalFunc::constant(CycloElem(9))) == CycloElem(9));
    CHECK(c_inf(RationalFunc(CycloElem(1), 0, {CycloElem(2)})).is_one());
}

TEST_CASE("evaluate examples")
{
    // ((u - zeta_3) / (u - 1))^2 at u = -1, against direct substitution
    RationalFunc g(CycloElem(1), 0, repeat(z(3, 1), 2), repeat(CycloElem(1), 2));
    CycloElem u(-1);
    CycloElem expected = ((u - z(3, 1)) / (u - CycloElem(1))).pow(2);
    CHECK(evaluate(g, u) == expected);
    // (-1 - zeta_3) = zeta_3^2, so the value is zeta_3^4 / 4 = zeta_3 / 4.
    CHECK(evaluate(g, u) == z(3, 1) / CycloElem(4));

    CHECK(evaluate(RationalFunc::constant(CycloElem(8)), z(9, 4)) == CycloElem(8));
    CHECK(evaluate(RationalFunc(CycloElem(1), 1), z(5, 1)) == z(5, 1));
    CHECK(evaluate(RationalFunc(CycloElem(1), -2, {}, {CycloElem(3)}), CycloElem(2)) ==
          CycloElem(BigRational(-1, 4)));

    CHECK_THROWS_AS(evaluate(g, CycloElem(0)), evaluation_error);
    CHECK_THROWS_AS(evaluate(g, z(3, 1)), evaluation_error);
    CHECK_THROWS_AS(evaluate(g, CycloElem(1)), evaluation_error);
    CHECK_THROWS_AS(evaluate(g, z(6, 2)), evaluation_error); // zeta_3 in a bigger field
}

TEST_CASE("k_validate: the two worked example tuples")
{
    for (std::uint64_t m : {2u, 3u, 5u}) {
        for (std::uint64_t k : {1u, 2u}) {
            for (std::uint64_t a = 0; a < m; ++a) {
                for (std::int64_t e = 1; e < static_cast<std::int64_t>(m); ++e) {
                    if (std::gcd<std::uint64_t>(m, e) != 1) continue;
                    CAPTURE(m);
                    CAPTURE(k);
                    CAPTURE(a);
                    CAPTURE(e);
                    const CycloElem zeta = z(m, e);
                    auto funcs = fixture::example_funcs(m, k, a, zeta);
                    CHECK(k_violations(funcs, FiberShape(m * k)).empty());
                    KElement g = k_validate(funcs, FiberShape(m * k));
                    CHECK(div_map(g) == fixture::example_divisor(m, k, a, zeta));
                }
            }
        }
    }
}

TEST_CASE("k_validate reports each violated condition with its node")
{
    FiberShape i3(3);
    std::vector<RationalFunc> consts{RationalFunc::constant(CycloElem(1)), RationalFunc::constant(CycloElem(1)),
                                     RationalFunc::constant(CycloElem(2))};
    auto v = k_violations(consts, i3);
    REQUIRE(v.size() == 2);
    CHECK(v[0].condition == 'b');
    CHECK(v[0].node == 1); // c_inf(g_1) = 1 vs c0(g_2) = 2
    CHECK(v[1].condition == 'b');
    CHECK(v[1].node == 2); // wrap-around node 2/0
    CHECK_THROWS_AS(k_validate(consts, i3), k_condition_error);

    std::vector<RationalFunc> orders{RationalFunc(CycloElem(1), 1), RationalFunc::constant(CycloElem(1)),
                                     RationalFunc::constant(CycloElem(1))};
    auto w = k_violations(orders, i3);
    int a = 0, c = 0;
    for (const auto& x : w) a += x.condition == 'a', c += x.condition == 'c';
    CHECK(a == 2); // nodes 0/1 and 2/0
    CHECK(c == 1);

    CHECK_THROWS_AS(k_validate(consts, FiberShape(2)), invalid_argument);
    try {
        k_validate(consts, i3);
    } catch (const k_condition_error& e) {
        CHECK(e.violations().size() == 2);
    }
}

TEST_CASE("k_mul / k_inv examples")
{
    FiberShape i4(4);
    KElement c = k_constant(i4, CycloElem(3));
    KElement d = k_constant(i4, z(5, 2));
    CHECK(is_constant(k_mul(c, d)) == CycloElem(3) * z(5, 2));

    KElement ex = k_validate(fixture::example_funcs(2, 2, 1, CycloElem(-1)), i4);
    CHECK(div_map(k_mul(ex, ex)) == fixture::example_divisor(2, 2, 1, CycloElem(-1)).scaled(2));
    CHECK(is_constant(k_mul(ex, k_inv(ex))) == CycloElem(1));
    CHECK_THROWS_AS(k_mul(ex, k_constant(FiberShape(3), CycloElem(1))), invalid_argument);
}

TEST_CASE("div_map examples")
{
    const std::uint64_t m = 3;
    KElement g = k_validate(fixture::example_funcs(m, 1, 0, z(3, 1)), FiberShape(m));
    Divisor expected{FiberShape(m)};
    expected.add(FiberPoint(FiberShape(m), 0, z(3, 1)), 3);
    expected.add(FiberPoint(FiberShape(m), 0, CycloElem(1)), -3);
    CHECK(div_map(g) == expected);
    CHECK(div_map(k_constant(FiberShape(m), CycloElem(4))).empty());

    gen::Rng rng(17);
    for (int t = 0; t < 20; ++t) {
        KElement a = k_validate(fixture::random_k_funcs(rng, FiberShape(m)), FiberShape(m));
        KElement b = k_validate(fixture::random_k_funcs(rng, FiberShape(m)), FiberShape(m));
        CHECK(div_map(k_mul(a, b)) == div_map(a) + div_map(b));
    }
}

TEST_CASE("abel_check examples")
{
    FiberShape i3(3);
    CHECK(abel_check(fixture::example_divisor(3, 1, 2, z(3, 2))));
    Divisor d(i3);
    d.add(FiberPoint(i3, 1, CycloElem(2)));
    d.add(FiberPoint::identity(i3), -1);
    CHECK_FALSE(abel_check(d));

    FiberPoint p(i3, 1, CycloElem(2)), q(i3, 2, z(4, 1));
    Divisor e(i3);
    e.add(p);
    e.add(q);
    e.add(point_add(p, q), -1);
    e.add(FiberPoint::identity(i3), -1);
    CHECK(abel_check(e));
}

TEST_CASE("abel_witness examples")
{
    for (std::uint64_t m : {2u, 3u, 5u}) {
        const CycloElem zeta = z(m, 1);
        Divisor d = fixture::example_divisor(m, 1, 0, zeta);
        KElement w = abel_witness(d);
        CHECK(div_map(w) == d);
        KElement closed = k_validate(fixture::example_funcs(m, 1, 0, zeta), FiberShape(m));
        CHECK(is_constant(k_mul(w, k_inv(closed))).has_value());
    }

    KElement one = abel_witness(Divisor(FiberShape(4)));
    CHECK(is_constant(one) == CycloElem(1));

    FiberShape i2(2);
    FiberPoint p(i2, 1, CycloElem(2));
    Divisor d(i2);
    d.add(p);
    d.add(point_neg(p));
    d.add(FiberPoint::identity(i2), -2);
    KElement w = abel_witness(d);
    CHECK(k_violations(w.funcs(), i2).empty());
    CHECK(div_map(w) == d);
    CHECK(w[0].alpha().is_one());

    Divisor bad(i2);
    bad.add(p);
    bad.add(FiberPoint::identity(i2), -1);
    CHECK_THROWS_AS(abel_witness(bad), not_principal);
    Divisor deg(i2);
    deg.add(p, 2);
    CHECK_THROWS_AS(abel_witness(deg), not_principal);
}

TEST_CASE("abel_witness recovers the alpha >= 1 example exactly")
{
    for (std::uint64_t m : {2u, 3u, 5u})
        for (std::uint64_t k : {1u, 2u})
            for (std::uint64_t a = 1; a < m; ++a) {
                const CycloElem zeta = z(m, 1);
                KElement w = abel_witness(fixture::example_divisor(m, k, a, zeta));
                KElement closed = k_validate(fixture::example_funcs(m, k, a, zeta), FiberShape(m * k));
                CHECK(w == closed);
            }
}

TEST_CASE("is_constant examples")
{
    CHECK(is_constant(k_constant(FiberShape(3), z(5, 1))) == z(5, 1));
    KElement ex = k_validate(fixture::example_funcs(3, 1, 1, z(3, 1)), FiberShape(3));
    CHECK_FALSE(is_constant(ex).has_value());
}

TEST_CASE("property: exact sequence and Abel theorem on random data")
{
    gen::Rng rng(4242);
    for (std::uint64_t m : {1u, 2u, 3u, 4u}) {
        FiberShape shape(m);
        for (int t = 0; t < 40; ++t) {
            // necessity: divisors of K elements pass abel_check
            KElement g = k_validate(fixture::random_k_funcs(rng, shape), shape);
            Divisor dg = div_map(g);
            CHECK(abel_check(dg));
            CHECK(dg.empty() == is_constant(g).has_value());

            // sufficiency: principal divisors get a witness with the right divisor
            Divisor d = fixture::random_principal_divisor(rng, shape);
            REQUIRE(abel_check(d));
            CHECK(div_map(abel_witness(d)) == d);

            // refusal exactly off the principal subgroup
            Divisor r = fixture::random_divisor(rng, shape);
            if (abel_check(r)) {
                CHECK(div_map(abel_witness(r)) == r);
            } else {
                CHECK_THROWS_AS(abel_witness(r), not_principal);
            }
        }
    }
}

TEST_CASE("kernel of div_map is the constants (exhaustive monomial tuples)")
{
    // Elements with empty divisor are tuples of monomials alpha_j u^ell_j.
    const std::vector<CycloElem> scalars{CycloElem(1), CycloElem(-1), CycloElem(2), z(3, 1)};
    for (std::uint64_t m : {1u, 2u, 3u}) {
        FiberShape shape(m);
        std::size_t total = 1;
        for (std::uint64_t j = 0; j < m; ++j) total *= 3 * scalars.size();
        std::size_t valid = 0;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<RationalFunc> funcs;
            std::size_t c = code;
            for (std::uint64_t j = 0; j < m; ++j) {
                const auto ell = static_cast<std::int64_t>(c % 3) - 1;
                c /= 3;
                funcs.emplace_back(scalars[c % scalars.size()], ell);
                c /= scalars.size();
            }
            if (!k_violations(funcs, shape).empty()) continue;
            ++valid;
            KElement g = k_validate(funcs, shape);
            CHECK(div_map(g).empty());
            CHECK(is_constant(g).has_value());
        }
        CHECK(valid == scalars.size());
    }
}
