#include "torsion/errors.hpp"
#include "torsion/fiber.hpp"

#include "generators.hpp"

#include <doctest.h>

using namespace torsion;

namespace {

CycloElem z(std::uint64_t n, std::int64_t k) { return root_of_unity(n, k); }

FiberPoint random_point(gen::Rng& rng, FiberShape shape)
{
    // coordinate: +-(small rational) * root of unity of order dividing 12
    BigRational q(gen::uniform(rng, 1, 4), gen::uniform(rng, 1, 3));
    q.canonicalize();
    CycloElem c = CycloElem(q) * z(12, gen::uniform(rng, 0, 11));
    return FiberPoint(shape, gen::uniform(rng, 0, static_cast<std::int64_t>(shape.m()) - 1), c);
}

} // namespace

TEST_CASE("FiberShape and FiberPoint construction")
{
    CHECK_THROWS_AS(FiberShape(0), invalid_argument);
    FiberShape i5(5);
    CHECK_THROWS_AS(FiberPoint(i5, 1, CycloElem(0)), invalid_argument);
    FiberPoint p(i5, -1, CycloElem(2));
    CHECK(p.component() == 4);
    CHECK(FiberPoint(i5, 7, CycloElem(2)).component() == 2);
    CHECK(FiberPoint::identity(i5).is_identity());
}

TEST_CASE("point_add examples")
{
    FiberShape i5(5);
    FiberPoint p(i5, 3, z(5, 2) * CycloElem(3));
    CHECK(point_add(FiberPoint::identity(i5), p) == p);
    CHECK(point_add(FiberPoint(i5, 0, z(5, 1)), FiberPoint(i5, 1, CycloElem(1))) == FiberPoint(i5, 1, z(5, 1)));
    CHECK(point_add(p, FiberPoint(i5, -3, p.coord().inverse())).is_identity());
    CHECK(point_add(p, point_neg(p)).is_identity());
    CHECK_THROWS_AS(point_add(p, FiberPoint::identity(FiberShape(4))), invalid_argument);
}

TEST_CASE("point_multiple examples")
{
    FiberShape i3(3);
    CHECK(point_multiple(2, FiberPoint(i3, 1, z(3, 1))) == FiberPoint(i3, 2, z(3, 2)));
    FiberPoint p(i3, 2, CycloElem(7));
    CHECK(point_multiple(0, p).is_identity());
    CHECK(point_multiple(-1, p) == point_neg(p));
    for (const auto& t : torsion_points(i3, 3)) CHECK(point_multiple(3, t).is_identity());
}

TEST_CASE("torsion_points examples")
{
    auto one = torsion_points(FiberShape(1), 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].is_identity());

    auto five = torsion_points(FiberShape(5), 5);
    CHECK(five.size() == 25);
    for (const auto& t : five) CHECK(point_multiple(5, t).is_identity());
    CHECK(five[1 * 5 + 3] == FiberPoint(FiberShape(5), 3, z(5, 1)));

    auto six = torsion_points(FiberShape(6), 3);
    CHECK(six.size() == 9);
    for (const auto& t : six) {
        CHECK(t.component() % 2 == 0);
        CHECK(t.coord().pow(3).is_one());
        CHECK(point_multiple(3, t).is_identity());
    }
    CHECK_THROWS_AS(torsion_points(FiberShape(5), 2), invalid_argument);
}

TEST_CASE("torsion_points form a group of order m^2")
{
    for (std::uint64_t m : {2u, 3u, 4u}) {
        for (std::uint64_t k : {1u, 2u}) {
            FiberShape shape(m * k);
            auto pts = torsion_points(shape, m);
            auto contains = [&](const FiberPoint& x) { return std::find(pts.begin(), pts.end(), x) != pts.end(); };
            for (std::size_t i = 0; i < pts.size(); ++i) {
                for (std::size_t j = i + 1; j < pts.size(); ++j) CHECK_FALSE(pts[i] == pts[j]);
                CHECK(contains(point_neg(pts[i])));
                for (const auto& q : pts) CHECK(contains(point_add(pts[i], q)));
            }
        }
    }
}

TEST_CASE("divisor_degree and divisor_sum examples")
{
    FiberShape i5(5);
    Divisor empty(i5);
    CHECK(divisor_degree(empty) == 0);
    CHECK(divisor_sum(empty).is_identity());

    FiberPoint p(i5, 2, z(5, 1));
    Divisor d(i5);
    d.add(p, 5);
    d.add(FiberPoint::identity(i5), -5);
    CHECK(divisor_degree(d) == 0);
    CHECK(divisor_sum(d).is_identity());

    Divisor three(i5);
    three.add(p, 3);
    CHECK(divisor_degree(three) == 3);

    Divisor cancel(i5);
    cancel.add(p);
    cancel.add(p, -1);
    CHECK(cancel.empty());
    CHECK(divisor_sum(cancel).is_identity());

    gen::Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        FiberPoint a = random_point(rng, i5), b = random_point(rng, i5);
        Divisor e(i5);
        e.add(a);
        e.add(b);
        e.add(point_add(a, b), -1);
        e.add(FiberPoint::identity(i5), -1);
        CHECK(divisor_degree(e) == 0);
        CHECK(divisor_sum(e).is_identity());
    }
}

TEST_CASE("Divisor keys collide across cyclotomic orders")
{
    FiberShape i2(2);
    Divisor d(i2);
    d.add(FiberPoint(i2, 1, z(3, 1)), 2);
    d.add(FiberPoint(i2, 1, -z(6, 5)), -2); // -zeta_6^5 = zeta_3
    CHECK(d.empty());

    Divisor a(i2), b(i2);
    a.add(FiberPoint(i2, 0, z(4, 2)), 1);
    b.add(FiberPoint(i2, 0, CycloElem(-1)), 1);
    CHECK(a == b);
    CHECK(a.multiplicity(FiberPoint(i2, 0, z(8, 4))) == 1);
    CHECK(a.multiplicity(FiberPoint(i2, 1, CycloElem(-1))) == 0);
}

TEST_CASE("twist_coordinates examples")
{
    FiberShape i5(5);
    FiberPoint p(i5, 3, CycloElem(2));
    CHECK(twist_coordinates(p, CycloElem(1)) == p);
    CHECK(twist_coordinates(FiberPoint::identity(i5), z(5, 2)).is_identity());
    CHECK(twist_coordinates(FiberPoint(i5, 1, CycloElem(1)), z(5, 1)) == FiberPoint(i5, 1, z(5, 1)));
    CHECK_THROWS_AS(twist_coordinates(p, z(3, 1)), invalid_argument);
    CHECK_THROWS_AS(twist_coordinates(p, CycloElem(2)), invalid_argument);
}

TEST_CASE("property: group axioms, Phi homomorphism, twist compatibility")
{
    gen::Rng rng(31337);
    for (std::uint64_t m : {1u, 2u, 3u, 6u}) {
        FiberShape shape(m);
        for (int trial = 0; trial < 25; ++trial) {
            FiberPoint a = random_point(rng, shape), b = random_point(rng, shape), c = random_point(rng, shape);
            CHECK(point_add(point_add(a, b), c) == point_add(a, point_add(b, c)));
            CHECK(point_add(a, b) == point_add(b, a));
            CHECK(point_add(a, FiberPoint::identity(shape)) == a);
            CHECK(point_add(a, point_neg(a)).is_identity());

            Divisor d1(shape), d2(shape);
            d1.add(a, gen::uniform(rng, -3, 3));
            d1.add(b, gen::uniform(rng, -3, 3));
            d2.add(c, gen::uniform(rng, -3, 3));
            d2.add(a, gen::uniform(rng, -3, 3));
            CHECK(divisor_sum(d1 + d2) == point_add(divisor_sum(d1), divisor_sum(d2)));
            CHECK(divisor_degree(d1 + d2) == divisor_degree(d1) + divisor_degree(d2));

            CycloElem zeta = z(m, gen::uniform(rng, 0, static_cast<std::int64_t>(m) - 1));
            CHECK(twist_coordinates(point_add(a, b), zeta) ==
                  point_add(twist_coordinates(a, zeta), twist_coordinates(b, zeta)));
        }
    }
}
