#pragma once

#include "torsion/cyclotomic.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace torsion {

/// An I_m fiber: a cycle of m components C_0, ..., C_{m-1}.
class FiberShape {
  public:
    explicit FiberShape(std::uint64_t m);
    std::uint64_t m() const { return m_; }
    friend bool operator==(const FiberShape&, const FiberShape&) = default;

  private:
    std::uint64_t m_;
};

/// A point of the smooth part of an I_m fiber, written in a standard set of
/// affine coordinates: the point u_j = coord on component C_j. The group law
/// is that of C* x Z/m. Nodes (u_j = 0 or infinity) cannot be represented.
class FiberPoint {
  public:
    /// Throws invalid_argument when coord is zero. component is reduced mod m.
    FiberPoint(FiberShape shape, std::int64_t component, CycloElem coord);

    /// The origin: u_0 = 1 on C_0.
    static FiberPoint identity(FiberShape shape);

    FiberShape shape() const { return shape_; }
    std::uint64_t component() const { return component_; }
    const CycloElem& coord() const { return coord_; }
    bool is_identity() const { return component_ == 0 && coord_.is_one(); }

    friend bool operator==(const FiberPoint& a, const FiberPoint& b)
    {
        return a.shape_ == b.shape_ && a.component_ == b.component_ && a.coord_ == b.coord_;
    }

  private:
    FiberShape shape_;
    std::uint64_t component_;
    CycloElem coord_;
};

FiberPoint point_add(const FiberPoint& p, const FiberPoint& q);
FiberPoint point_neg(const FiberPoint& p);
FiberPoint point_multiple(std::int64_t n, const FiberPoint& p);

/// M(t, s) on an I_{mk} fiber: coordinate zeta_m^t on component s*k.
FiberPoint torsion_point(FiberShape shape, std::uint64_t m, std::int64_t t, std::int64_t s);

/// All m^2 points M(t, s), ordered by t then s. The shape must have mk
/// components for some k >= 1.
std::vector<FiberPoint> torsion_points(FiberShape shape, std::uint64_t m);

/// Re-expresses p in the standard coordinates u'_j = zeta^j u_j. zeta must be
/// an m-th root of unity, m the number of components.
FiberPoint twist_coordinates(const FiberPoint& p, const CycloElem& zeta);

/// A finite Z-linear combination of points of the smooth part. Zero
/// multiplicities are never stored. All coordinates are kept embedded in one
/// common cyclotomic order so that equal points collide as map keys.
class Divisor {
  public:
    explicit Divisor(FiberShape shape);

    FiberShape shape() const { return shape_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    std::uint64_t ambient_order() const { return order_; }

    void add(const FiberPoint& p, std::int64_t mult = 1);
    /// Multiplicity of p (0 when absent).
    std::int64_t multiplicity(const FiberPoint& p) const;

    /// Support with multiplicities, ordered by component then coordinate.
    std::vector<std::pair<FiberPoint, std::int64_t>> terms() const;

    Divisor& operator+=(const Divisor& rhs);
    Divisor& operator-=(const Divisor& rhs);
    Divisor operator-() const;
    friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
    friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
    Divisor scaled(std::int64_t n) const;

    friend bool operator==(const Divisor& a, const Divisor& b);

  private:
    struct KeyLess {
        bool operator()(const std::pair<std::uint64_t, CycloElem>& a,
                        const std::pair<std::uint64_t, CycloElem>& b) const
        {
            if (a.first != b.first) return a.first < b.first;
            return representation_order(a.second, b.second) < 0;
        }
    };
    using Map = std::map<std::pair<std::uint64_t, CycloElem>, std::int64_t, KeyLess>;

    void raise_order(std::uint64_t order);

    FiberShape shape_;
    std::uint64_t order_ = 1;
    Map terms_;
};

std::int64_t divisor_degree(const Divisor& d);

/// The summation map: the actual group sum of the points, with multiplicity.
FiberPoint divisor_sum(const Divisor& d);

} // namespace torsion
