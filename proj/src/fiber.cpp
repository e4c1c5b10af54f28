#include "torsion/fiber.hpp"

#include "torsion/errors.hpp"

#include <numeric>

namespace torsion {

namespace {

std::uint64_t reduce_mod(std::int64_t v, std::uint64_t m)
{
    const auto sm = static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(((v % sm) + sm) % sm);
}

void require_same_shape(const FiberShape& a, const FiberShape& b)
{
    if (a != b)
        throw invalid_argument("fiber shape mismatch: I_" + std::to_string(a.m()) + " vs I_" +
                               std::to_string(b.m()));
}

} // namespace

FiberShape::FiberShape(std::uint64_t m) : m_(m)
{
    if (m == 0) throw invalid_argument("an I_m fiber needs m >= 1");
}

FiberPoint::FiberPoint(FiberShape shape, std::int64_t component, CycloElem coord)
    : shape_(shape), component_(reduce_mod(component, shape.m())), coord_(std::move(coord))
{
    if (coord_.is_zero()) throw invalid_argument("fiber point coordinate must be nonzero (nodes are not on F^sm)");
}

FiberPoint FiberPoint::identity(FiberShape shape) { return FiberPoint(shape, 0, CycloElem(1)); }

FiberPoint point_add(const FiberPoint& p, const FiberPoint& q)
{
    require_same_shape(p.shape(), q.shape());
    return FiberPoint(p.shape(), static_cast<std::int64_t>(p.component() + q.component()), p.coord() * q.coord());
}

FiberPoint point_neg(const FiberPoint& p)
{
    return FiberPoint(p.shape(), -static_cast<std::int64_t>(p.component()), p.coord().inverse());
}

FiberPoint point_multiple(std::int64_t n, const FiberPoint& p)
{
    const std::uint64_t m = p.shape().m();
    const std::uint64_t comp = (reduce_mod(n, m) * p.component()) % m;
    return FiberPoint(p.shape(), static_cast<std::int64_t>(comp), p.coord().pow(n));
}

FiberPoint torsion_point(FiberShape shape, std::uint64_t m, std::int64_t t, std::int64_t s)
{
    if (m == 0 || shape.m() % m != 0)
        throw invalid_argument(std::to_string(m) + "-torsion needs a fiber I_{mk}; got I_" + std::to_string(shape.m()));
    const std::uint64_t k = shape.m() / m;
    return FiberPoint(shape, static_cast<std::int64_t>(reduce_mod(s, m) * k), root_of_unity(m, t));
}

std::vector<FiberPoint> torsion_points(FiberShape shape, std::uint64_t m)
{
    std::vector<FiberPoint> out;
    out.reserve(m * m);
    for (std::uint64_t t = 0; t < m; ++t)
        for (std::uint64_t s = 0; s < m; ++s)
            out.push_back(torsion_point(shape, m, static_cast<std::int64_t>(t), static_cast<std::int64_t>(s)));
    return out;
}

FiberPoint twist_coordinates(const FiberPoint& p, const CycloElem& zeta)
{
    const auto m = static_cast<std::int64_t>(p.shape().m());
    if (!zeta.pow(m).is_one()) throw invalid_argument("coordinate twist needs an m-th root of unity, m=" + std::to_string(m));
    const auto j = static_cast<std::int64_t>(p.component());
    return FiberPoint(p.shape(), j, zeta.pow(j) * p.coord());
}

// ---------------------------------------------------------------------------

Divisor::Divisor(FiberShape shape) : shape_(shape) {}

void Divisor::raise_order(std::uint64_t order)
{
    const std::uint64_t target = std::lcm(order_, order);
    if (target == order_) return;
    Map rebuilt;
    for (auto& [key, mult] : terms_) rebuilt.emplace(std::pair{key.first, key.second.embed(target)}, mult);
    terms_ = std::move(rebuilt);
    order_ = target;
}

void Divisor::add(const FiberPoint& p, std::int64_t mult)
{
    require_same_shape(shape_, p.shape());
    if (mult == 0) return;
    raise_order(p.coord().order());
    auto key = std::pair{p.component(), p.coord().embed(order_)};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), mult);
        return;
    }
    it->second += mult;
    if (it->second == 0) terms_.erase(it);
}

std::int64_t Divisor::multiplicity(const FiberPoint& p) const
{
    if (p.shape() != shape_) return 0;
    if (order_ % p.coord().order() != 0) {
        Divisor copy = *this;
        copy.raise_order(p.coord().order());
        return copy.multiplicity(p);
    }
    auto it = terms_.find(std::pair{p.component(), p.coord().embed(order_)});
    return it == terms_.end() ? 0 : it->second;
}

std::vector<std::pair<FiberPoint, std::int64_t>> Divisor::terms() const
{
    std::vector<std::pair<FiberPoint, std::int64_t>> out;
    out.reserve(terms_.size());
    for (const auto& [key, mult] : terms_)
        out.emplace_back(FiberPoint(shape_, static_cast<std::int64_t>(key.first), key.second), mult);
    return out;
}

Divisor& Divisor::operator+=(const Divisor& rhs)
{
    require_same_shape(shape_, rhs.shape_);
    for (const auto& [p, mult] : rhs.terms()) add(p, mult);
    return *this;
}

Divisor& Divisor::operator-=(const Divisor& rhs) { return *this += -rhs; }

Divisor Divisor::operator-() const { return scaled(-1); }

Divisor Divisor::scaled(std::int64_t n) const
{
    Divisor out(shape_);
    if (n == 0) return out;
    out.order_ = order_;
    out.terms_ = terms_;
    for (auto& [key, mult] : out.terms_) mult *= n;
    return out;
}

bool operator==(const Divisor& a, const Divisor& b)
{
    if (a.shape_ != b.shape_ || a.terms_.size() != b.terms_.size()) return false;
    if (a.order_ != b.order_) {
        Divisor x = a, y = b;
        x.raise_order(b.order_);
        y.raise_order(a.order_);
        return x.terms_ == y.terms_;
    }
    return a.terms_ == b.terms_;
}

std::int64_t divisor_degree(const Divisor& d)
{
    std::int64_t deg = 0;
    for (const auto& [p, mult] : d.terms()) deg += mult;
    return deg;
}

FiberPoint divisor_sum(const Divisor& d)
{
    FiberPoint acc = FiberPoint::identity(d.shape());
    for (const auto& [p, mult] : d.terms()) acc = point_add(acc, point_multiple(mult, p));
    return acc;
}

} // namespace torsion
