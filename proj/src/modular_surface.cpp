#include "torsion/modular_surface.hpp"

#include "torsion/errors.hpp"
#include "torsion/weil.hpp"

#include <map>
#include <set>

namespace torsion {

namespace {

std::uint64_t reduce(std::int64_t a, std::uint64_t p)
{
    const auto sp = static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(((a % sp) + sp) % sp);
}

std::uint64_t half(std::uint64_t p) { return (p - 1) / 2; }

std::uint64_t class_count(std::uint64_t p) { return p == 2 ? 1 : half(p); }

void require_section(std::uint64_t p, std::int64_t alpha)
{
    if (reduce(alpha, p) == 0) throw invalid_argument("the zero section has no root of unity numbers");
}

void require_index(std::uint64_t p, std::uint64_t index)
{
    if (index < 1 || index > half(p))
        throw invalid_argument("cusp index " + std::to_string(index) + " outside [1, " + std::to_string(half(p)) + "]");
}

std::string cls(const GpClass& c) { return "{" + std::to_string(c.rep()) + "," + std::to_string(c.p() - c.rep()) + "}"; }

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

GpClass::GpClass(std::int64_t value, std::uint64_t p) : p_(p)
{
    if (p < 2) throw invalid_argument("G(p) needs p >= 2");
    const std::uint64_t r = reduce(value, p);
    if (r == 0) throw invalid_argument(std::to_string(value) + " is 0 mod " + std::to_string(p));
    rep_ = std::min(r, p - r);
}

bool GpClass::contains(std::int64_t value) const
{
    const std::uint64_t r = reduce(value, p_);
    return r == rep_ || r == p_ - rep_;
}

GpClass GpClass::inverse() const { return GpClass(static_cast<std::int64_t>(inverse_mod(static_cast<std::int64_t>(rep_), p_)), p_); }

GpClass operator*(const GpClass& a, const GpClass& b)
{
    if (a.p_ != b.p_) throw invalid_argument("G(p) classes for different p");
    return GpClass(static_cast<std::int64_t>(a.rep_ * b.rep_ % a.p_), a.p_);
}

std::uint64_t inverse_mod(std::int64_t a, std::uint64_t p)
{
    if (p == 1) throw invalid_argument("no inverses mod 1");
    return w_star(a, p);
}

std::string to_string(CuspKind kind) { return kind == CuspKind::I1 ? "I1" : "Ip"; }

std::string CuspData::rep() const
{
    return kind == CuspKind::I1 ? std::to_string(index) + "/" + std::to_string(p) : "1/" + std::to_string(index);
}

void require_surface_prime(std::uint64_t p)
{
    if (!is_prime(p) || p < 5)
        throw invalid_argument("p must be a prime >= 5, got " + std::to_string(p));
}

std::vector<CuspData> cusps(std::uint64_t p)
{
    require_surface_prime(p);
    std::vector<CuspData> out;
    for (std::uint64_t r = 1; r <= half(p); ++r) out.push_back({CuspKind::I1, r, 1, p});
    for (std::uint64_t s = 1; s <= half(p); ++s) out.push_back({CuspKind::Ip, s, p, p});
    return out;
}

GpClass root_of_unity_number(std::uint64_t p, std::int64_t alpha, std::uint64_t r)
{
    require_surface_prime(p);
    require_section(p, alpha);
    require_index(p, r);
    return GpClass(static_cast<std::int64_t>(reduce(alpha, p) * inverse_mod(static_cast<std::int64_t>(r), p) % p), p);
}

std::optional<GpClass> component_number(std::uint64_t p, std::int64_t alpha, const CuspData& cusp)
{
    require_surface_prime(p);
    require_index(p, cusp.index);
    if (cusp.kind == CuspKind::I1 || reduce(alpha, p) == 0) return std::nullopt;
    return GpClass(static_cast<std::int64_t>(reduce(alpha, p) * cusp.index % p), p);
}

FiberPoint section_point(std::uint64_t p, std::int64_t alpha, const CuspData& cusp)
{
    require_surface_prime(p);
    require_index(p, cusp.index);
    const auto sa = static_cast<std::int64_t>(reduce(alpha, p));
    const auto idx = static_cast<std::int64_t>(cusp.index);
    if (cusp.kind == CuspKind::I1) {
        FiberPoint t(FiberShape(1), 0, root_of_unity(p, static_cast<std::int64_t>(inverse_mod(idx, p))));
        return point_multiple(sa, t);
    }
    return point_multiple(sa, FiberPoint(FiberShape(p), idx, CycloElem(1)));
}

Equidistribution equidistribution(std::uint64_t p, std::int64_t alpha)
{
    require_surface_prime(p);
    require_section(p, alpha);
    const auto all = cusps(p);
    std::vector<std::uint64_t> m_weight(half(p) + 1, 0), r_weight(half(p) + 1, 0);
    std::uint64_t total = 0, k_zero = 0;
    for (const auto& c : all) {
        total += c.weight;
        const auto k = component_number(p, alpha, c);
        m_weight[k ? k->rep() : 0] += c.weight;
        if (!k) {
            k_zero += c.weight;
            r_weight[root_of_unity_number(p, alpha, c.index).rep()] += c.weight;
        }
    }
    Equidistribution e;
    for (auto w : m_weight) e.M.emplace_back(BigInt(w), BigInt(total));
    for (std::uint64_t i = 0; i <= half(p); ++i) e.R.emplace_back(i == 0 ? BigInt(0) : BigInt(r_weight[i]), BigInt(k_zero));
    for (auto& q : e.M) q.canonicalize();
    for (auto& q : e.R) q.canonicalize();
    return e;
}

Equidistribution equidistribution_from_fibers(std::uint64_t p, std::int64_t alpha)
{
    require_surface_prime(p);
    require_section(p, alpha);
    std::vector<std::uint64_t> m_weight(half(p) + 1, 0), r_weight(half(p) + 1, 0);
    std::uint64_t total = 0, k_zero = 0;
    for (const auto& c : cusps(p)) {
        const FiberPoint pt = section_point(p, alpha, c);
        const std::uint64_t m = pt.shape().m();
        if (!point_multiple(static_cast<std::int64_t>(p), pt).is_identity())
            throw invariant_violation("section point over " + c.rep() + " is not p-torsion");
        total += m;
        // k_j = i n_j with n_j = m / p on I_{p n} fibers; I_1 fibers force k = 0.
        const std::uint64_t n = m % p == 0 ? m / p : 0;
        const std::uint64_t i = n == 0 ? 0 : pt.component() / n;
        m_weight[i == 0 ? 0 : GpClass(static_cast<std::int64_t>(i), p).rep()] += m;
        if (pt.component() == 0) {
            k_zero += m;
            const auto ell = discrete_log(pt.coord(), p);
            if (!ell || *ell == 0) throw invariant_violation("section meets the zero section over " + c.rep());
            r_weight[GpClass(static_cast<std::int64_t>(*ell), p).rep()] += m;
        }
    }
    Equidistribution e;
    for (auto w : m_weight) e.M.emplace_back(BigInt(w), BigInt(total));
    for (std::uint64_t i = 0; i <= half(p); ++i) e.R.emplace_back(i == 0 ? BigInt(0) : BigInt(r_weight[i]), BigInt(k_zero));
    for (auto& q : e.M) q.canonicalize();
    for (auto& q : e.R) q.canonicalize();
    return e;
}

BigRational m_fraction(std::uint64_t p, std::int64_t alpha, std::uint64_t i)
{
    const auto e = equidistribution(p, alpha);
    if (i > half(p)) throw invalid_argument("class index " + std::to_string(i) + " outside [0, " + std::to_string(half(p)) + "]");
    return e.M[i];
}

BigRational r_fraction(std::uint64_t p, std::int64_t alpha, std::uint64_t i)
{
    if (!is_prime(p)) throw invalid_argument(std::to_string(p) + " is not prime");
    require_section(p, alpha);
    if (i < 1 || i > class_count(p))
        throw invalid_argument("class index " + std::to_string(i) + " outside [1, " + std::to_string(class_count(p)) + "]");
    if (p < 5) {
        // Every admissible l in [1, p-1] lies in the single class of G(p).
        std::uint64_t hits = 0;
        for (std::uint64_t ell = 1; ell < p; ++ell) hits += GpClass(static_cast<std::int64_t>(ell), p).rep() == i;
        BigRational r(BigInt(hits), BigInt(p - 1));
        r.canonicalize();
        return r;
    }
    return equidistribution(p, alpha).R[i];
}

BigRational m_closed_form(std::uint64_t p, std::uint64_t i)
{
    BigRational q = i == 0 ? BigRational(BigInt(1), BigInt(p + 1)) : BigRational(BigInt(2 * p), BigInt(p * p - 1));
    q.canonicalize();
    return q;
}

BigRational r_closed_form(std::uint64_t p)
{
    if (p == 2) return BigRational(1);
    BigRational q(BigInt(2), BigInt(p - 1));
    q.canonicalize();
    return q;
}

std::vector<std::vector<GpClass>> z_matrix(std::uint64_t p)
{
    require_surface_prime(p);
    std::vector<std::vector<GpClass>> z;
    for (std::uint64_t i = 1; i <= half(p); ++i) {
        std::vector<GpClass> row;
        for (std::uint64_t j = 1; j <= half(p); ++j)
            row.emplace_back(static_cast<std::int64_t>(i * inverse_mod(static_cast<std::int64_t>(j), p) % p), p);
        z.push_back(std::move(row));
    }
    return z;
}

CuspData involution(const CuspData& cusp)
{
    if (cusp.kind == CuspKind::I1) return {CuspKind::Ip, cusp.index, cusp.p, cusp.p};
    return {CuspKind::I1, cusp.index, 1, cusp.p};
}

bool CheckReport::ok() const
{
    for (const auto& l : lines)
        if (!l.pass) return false;
    return true;
}

std::size_t CheckReport::passed() const
{
    std::size_t n = 0;
    for (const auto& l : lines) n += l.pass;
    return n;
}

CheckReport duality_check(std::uint64_t p)
{
    CheckReport report;
    for (const auto& x : cusps(p)) {
        if (x.kind != CuspKind::I1) continue;
        const CuspData ax = involution(x);
        const GpClass ell = root_of_unity_number(p, 1, x.index);
        const auto k = component_number(p, 1, ax);
        const bool pass = k && ell == k->inverse();
        report.lines.push_back({"l_" + x.rep() + "(T) = " + cls(ell) + ", k_" + ax.rep() + "(T) = " +
                                    (k ? cls(*k) : std::string("0")) + ", inverse relation",
                                pass});
    }
    return report;
}

std::vector<QuotientRow> quotient_component_numbers(std::uint64_t p, std::int64_t alpha)
{
    require_surface_prime(p);
    std::vector<QuotientRow> rows;
    for (const auto& c : cusps(p)) {
        const CuspKind swapped = c.kind == CuspKind::I1 ? CuspKind::Ip : CuspKind::I1;
        QuotientRow row{c, swapped, swapped == CuspKind::Ip ? p : 1, std::nullopt};
        if (c.kind == CuspKind::I1 && reduce(alpha, p) != 0) row.k = root_of_unity_number(p, alpha, c.index).inverse();
        rows.push_back(row);
    }
    return rows;
}

CheckReport weil_cross_check(std::uint64_t p)
{
    require_surface_prime(p);
    CheckReport report;
    FiberShape shape(p);
    const auto torsion = torsion_points(shape, p);
    const CycloElem zeta = root_of_unity(p, 1);

    // Components of the Z with e_p(aT, Z) = zeta, memoized by a.
    std::map<std::uint64_t, std::set<std::uint64_t>> dual_components;
    auto components_for = [&](std::uint64_t a) -> const std::set<std::uint64_t>& {
        auto it = dual_components.find(a);
        if (it != dual_components.end()) return it->second;
        std::set<std::uint64_t> comps;
        for (std::size_t i = 0; i < torsion.size(); ++i)
            if (weil_formula({a, 0}, {i / p, i % p}, p) == zeta) comps.insert(torsion[i].component());
        return dual_components.emplace(a, std::move(comps)).first->second;
    };

    for (std::uint64_t alpha = 1; alpha < p; ++alpha) {
        const auto sa = static_cast<std::int64_t>(alpha);
        const auto table = quotient_component_numbers(p, sa);
        for (const auto& row : table) {
            if (row.cusp.kind != CuspKind::I1) continue;
            const std::uint64_t a = alpha * inverse_mod(static_cast<std::int64_t>(row.cusp.index), p) % p;
            const std::uint64_t b = w_star(static_cast<std::int64_t>(a), p);
            const auto& comps = components_for(a);
            const bool in_class = row.k && row.k->contains(static_cast<std::int64_t>(b));
            const bool dual = comps == std::set<std::uint64_t>{b};
            report.lines.push_back({"alpha=" + std::to_string(alpha) + " at " + row.cusp.rep() + ": a=" +
                                        std::to_string(a) + ", w_star=" + std::to_string(b) + ", quotient class " +
                                        (row.k ? cls(*row.k) : std::string("0")),
                                    in_class && dual});
        }
    }
    return report;
}

} // namespace torsion
