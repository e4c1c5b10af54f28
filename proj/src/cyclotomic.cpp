#include "torsion/cyclotomic.hpp"

#include "torsion/errors.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>

namespace torsion {

namespace {

std::atomic<std::uint64_t> g_max_order{10000};

struct CycloData {
    IntPoly phi;
    std::size_t degree = 0;
    // Nonzero coefficients of phi below the leading term; Phi_N is often sparse.
    std::vector<std::pair<std::size_t, BigInt>> low_terms;
};

std::shared_mutex g_memo_mutex;
std::map<std::uint64_t, std::unique_ptr<const CycloData>> g_memo;

void check_order(std::uint64_t n)
{
    if (n == 0) throw invalid_argument("cyclotomic order must be positive");
    if (n > g_max_order.load(std::memory_order_relaxed))
        throw order_limit_exceeded("cyclotomic order " + std::to_string(n) + " exceeds the limit " +
                                   std::to_string(g_max_order.load()));
}

// a := a / b for monic b, exact.
IntPoly exact_divide_monic(const IntPoly& a, const IntPoly& b)
{
    std::size_t db = b.size() - 1;
    if (a.size() < b.size()) throw invariant_violation("exact_divide_monic: degree too small");
    IntPoly rem = a;
    IntPoly q(a.size() - db);
    for (std::size_t i = a.size(); i-- > db;) {
        const BigInt c = rem[i];
        if (c == 0) continue;
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j)
            rem[i - db + j] -= c * b[j];
    }
    for (const auto& r : rem)
        if (r != 0) throw invariant_violation("exact_divide_monic: nonzero remainder");
    return q;
}

const CycloData& cyclo_data(std::uint64_t n)
{
    check_order(n);
    {
        std::shared_lock lock(g_memo_mutex);
        auto it = g_memo.find(n);
        if (it != g_memo.end()) return *it->second;
    }

    IntPoly poly(n + 1);
    poly[0] = -1;
    poly[n] = 1;
    for (std::uint64_t d = 1; d < n; ++d)
        if (n % d == 0) poly = exact_divide_monic(poly, cyclo_data(d).phi);

    auto data = std::make_unique<CycloData>();
    data->degree = poly.size() - 1;
    for (std::size_t i = 0; i < data->degree; ++i)
        if (poly[i] != 0) data->low_terms.emplace_back(i, poly[i]);
    data->phi = std::move(poly);

    std::unique_lock lock(g_memo_mutex);
    auto [it, inserted] = g_memo.emplace(n, std::move(data));
    return *it->second;
}

// Reduces a mod Phi_N in place and resizes to phi(N).
void reduce(std::vector<BigInt>& a, const CycloData& cd)
{
    const std::size_t deg = cd.degree;
    for (std::size_t i = a.size(); i-- > deg;) {
        if (a[i] == 0) continue;
        const BigInt c = a[i];
        for (const auto& [j, coeff] : cd.low_terms)
            mpz_submul(a[i - deg + j].get_mpz_t(), c.get_mpz_t(), coeff.get_mpz_t());
        a[i] = 0;
    }
    a.resize(deg);
}

// Rational polynomial helpers for the extended Euclidean algorithm.
using QPoly = std::vector<BigRational>;

void trim(QPoly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Returns quotient, leaves remainder in a.
QPoly divmod(QPoly& a, const QPoly& b)
{
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size()) return {};
    QPoly q(a.size() - db);
    const BigRational lead = b.back();
    for (std::size_t i = a.size(); i-- > db;) {
        if (a[i] == 0) continue;
        BigRational c = a[i] / lead;
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j)
            a[i - db + j] -= c * b[j];
    }
    trim(a);
    return q;
}

QPoly mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

QPoly sub(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

std::uint64_t lcm_order(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t l = std::lcm(a, b);
    check_order(l);
    return l;
}

} // namespace

std::uint64_t max_order() { return g_max_order.load(); }

void set_max_order(std::uint64_t n)
{
    if (n == 0) throw invalid_argument("max order must be positive");
    g_max_order.store(n);
}

std::uint64_t euler_phi(std::uint64_t n)
{
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

const IntPoly& cyclotomic_polynomial(std::uint64_t n) { return cyclo_data(n).phi; }

// ---------------------------------------------------------------------------

CycloElem::CycloElem() : order_(1), num_(1), den_(1) {}

CycloElem::CycloElem(long value) : order_(1), num_{BigInt(value)}, den_(1) {}

CycloElem::CycloElem(const BigRational& value, std::uint64_t order)
    : order_(order), num_(cyclo_data(order).degree), den_(value.get_den())
{
    num_[0] = value.get_num();
}

CycloElem::CycloElem(std::uint64_t order, std::vector<BigInt> num, BigInt den)
    : order_(order), num_(std::move(num)), den_(std::move(den))
{
    reduce(num_, cyclo_data(order_));
    normalize();
}

CycloElem CycloElem::from_coeffs(std::uint64_t order, const std::vector<BigRational>& coeffs)
{
    BigInt den = 1;
    for (const auto& c : coeffs) den = lcm(den, BigInt(c.get_den()));
    std::vector<BigInt> num(std::max<std::size_t>(coeffs.size(), cyclo_data(order).degree));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        num[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
    return CycloElem(order, std::move(num), std::move(den));
}

void CycloElem::normalize()
{
    BigInt g = den_;
    for (const auto& c : num_) {
        if (g == 1) break;
        if (c != 0) g = gcd(g, c);
    }
    if (is_zero()) {
        den_ = 1;
        return;
    }
    if (g != 1) {
        for (auto& c : num_)
            if (c != 0) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

std::vector<BigRational> CycloElem::coeffs() const
{
    std::vector<BigRational> out;
    out.reserve(num_.size());
    for (const auto& c : num_) {
        BigRational q(c, den_);
        q.canonicalize();
        out.push_back(std::move(q));
    }
    return out;
}

bool CycloElem::is_zero() const
{
    return std::all_of(num_.begin(), num_.end(), [](const BigInt& c) { return c == 0; });
}

bool CycloElem::is_one() const
{
    return as_rational() == BigRational(1);
}

std::optional<BigRational> CycloElem::as_rational() const
{
    for (std::size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0) return std::nullopt;
    BigRational q(num_[0], den_);
    q.canonicalize();
    return q;
}

CycloElem CycloElem::embed(std::uint64_t m) const
{
    if (m == 0 || m % order_ != 0)
        throw invalid_argument("cannot embed Q(zeta_" + std::to_string(order_) + ") into Q(zeta_" +
                               std::to_string(m) + ")");
    if (m == order_) return *this;
    const auto& cd = cyclo_data(m);
    const std::uint64_t step = m / order_;
    std::vector<BigInt> num(std::max<std::size_t>(cd.degree, (num_.size() - 1) * step + 1));
    for (std::size_t i = 0; i < num_.size(); ++i) num[i * step] = num_[i];
    return CycloElem(m, std::move(num), den_);
}

CycloElem CycloElem::operator-() const
{
    CycloElem r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
}

CycloElem& CycloElem::operator+=(const CycloElem& rhs)
{
    if (rhs.order_ != order_) {
        const std::uint64_t l = lcm_order(order_, rhs.order_);
        *this = embed(l);
        return *this += rhs.embed(l);
    }
    if (den_ == rhs.den_) {
        for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += rhs.num_[i];
    } else {
        for (std::size_t i = 0; i < num_.size(); ++i) {
            num_[i] *= rhs.den_;
            mpz_addmul(num_[i].get_mpz_t(), rhs.num_[i].get_mpz_t(), den_.get_mpz_t());
        }
        den_ *= rhs.den_;
    }
    normalize();
    return *this;
}

CycloElem& CycloElem::operator-=(const CycloElem& rhs) { return *this += -rhs; }

CycloElem& CycloElem::operator*=(const CycloElem& rhs)
{
    if (rhs.order_ != order_) {
        const std::uint64_t l = lcm_order(order_, rhs.order_);
        *this = embed(l);
        return *this *= rhs.embed(l);
    }
    const auto& cd = cyclo_data(order_);
    std::vector<BigInt> prod(num_.size() + rhs.num_.size() - 1);
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.num_.size(); ++j) {
            if (rhs.num_[j] == 0) continue;
            mpz_addmul(prod[i + j].get_mpz_t(), num_[i].get_mpz_t(), rhs.num_[j].get_mpz_t());
        }
    }
    reduce(prod, cd);
    num_ = std::move(prod);
    den_ *= rhs.den_;
    normalize();
    return *this;
}

CycloElem& CycloElem::operator/=(const CycloElem& rhs) { return *this *= rhs.inverse(); }

// If x lies in Q(zeta_{N/p}) for a prime p with p^2 | N, returns it there.
// Uses Phi_N(x) = Phi_{N/p}(x^p): the subfield is spanned by the basis
// powers divisible by p.
std::optional<CycloElem> CycloElem::shrink() const
{
    std::uint64_t n = order_;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) != 0) continue;
        bool inside = true;
        for (std::size_t i = 0; i < num_.size() && inside; ++i)
            if (i % p != 0 && num_[i] != 0) inside = false;
        if (!inside) continue;
        std::vector<BigInt> num(num_.size() / p);
        for (std::size_t i = 0; i < num.size(); ++i) num[i] = num_[i * p];
        CycloElem smaller(order_ / p, std::move(num), den_);
        if (auto even_smaller = smaller.shrink()) return even_smaller;
        return smaller;
    }
    return std::nullopt;
}

CycloElem CycloElem::inverse() const
{
    if (is_zero()) throw division_by_zero();
    if (auto sub = shrink()) return sub->inverse().embed(order_);
    const auto& cd = cyclo_data(order_);

    std::size_t nonzero = 0, at = 0;
    for (std::size_t i = 0; i < num_.size(); ++i)
        if (num_[i] != 0) ++nonzero, at = i;
    if (nonzero == 1) {
        // (c z^e / d)^{-1} = (d / c) z^{N - e}
        std::vector<BigInt> num(std::max<std::size_t>(cd.degree, order_ - at + 1));
        BigInt c = num_[at];
        BigInt den = abs(c);
        num[at == 0 ? 0 : order_ - at] = c < 0 ? BigInt(-den_) : den_;
        return CycloElem(order_, std::move(num), std::move(den));
    }

    // s * a + t * Phi = const, by the extended Euclidean algorithm over Q[x].
    QPoly r0(cd.phi.begin(), cd.phi.end());
    QPoly r1(num_.begin(), num_.end());
    trim(r1);
    QPoly s0, s1{BigRational(1)};
    while (r1.size() > 1) {
        QPoly q = divmod(r0, r1);
        std::swap(r0, r1); // r0 := old r1, r1 := remainder
        QPoly s_next = sub(s0, mul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(s_next);
        if (r1.empty()) throw invariant_violation("element shares a factor with Phi_N");
        // Keep the remainder monic to limit coefficient growth.
        const BigRational lead = r1.back();
        for (auto& c : r1) c /= lead;
        for (auto& c : s1) c /= lead;
    }
    // r1 is the nonzero constant r1[0]; inverse of (num / den) is den * s1 / r1[0].
    const BigRational scale = BigRational(den_) / r1[0];
    for (auto& c : s1) c *= scale;
    return from_coeffs(order_, s1);
}

CycloElem CycloElem::pow(std::int64_t e) const
{
    CycloElem base = e < 0 ? inverse() : *this;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
    CycloElem result(BigRational(1), order_);
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

bool operator==(const CycloElem& a, const CycloElem& b)
{
    if (a.order_ != b.order_) {
        const std::uint64_t l = std::lcm(a.order_, b.order_);
        return a.embed(l) == b.embed(l);
    }
    return a.den_ == b.den_ && a.num_ == b.num_;
}

std::strong_ordering representation_order(const CycloElem& a, const CycloElem& b)
{
    if (auto c = a.order_ <=> b.order_; c != 0) return c;
    for (std::size_t i = 0; i < a.num_.size(); ++i) {
        int c = cmp(a.num_[i], b.num_[i]);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    int c = cmp(a.den_, b.den_);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

CycloElem root_of_unity(std::uint64_t n, std::int64_t k)
{
    const auto& cd = cyclo_data(n);
    const auto sn = static_cast<std::int64_t>(n);
    const auto e = static_cast<std::uint64_t>(((k % sn) + sn) % sn);
    std::vector<BigInt> num(std::max<std::size_t>(cd.degree, e + 1));
    num[e] = 1;
    return CycloElem::from_coeffs(n, std::vector<BigRational>(num.begin(), num.end()));
}

std::optional<RootOfUnity> as_root_of_unity(const CycloElem& x)
{
    if (x.is_zero()) return std::nullopt;
    auto coeffs = x.coeffs();
    for (const auto& c : coeffs)
        if (c.get_den() != 1) return std::nullopt; // roots of unity are algebraic integers
    const std::uint64_t n = x.order();
    // The roots of unity in Q(zeta_N) are +-zeta_N^e.
    const CycloElem zeta = root_of_unity(n, 1);
    CycloElem candidate(BigRational(1), n);
    const CycloElem neg = -x;
    for (std::uint64_t e = 0; e < n; ++e) {
        std::uint64_t order = 0, exponent = 0;
        if (candidate == x) {
            order = n, exponent = e;
        } else if (candidate == neg) {
            order = 2 * n, exponent = 2 * e + n;
        }
        if (order != 0) {
            exponent %= order;
            const std::uint64_t g = std::gcd(order, exponent);
            return RootOfUnity{order / g, exponent / g};
        }
        candidate *= zeta;
    }
    return std::nullopt;
}

std::optional<std::uint64_t> discrete_log(const CycloElem& x, std::uint64_t m)
{
    auto r = as_root_of_unity(x);
    if (!r || m % r->order != 0) return std::nullopt;
    return r->exponent * (m / r->order);
}

std::string to_string(const CycloElem& x)
{
    if (auto q = x.as_rational()) return to_string(*q);
    if (auto r = as_root_of_unity(x))
        return "zeta_" + std::to_string(r->order) + "^" + std::to_string(r->exponent);
    std::ostringstream os;
    bool first = true;
    auto coeffs = x.coeffs();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const auto& c = coeffs[i];
        if (c == 0) continue;
        BigRational mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << to_string(mag);
            continue;
        }
        if (mag != 1) os << to_string(mag) << "*";
        os << "z";
        if (i > 1) os << "^" << i;
    }
    os << " (z=zeta_" << x.order() << ")";
    return os.str();
}

std::string render_root(const CycloElem& x, std::uint64_t m)
{
    auto e = discrete_log(x, m);
    if (!e) throw invariant_violation(to_string(x) + " is not an m-th root of unity, m=" + std::to_string(m));
    return "zeta_" + std::to_string(m) + "^" + std::to_string(*e);
}

} // namespace torsion
