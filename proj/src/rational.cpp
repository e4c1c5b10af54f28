#include "torsion/rational.hpp"

#include "torsion/errors.hpp"

#include <cctype>

namespace torsion {

std::string to_string(const BigRational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

BigInt parse_integer(std::string_view s)
{
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return BigInt(std::string(s), 10);
}

} // namespace

BigRational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den))
        throw invalid_argument("not a rational number: '" + std::string(text) + "'");
    BigInt d = parse_integer(den);
    if (d == 0) throw invalid_argument("zero denominator in '" + std::string(text) + "'");
    BigRational q(parse_integer(num), d);
    q.canonicalize();
    return q;
}

} // namespace torsion
