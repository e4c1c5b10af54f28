#include "torsion/serialize.hpp"

#include "torsion/errors.hpp"

#include <charconv>

namespace torsion {

namespace {

template <class T>
T field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw invalid_argument(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw invalid_argument(std::string("bad field \"") + key + "\": " + e.what());
    }
}

std::uint64_t parse_unsigned(std::string_view s, std::string_view whole)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw invalid_argument("not a cyclotomic number: '" + std::string(whole) + "'");
    return v;
}

std::vector<CycloElem> cyclo_list(const Json& j, const char* key)
{
    std::vector<CycloElem> out;
    if (!j.contains(key)) return out;
    if (!j.at(key).is_array()) throw invalid_argument(std::string("\"") + key + "\" must be an array");
    for (const auto& x : j.at(key)) out.push_back(cyclo_from_json(x));
    return out;
}

Json cyclo_list_to_json(const std::vector<CycloElem>& xs)
{
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(cyclo_to_json(x));
    return out;
}

} // namespace

Json cyclo_to_json(const CycloElem& x)
{
    Json coeffs = Json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(to_string(c));
    return {{"order", x.order()}, {"coeffs", coeffs}};
}

CycloElem parse_cyclo(std::string_view text)
{
    constexpr std::string_view prefix = "zeta_";
    if (text.substr(0, prefix.size()) != prefix) return CycloElem(parse_rational(text));
    std::string_view rest = text.substr(prefix.size());
    const auto caret = rest.find('^');
    const std::uint64_t n = parse_unsigned(rest.substr(0, caret), text);
    std::int64_t k = 1;
    if (caret != std::string_view::npos) {
        std::string_view e = rest.substr(caret + 1);
        auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), k);
        if (ec != std::errc() || ptr != e.data() + e.size() || e.empty())
            throw invalid_argument("not a cyclotomic number: '" + std::string(text) + "'");
    }
    if (n == 0) throw invalid_argument("zeta_0 is not defined");
    return root_of_unity(n, k);
}

CycloElem cyclo_from_json(const Json& j)
{
    if (j.is_number_integer()) return CycloElem(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return parse_cyclo(j.get<std::string>());
    if (!j.is_object()) throw invalid_argument("cyclotomic number must be an object, integer or string");
    const auto order = field<std::uint64_t>(j, "order");
    if (order == 0) throw invalid_argument("order must be positive");
    if (!j.contains("coeffs") || !j.at("coeffs").is_array()) throw invalid_argument("missing array \"coeffs\"");
    std::vector<BigRational> coeffs;
    for (const auto& c : j.at("coeffs")) {
        if (c.is_number_integer())
            coeffs.emplace_back(static_cast<long>(c.get<std::int64_t>()));
        else if (c.is_string())
            coeffs.push_back(parse_rational(c.get<std::string>()));
        else
            throw invalid_argument("coefficients must be strings \"a/b\" or integers");
    }
    return CycloElem::from_coeffs(order, coeffs);
}

Json divisor_to_json(const Divisor& d)
{
    Json points = Json::array();
    for (const auto& [p, mult] : d.terms())
        points.push_back({{"component", p.component()}, {"coord", cyclo_to_json(p.coord())}, {"mult", mult}});
    return {{"m", d.shape().m()}, {"points", points}};
}

Divisor divisor_from_json(const Json& j)
{
    const auto m = field<std::uint64_t>(j, "m");
    if (m == 0) throw invalid_argument("m must be positive");
    FiberShape shape(m);
    Divisor d(shape);
    if (!j.contains("points") || !j.at("points").is_array()) throw invalid_argument("missing array \"points\"");
    for (const auto& p : j.at("points")) {
        const auto comp = field<std::int64_t>(p, "component");
        if (comp < 0 || static_cast<std::uint64_t>(comp) >= m)
            throw invalid_argument("component " + std::to_string(comp) + " outside [0, " + std::to_string(m) + ")");
        if (!p.contains("coord")) throw invalid_argument("missing field \"coord\"");
        d.add(FiberPoint(shape, comp, cyclo_from_json(p.at("coord"))), field<std::int64_t>(p, "mult"));
    }
    return d;
}

Json k_element_to_json(const KElement& g)
{
    Json funcs = Json::array();
    for (const auto& f : g.funcs())
        funcs.push_back({{"alpha", cyclo_to_json(f.alpha())},
                         {"ell", f.ell()},
                         {"zeros", cyclo_list_to_json(f.zeros())},
                         {"poles", cyclo_list_to_json(f.poles())}});
    return {{"m", g.shape().m()}, {"funcs", funcs}};
}

KElement k_element_from_json(const Json& j)
{
    const auto m = field<std::uint64_t>(j, "m");
    if (m == 0) throw invalid_argument("m must be positive");
    if (!j.contains("funcs") || !j.at("funcs").is_array()) throw invalid_argument("missing array \"funcs\"");
    std::vector<RationalFunc> funcs;
    for (const auto& f : j.at("funcs")) {
        if (!f.contains("alpha")) throw invalid_argument("missing field \"alpha\"");
        funcs.emplace_back(cyclo_from_json(f.at("alpha")), field<std::int64_t>(f, "ell"), cyclo_list(f, "zeros"),
                           cyclo_list(f, "poles"));
    }
    return k_validate(std::move(funcs), FiberShape(m));
}

} // namespace torsion
