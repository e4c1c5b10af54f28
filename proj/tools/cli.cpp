#include "cli.hpp"

#include "torsion/errors.hpp"
#include "torsion/modular_surface.hpp"
#include "torsion/serialize.hpp"
#include "torsion/weil.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace torsion::cli {

namespace {

struct Result {
    Json json;
    std::string text;
    int code = exit_ok;
};

using Table = std::vector<std::vector<std::string>>;

std::string render(const Table& rows)
{
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (width.size() <= c) width.push_back(0);
            width[c] = std::max(width[c], row[c].size());
        }
    std::ostringstream os;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
        }
        line.erase(line.find_last_not_of(' ') + 1);
        os << line << "\n";
    }
    return os.str();
}

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

std::string fiber_name(CuspKind kind, std::uint64_t p) { return kind == CuspKind::I1 ? "I1" : "I" + std::to_string(p); }

std::string alpha_key(std::uint64_t a) { return "alpha=" + std::to_string(a); }

TorsionLabel parse_label(const std::string& text, std::uint64_t m)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw invalid_argument("expected t,s but got '" + text + "'");
    auto number = [&](std::string_view s) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw invalid_argument("expected t,s but got '" + text + "'");
        return v;
    };
    const std::string_view view(text);
    return TorsionLabel::reduced(number(view.substr(0, comma)), number(view.substr(comma + 1)), m);
}

std::string render_func(const RationalFunc& f)
{
    std::string s = to_string(f.alpha());
    if (f.ell() != 0) s += " * u^" + std::to_string(f.ell());
    for (const auto& z : f.zeros()) s += " * (u - " + to_string(z) + ")";
    for (const auto& p : f.poles()) s += " / (u - " + to_string(p) + ")";
    return s;
}

// ---------------------------------------------------------------------------

Result cmd_cusps(std::uint64_t p)
{
    const auto all = cusps(p);
    Result r;
    Json list = Json::array();
    Table rows{{"rep", "type", "weight", "k(T)", "l(T)"}};
    std::uint64_t total = 0;
    for (const auto& c : all) {
        total += c.weight;
        Json entry{{"rep", c.rep()}, {"type", to_string(c.kind)}, {"index", c.index}, {"weight", c.weight}};
        if (c.kind == CuspKind::I1) {
            entry["k"] = 0;
            Json ell = Json::object();
            for (std::uint64_t a = 1; a < p; ++a)
                ell[alpha_key(a)] = root_of_unity_number(p, static_cast<std::int64_t>(a), c.index).rep();
            entry["ell"] = ell;
            rows.push_back({c.rep(), fiber_name(c.kind, p), std::to_string(c.weight), "0",
                            std::to_string(root_of_unity_number(p, 1, c.index).rep())});
        } else {
            Json k = Json::object();
            for (std::uint64_t a = 1; a < p; ++a)
                k[alpha_key(a)] = component_number(p, static_cast<std::int64_t>(a), c)->rep();
            entry["k"] = k;
            rows.push_back({c.rep(), fiber_name(c.kind, p), std::to_string(c.weight),
                            std::to_string(component_number(p, 1, c)->rep()), "-"});
        }
        list.push_back(entry);
    }
    const auto e = equidistribution(p, 1);
    Json m = Json::object(), rr = Json::object();
    for (std::size_t i = 0; i < e.M.size(); ++i) m[std::to_string(i)] = to_string(e.M[i]);
    for (std::size_t i = 1; i < e.R.size(); ++i) rr[std::to_string(i)] = to_string(e.R[i]);
    r.json = {{"p", p}, {"total_weight", total}, {"cusps", list}, {"M", m}, {"R", rr}};
    r.text = "cusps of X_1(" + std::to_string(p) + "): " + std::to_string(all.size()) + ", total weight " +
             std::to_string(total) + "\n" + render(rows);
    return r;
}

Result cmd_equidist(std::uint64_t p, std::int64_t alpha)
{
    if (!is_prime(p)) throw invalid_argument(std::to_string(p) + " is not prime");
    if (((alpha % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) % static_cast<std::int64_t>(p) == 0)
        throw invalid_argument("alpha = " + std::to_string(alpha) + " is the zero section");
    Result r;
    bool all_pass = true;
    Table rows{{"fraction", "tables", "fibers", "closed form", ""}};
    Json mj = Json::object(), rj = Json::object();
    auto line = [&](const std::string& name, const BigRational& a, const BigRational* b, const BigRational& closed,
                    Json& into, const std::string& key) {
        const bool pass = a == closed && (!b || *b == closed);
        all_pass = all_pass && pass;
        rows.push_back({name, to_string(a), b ? to_string(*b) : "-", to_string(closed), verdict(pass)});
        Json entry{{"computed", to_string(a)}, {"closed_form", to_string(closed)}, {"pass", pass}};
        if (b) entry["fibers"] = to_string(*b);
        into[key] = entry;
    };
    if (p < 5) {
        const BigRational r1 = r_fraction(p, alpha, 1);
        line("R_1", r1, nullptr, r_closed_form(p), rj, "1");
    } else {
        const auto tables = equidistribution(p, alpha);
        const auto fibers = equidistribution_from_fibers(p, alpha);
        for (std::size_t i = 0; i < tables.M.size(); ++i)
            line("M_" + std::to_string(i), tables.M[i], &fibers.M[i], m_closed_form(p, i), mj, std::to_string(i));
        for (std::size_t i = 1; i < tables.R.size(); ++i)
            line("R_" + std::to_string(i), tables.R[i], &fibers.R[i], r_closed_form(p), rj, std::to_string(i));
    }
    r.json = {{"p", p}, {"alpha", alpha}, {"M", mj}, {"R", rj}, {"pass", all_pass}};
    r.text = "p = " + std::to_string(p) + ", alpha = " + std::to_string(alpha) + "\n" + render(rows) +
             verdict(all_pass) + "\n";
    r.code = all_pass ? exit_ok : exit_invariant;
    return r;
}

Result cmd_zmatrix(std::uint64_t p)
{
    const auto z = z_matrix(p);
    const std::size_t h = z.size();
    bool latin = true;
    Json rows_json = Json::array();
    Table rows;
    std::vector<std::string> header{"i\\j"};
    for (std::size_t j = 1; j <= h; ++j) header.push_back(std::to_string(j));
    rows.push_back(header);
    for (std::size_t i = 0; i < h; ++i) {
        std::set<std::uint64_t> row_set, col_set;
        Json row_json = Json::array();
        std::vector<std::string> row{std::to_string(i + 1)};
        for (std::size_t j = 0; j < h; ++j) {
            row_json.push_back(z[i][j].rep());
            row.push_back(std::to_string(z[i][j].rep()));
            row_set.insert(z[i][j].rep());
            col_set.insert(z[j][i].rep());
        }
        latin = latin && row_set.size() == h && col_set.size() == h;
        rows_json.push_back(row_json);
        rows.push_back(row);
    }
    Result r;
    r.json = {{"p", p}, {"Z", rows_json}, {"latin", latin}};
    r.text = "Z for p = " + std::to_string(p) + " (entry i,j is the class of i/j)\n" + render(rows) +
             "rows and columns are permutations: " + verdict(latin) + "\n";
    r.code = latin ? exit_ok : exit_invariant;
    return r;
}

Result cmd_involution(std::uint64_t p)
{
    Result r;
    Json list = Json::array();
    Table rows{{"cusp", "fiber", "image", "fiber"}};
    bool involutive = true;
    for (const auto& c : cusps(p)) {
        const CuspData a = involution(c);
        involutive = involutive && involution(a) == c && a.kind != c.kind;
        list.push_back({{"from", c.rep()}, {"from_type", to_string(c.kind)}, {"to", a.rep()}, {"to_type", to_string(a.kind)}});
        rows.push_back({c.rep(), fiber_name(c.kind, p), a.rep(), fiber_name(a.kind, p)});
    }
    r.json = {{"p", p}, {"map", list}, {"involutive", involutive}};
    r.text = render(rows) + "involution exchanging fiber types: " + verdict(involutive) + "\n";
    r.code = involutive ? exit_ok : exit_invariant;
    return r;
}

Result report_result(const CheckReport& report, Json head, const std::string& title)
{
    Result r;
    Json checks = Json::array();
    std::string text = title + "\n";
    for (const auto& l : report.lines) {
        checks.push_back({{"check", l.what}, {"pass", l.pass}});
        text += std::string(verdict(l.pass)) + "  " + l.what + "\n";
    }
    head["checks"] = checks;
    head["pass"] = report.ok();
    r.json = head;
    r.text = text + std::to_string(report.passed()) + "/" + std::to_string(report.lines.size()) + " checks pass: " +
             verdict(report.ok()) + "\n";
    r.code = report.ok() ? exit_ok : exit_invariant;
    return r;
}

Result cmd_duality(std::uint64_t p)
{
    return report_result(duality_check(p), {{"p", p}}, "duality l_x(T) = k_Ax(T)^-1, p = " + std::to_string(p));
}

Result cmd_quotient(std::uint64_t p, std::int64_t alpha)
{
    Result r;
    Json rows_json = Json::array();
    Table rows{{"cusp", "fiber", "weight", "k(T')"}};
    for (const auto& row : quotient_component_numbers(p, alpha)) {
        rows_json.push_back({{"rep", row.cusp.rep()},
                             {"type", to_string(row.quotient_kind)},
                             {"weight", row.quotient_weight},
                             {"k", row.k ? row.k->rep() : 0}});
        rows.push_back({row.cusp.rep(), fiber_name(row.quotient_kind, p), std::to_string(row.quotient_weight),
                        row.k ? std::to_string(row.k->rep()) : "0"});
    }
    r.json = {{"p", p}, {"alpha", alpha}, {"cusps", rows_json}};
    r.text = "quotient fibration, p = " + std::to_string(p) + ", alpha = " + std::to_string(alpha) + "\n" + render(rows);
    return r;
}

Result cmd_crosscheck(std::uint64_t p)
{
    return report_result(weil_cross_check(p), {{"p", p}}, "w_star against the quotient table, p = " + std::to_string(p));
}

Result cmd_weil(std::uint64_t m, std::uint64_t k, const std::string& p1, const std::string& p2)
{
    if (m == 0 || k == 0) throw invalid_argument("m and k must be positive");
    const TorsionLabel a = parse_label(p1, m), b = parse_label(p2, m);
    const CycloElem definitional = weil_definitional(a, b, m, FiberShape(m * k));
    const CycloElem formula = weil_formula(a, b, m);
    const bool pass = definitional == formula;
    const std::string d = pass ? render_root(definitional, m) : to_string(definitional);
    Result r;
    r.json = {{"m", m},
              {"k", k},
              {"p1", {{"t", a.t}, {"s", a.s}}},
              {"p2", {{"t", b.t}, {"s", b.s}}},
              {"definitional", d},
              {"formula", render_root(formula, m)},
              {"pass", pass}};
    r.text = "e_" + std::to_string(m) + "(M(" + std::to_string(a.t) + "," + std::to_string(a.s) + "), M(" +
             std::to_string(b.t) + "," + std::to_string(b.s) + ")) on I" + std::to_string(m * k) + "\n" +
             render({{"definitional", d}, {"formula", render_root(formula, m)}}) + verdict(pass) + "\n";
    r.code = pass ? exit_ok : exit_invariant;
    return r;
}

Result cmd_weil_suite(std::uint64_t m, std::uint64_t k)
{
    if (m == 0 || k == 0) throw invalid_argument("m and k must be positive");
    const auto rep = weil_bilinearity_suite(m, FiberShape(m * k));
    Result r;
    r.json = {{"m", m},
              {"k", k},
              {"pairs_checked", rep.pairs_checked},
              {"twists_checked", rep.twists_checked},
              {"exponents", rep.exponents},
              {"violations", rep.violations},
              {"pass", rep.ok()}};
    std::string text = "m = " + std::to_string(m) + ", k = " + std::to_string(k) + ": " +
                       std::to_string(rep.pairs_checked) + " pairs, " + std::to_string(rep.twists_checked) +
                       " coordinate twists\n";
    for (const auto& v : rep.violations) text += "  " + v + "\n";
    r.text = text + verdict(rep.ok()) + "\n";
    r.code = rep.ok() ? exit_ok : exit_invariant;
    return r;
}

Result cmd_abel(std::uint64_t m, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw invalid_argument("cannot read divisor file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw invalid_argument("divisor file '" + path + "' is not valid JSON: " + e.what());
    }
    const Divisor d = divisor_from_json(j);
    if (m != 0 && d.shape().m() != m)
        throw invalid_argument("--m " + std::to_string(m) + " disagrees with the divisor's m = " +
                               std::to_string(d.shape().m()));
    Result r;
    r.json = {{"m", d.shape().m()}, {"divisor", divisor_to_json(d)}};
    std::string text = "D on I" + std::to_string(d.shape().m()) + ", degree " + std::to_string(divisor_degree(d)) + "\n";
    try {
        const KElement g = abel_witness(d);
        if (!(div_map(g) == d)) throw invariant_violation("div_map(witness) differs from the input divisor");
        r.json["principal"] = true;
        r.json["witness"] = k_element_to_json(g);
        text += "principal; witness:\n";
        for (std::size_t i = 0; i < g.funcs().size(); ++i)
            text += "  g_" + std::to_string(i) + " = " + render_func(g[i]) + "\n";
    } catch (const not_principal& e) {
        r.json["principal"] = false;
        r.json["reason"] = e.what();
        text += std::string("not principal: ") + e.what() + "\n";
    }
    r.text = text;
    return r;
}

void apply_order_cap(const char* env)
{
    if (!env) return;
    std::uint64_t v = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v == 0)
        throw invalid_argument("TORSION_MAX_ORDER must be a positive integer, got '" + std::string(env) + "'");
    set_max_order(v);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact torsion-section computations on I_m fibers and the modular surface over X_1(p)", "torsion"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text", out_path;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", out_path, "Write output to FILE instead of stdout");

    std::uint64_t p = 0, m = 0, k = 1;
    std::int64_t alpha = 1;
    std::string p1, p2, divisor_path;
    std::function<Result()> action;

    auto with_p = [&](const char* name, const char* help, auto fn) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--p", p, "Prime p")->required();
        sub->callback([&, fn] { action = [&, fn] { return fn(); }; });
        return sub;
    };
    with_p("cusps", "Cusp table of X_1(p) with component and root-of-unity numbers", [&] { return cmd_cusps(p); });
    with_p("equidist", "M_i and R_i fractions against the closed forms", [&] { return cmd_equidist(p, alpha); })
        ->add_option("--alpha", alpha, "Section T_alpha = alpha T");
    with_p("zmatrix", "Matrix Z of root-of-unity numbers", [&] { return cmd_zmatrix(p); });
    with_p("involution", "Action of the canonical involution on the cusps", [&] { return cmd_involution(p); });
    with_p("duality", "Check l_x = k_Ax^-1 at every I1 cusp", [&] { return cmd_duality(p); });
    with_p("quotient", "Component numbers of T' on the quotient fibration", [&] { return cmd_quotient(p, alpha); })
        ->add_option("--alpha", alpha, "Section T_alpha = alpha T");
    with_p("crosscheck", "w_star against the quotient component numbers", [&] { return cmd_crosscheck(p); });

    auto* weil = app.add_subcommand("weil", "Limit Weil pairing of two m-torsion points on I_mk");
    weil->add_option("--m", m, "Torsion order m")->required();
    weil->add_option("--k", k, "Fiber I_mk multiplier");
    weil->add_option("--p1", p1, "First point as t,s")->required();
    weil->add_option("--p2", p2, "Second point as t,s")->required();
    weil->callback([&] { action = [&] { return cmd_weil(m, k, p1, p2); }; });

    auto* suite = app.add_subcommand("weil-suite", "Exhaustive pairing identities on m-torsion of I_mk");
    suite->add_option("--m", m, "Torsion order m")->required();
    suite->add_option("--k", k, "Fiber I_mk multiplier");
    suite->callback([&] { action = [&] { return cmd_weil_suite(m, k); }; });

    auto* abel = app.add_subcommand("abel", "Decide whether a divisor is principal and print a witness");
    abel->add_option("--m", m, "Number of fiber components (checked against the file)");
    abel->add_option("--divisor", divisor_path, "Divisor JSON file")->required();
    abel->callback([&] { action = [&] { return cmd_abel(m, divisor_path); }; });

    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back(); // program name
    try {
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    Result result;
    try {
        apply_order_cap(std::getenv("TORSION_MAX_ORDER"));
        result = action();
    } catch (const invariant_violation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return exit_invariant;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const order_limit_exceeded& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_invariant;
    }

    const std::string rendered = format == "json" ? result.json.dump(2) + "\n" : result.text;
    if (out_path.empty()) {
        out << rendered;
    } else {
        std::ofstream file(out_path);
        if (!file) {
            err << "error: cannot write '" << out_path << "'\n";
            return exit_usage;
        }
        file << rendered;
    }
    return result.code;
}

} // namespace torsion::cli
