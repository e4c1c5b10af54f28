#include "torsion/errors.hpp"
#include "torsion/function_group.hpp"
#include "torsion/modular_surface.hpp"
#include "torsion/serialize.hpp"
#include "torsion/weil.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace torsion;

namespace {

py::object fraction(const BigRational& q)
{
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(to_string(q));
}

py::dict check_report(const CheckReport& r)
{
    py::list lines;
    for (const auto& l : r.lines) lines.append(py::make_tuple(l.what, l.pass));
    py::dict d;
    d["ok"] = r.ok();
    d["checks"] = lines;
    return d;
}

std::uint64_t class_or_zero(const std::optional<GpClass>& c) { return c ? c->rep() : 0; }

} // namespace

PYBIND11_MODULE(_torsion, m)
{
    m.doc() = "Exact arithmetic on I_m fibers, the limit Weil pairing and the cusps of X_1(p)";

    static py::exception<not_principal> not_principal_exc(m, "NotPrincipal", PyExc_ValueError);
    static py::exception<invariant_violation> invariant_exc(m, "InvariantViolation", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const not_principal& e) {
            py::set_error(not_principal_exc, e.what());
        } catch (const invariant_violation& e) {
            py::set_error(invariant_exc, e.what());
        } catch (const division_by_zero& e) {
            py::set_error(PyExc_ZeroDivisionError, e.what());
        }
    });

    m.def("max_order", &max_order);
    m.def("set_max_order", &set_max_order, py::arg("n"));
    m.def("cyclotomic_polynomial", [](std::uint64_t n) {
        std::vector<py::int_> out;
        for (const auto& c : cyclotomic_polynomial(n)) out.emplace_back(py::int_(py::str(c.get_str())));
        return out;
    });

    py::class_<CycloElem>(m, "CycloElem")
        .def(py::init<long>(), py::arg("value") = 0)
        .def(py::init([](const std::string& s) { return parse_cyclo(s); }), py::arg("text"))
        .def_property_readonly("order", &CycloElem::order)
        .def_property_readonly("coeffs",
                               [](const CycloElem& x) {
                                   py::list out;
                                   for (const auto& c : x.coeffs()) out.append(fraction(c));
                                   return out;
                               })
        .def("inverse", &CycloElem::inverse)
        .def("embed", &CycloElem::embed, py::arg("order"))
        .def("is_zero", &CycloElem::is_zero)
        .def("is_one", &CycloElem::is_one)
        .def("as_root_of_unity",
             [](const CycloElem& x) -> py::object {
                 auto r = as_root_of_unity(x);
                 if (!r) return py::none();
                 return py::make_tuple(r->order, r->exponent);
             })
        .def("__pow__", &CycloElem::pow)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("__hash__", [](const CycloElem&) -> py::object { throw py::type_error("CycloElem is unhashable"); })
        .def("to_json", [](const CycloElem& x) { return cyclo_to_json(x).dump(); })
        .def("__str__", [](const CycloElem& x) { return to_string(x); })
        .def("__repr__", [](const CycloElem& x) { return "CycloElem('" + to_string(x) + "')"; });
    py::implicitly_convertible<long, CycloElem>();
    m.def("root_of_unity", &root_of_unity, py::arg("n"), py::arg("k") = 1);

    py::class_<FiberShape>(m, "FiberShape")
        .def(py::init<std::uint64_t>(), py::arg("m"))
        .def_property_readonly("m", &FiberShape::m)
        .def(py::self == py::self);

    py::class_<FiberPoint>(m, "FiberPoint")
        .def(py::init<FiberShape, std::int64_t, CycloElem>(), py::arg("shape"), py::arg("component"), py::arg("coord"))
        .def_static("identity", &FiberPoint::identity)
        .def_property_readonly("component", &FiberPoint::component)
        .def_property_readonly("coord", &FiberPoint::coord)
        .def("is_identity", &FiberPoint::is_identity)
        .def("__add__", &point_add)
        .def("__neg__", &point_neg)
        .def("__rmul__", [](const FiberPoint& p, std::int64_t n) { return point_multiple(n, p); })
        .def(py::self == py::self)
        .def("__repr__", [](const FiberPoint& p) {
            return "FiberPoint(" + to_string(p.coord()) + ", C_" + std::to_string(p.component()) + ")";
        });
    m.def("torsion_point", &torsion_point, py::arg("shape"), py::arg("m"), py::arg("t"), py::arg("s"));
    m.def("twist_coordinates", &twist_coordinates, py::arg("point"), py::arg("zeta"));

    py::class_<Divisor>(m, "Divisor")
        .def(py::init<FiberShape>(), py::arg("shape"))
        .def("add", &Divisor::add, py::arg("point"), py::arg("mult") = 1)
        .def("multiplicity", &Divisor::multiplicity)
        .def("terms", &Divisor::terms)
        .def_property_readonly("degree", [](const Divisor& d) { return divisor_degree(d); })
        .def_property_readonly("sum", [](const Divisor& d) { return divisor_sum(d); })
        .def("to_json", [](const Divisor& d) { return divisor_to_json(d).dump(); })
        .def_static("from_json", [](const std::string& s) { return divisor_from_json(Json::parse(s)); })
        .def(py::self == py::self);

    py::class_<KElement>(m, "KElement")
        .def_property_readonly("m", [](const KElement& g) { return g.shape().m(); })
        .def("to_json", [](const KElement& g) { return k_element_to_json(g).dump(); })
        .def_static("from_json", [](const std::string& s) { return k_element_from_json(Json::parse(s)); })
        .def("constant", [](const KElement& g) { return is_constant(g); })
        .def(py::self == py::self);
    m.def("abel_check", &abel_check);
    m.def("abel_witness", &abel_witness);
    m.def("div_map", &div_map);

    m.def("weil_formula", [](std::pair<std::int64_t, std::int64_t> p, std::pair<std::int64_t, std::int64_t> q,
                             std::uint64_t mm) {
        return weil_formula(TorsionLabel::reduced(p.first, p.second, mm), TorsionLabel::reduced(q.first, q.second, mm), mm);
    });
    m.def(
        "weil_definitional",
        [](std::pair<std::int64_t, std::int64_t> p, std::pair<std::int64_t, std::int64_t> q, std::uint64_t mm,
           std::uint64_t k) {
            return weil_definitional(TorsionLabel::reduced(p.first, p.second, mm),
                                     TorsionLabel::reduced(q.first, q.second, mm), mm, FiberShape(mm * k));
        },
        py::arg("p"), py::arg("q"), py::arg("m"), py::arg("k") = 1);
    m.def(
        "weil_bilinearity_suite",
        [](std::uint64_t mm, std::uint64_t k) {
            const auto r = weil_bilinearity_suite(mm, FiberShape(mm * k));
            py::dict d;
            d["ok"] = r.ok();
            d["pairs_checked"] = r.pairs_checked;
            d["twists_checked"] = r.twists_checked;
            d["exponents"] = r.exponents;
            d["violations"] = r.violations;
            return d;
        },
        py::arg("m"), py::arg("k") = 1);
    m.def("w_star", &w_star, py::arg("a"), py::arg("m"));

    m.def("cusps", [](std::uint64_t p) {
        py::list out;
        for (const auto& c : cusps(p)) {
            py::dict d;
            d["rep"] = c.rep();
            d["type"] = to_string(c.kind);
            d["index"] = c.index;
            d["weight"] = c.weight;
            out.append(d);
        }
        return out;
    });
    m.def("root_of_unity_number",
          [](std::uint64_t p, std::int64_t alpha, std::uint64_t r) { return root_of_unity_number(p, alpha, r).rep(); });
    m.def("component_number", [](std::uint64_t p, std::int64_t alpha, std::uint64_t s) {
        return class_or_zero(component_number(p, alpha, {CuspKind::Ip, s, p, p}));
    });
    m.def("m_fraction", [](std::uint64_t p, std::int64_t alpha, std::uint64_t i) { return fraction(m_fraction(p, alpha, i)); });
    m.def("r_fraction", [](std::uint64_t p, std::int64_t alpha, std::uint64_t i) { return fraction(r_fraction(p, alpha, i)); });
    m.def("z_matrix", [](std::uint64_t p) {
        std::vector<std::vector<std::uint64_t>> out;
        for (const auto& row : z_matrix(p)) {
            out.emplace_back();
            for (const auto& c : row) out.back().push_back(c.rep());
        }
        return out;
    });
    m.def("duality_check", [](std::uint64_t p) { return check_report(duality_check(p)); });
    m.def("weil_cross_check", [](std::uint64_t p) { return check_report(weil_cross_check(p)); });
    m.def(
        "quotient_component_numbers",
        [](std::uint64_t p, std::int64_t alpha) {
            py::list out;
            for (const auto& row : quotient_component_numbers(p, alpha)) {
                py::dict d;
                d["rep"] = row.cusp.rep();
                d["type"] = to_string(row.quotient_kind);
                d["weight"] = row.quotient_weight;
                d["k"] = class_or_zero(row.k);
                out.append(d);
            }
            return out;
        },
        py::arg("p"), py::arg("alpha") = 1);
}
