#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cdl/analytics.hpp"
#include "cdl/decompose.hpp"
#include "cdl/verify.hpp"

namespace py = pybind11;
using namespace cdl;

namespace {

py::object fraction(const Rational& r) {
    py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(py::int_(py::str(r.numerator().str())), py::int_(py::str(r.denominator().str())));
}

// Gammas are given as "+1"/"-1" strings or exponents.
std::vector<Scalar> gammas_from(const ScalarGroup& z, const py::iterable& g) {
    std::vector<Scalar> out;
    for (const auto& item : g) {
        if (py::isinstance<py::str>(item))
            out.push_back(z.parse(item.cast<std::string>()));
        else
            out.push_back(z.make(item.cast<std::int64_t>()));
    }
    return out;
}

using PyLoopElement = std::pair<std::uint32_t, std::uint32_t>;
using PyProductElement = std::pair<std::uint32_t, std::vector<std::uint32_t>>;

LoopElement from_py(const CDLoop& l, const PyLoopElement& x) { return l.element(l.z().make(x.first), x.second); }
PyLoopElement to_py(const LoopElement& x) { return {x.scalar.exponent, x.mask}; }

ProductElement from_py(const CentralProduct& a, const PyProductElement& x) {
    ProductElement e{a.z().make(x.first), x.second};
    if (!a.contains(e)) throw ValidationError("element is not in this product");
    return e;
}
PyProductElement to_py(const ProductElement& x) { return {x.scalar.exponent, x.masks}; }

Method method_from(const std::string& s) {
    if (s == "brute") return Method::Brute;
    if (s == "closed") return Method::Closed;
    throw ValidationError("method must be 'brute' or 'closed'");
}

py::dict report_dict(const DegreeReport& r) {
    py::dict d;
    d["degree"] = fraction(r.degree);
    d["favorable"] = r.favorable;
    d["total"] = r.total;
    d["method"] = to_string(r.method);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cayley-Dickson loops, their central products and loop tables";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<DecompositionError>(m, "DecompositionError", PyExc_RuntimeError);

    py::class_<CDLoop>(m, "Loop")
        .def(py::init([](const py::iterable& gammas, std::int64_t z_order) {
                 const ScalarGroup z(z_order);
                 return CDLoop(z, gammas_from(z, gammas));
             }),
             py::arg("gammas"), py::arg("z_order") = 2)
        .def_property_readonly("n", &CDLoop::n)
        .def_property_readonly("order", &CDLoop::order)
        .def_property_readonly("z_order", [](const CDLoop& l) { return l.z().order(); })
        .def_property_readonly("gammas",
                               [](const CDLoop& l) {
                                   std::vector<std::uint32_t> out;
                                   for (const auto& g : l.gammas()) out.push_back(g.exponent);
                                   return out;
                               })
        .def("twist", [](const CDLoop& l, std::uint32_t e, std::uint32_t f) { return l.twist(e, f).exponent; })
        .def("identity", [](const CDLoop& l) { return to_py(l.identity()); })
        .def("generator", [](const CDLoop& l, unsigned i) { return to_py(l.generator(i)); })
        .def("mul", [](const CDLoop& l, const PyLoopElement& x, const PyLoopElement& y) {
            return to_py(l.mul(from_py(l, x), from_py(l, y)));
        })
        .def("conj", [](const CDLoop& l, const PyLoopElement& x) { return to_py(l.conj(from_py(l, x))); })
        .def("inv", [](const CDLoop& l, const PyLoopElement& x) { return to_py(l.inv(from_py(l, x))); })
        .def("commutator", [](const CDLoop& l, const PyLoopElement& x, const PyLoopElement& y) {
            return to_py(l.commutator(from_py(l, x), from_py(l, y)));
        })
        .def("associator",
             [](const CDLoop& l, const PyLoopElement& x, const PyLoopElement& y, const PyLoopElement& w) {
                 return to_py(l.associator(from_py(l, x), from_py(l, y), from_py(l, w)));
             })
        .def("elements",
             [](const CDLoop& l) {
                 std::vector<PyLoopElement> out;
                 for (const auto& x : l.enumerate()) out.push_back(to_py(x));
                 return out;
             })
        .def("table", [](const CDLoop& l) { return to_table(l); })
        .def("__eq__", [](const CDLoop& a, const CDLoop& b) { return a == b; })
        .def("__repr__", [](const CDLoop& l) {
            std::ostringstream os;
            os << "Loop(n=" << l.n() << ", z_order=" << l.z().order() << ")";
            return os.str();
        });

    py::class_<CentralProduct>(m, "Product")
        .def(py::init<std::vector<CDLoop>>(), py::arg("factors"))
        .def_property_readonly("m", &CentralProduct::m)
        .def_property_readonly("n", &CentralProduct::n)
        .def_property_readonly("order", &CentralProduct::order)
        .def_property_readonly("z_order", [](const CentralProduct& a) { return a.z().order(); })
        .def("identity", [](const CentralProduct& a) { return to_py(a.identity()); })
        .def("embed", [](const CentralProduct& a, unsigned i, const PyLoopElement& x) {
            return to_py(a.embed(i, from_py(a.factors()[i - 1], x)));
        })
        .def("mul", [](const CentralProduct& a, const PyProductElement& x, const PyProductElement& y) {
            return to_py(a.mul(from_py(a, x), from_py(a, y)));
        })
        .def("inv", [](const CentralProduct& a, const PyProductElement& x) { return to_py(a.inv(from_py(a, x))); })
        .def("commutator", [](const CentralProduct& a, const PyProductElement& x, const PyProductElement& y) {
            return to_py(a.commutator(from_py(a, x), from_py(a, y)));
        })
        .def("rank", [](const CentralProduct& a, const PyProductElement& x) {
            return CentralProduct::rank(from_py(a, x));
        })
        .def("elements",
             [](const CentralProduct& a) {
                 std::vector<PyProductElement> out;
                 for (const auto& x : a.enumerate()) out.push_back(to_py(x));
                 return out;
             })
        .def("table", [](const CentralProduct& a) { return to_table(a); });

    py::class_<AbstractLoop>(m, "Table")
        .def(py::init([](const std::vector<std::vector<Index>>& rows) {
                 std::vector<Index> flat;
                 for (const auto& r : rows) {
                     if (r.size() != rows.size()) throw ValidationError("table must be square");
                     flat.insert(flat.end(), r.begin(), r.end());
                 }
                 return AbstractLoop(rows.size(), std::move(flat));
             }),
             py::arg("rows"))
        .def_property_readonly("size", &AbstractLoop::size)
        .def_property_readonly("identity", &AbstractLoop::identity)
        .def("__len__", &AbstractLoop::size)
        .def("mul",
             [](const AbstractLoop& t, Index a, Index b) {
                 if (a >= t.size() || b >= t.size()) throw ValidationError("index out of range");
                 return t.mul(a, b);
             })
        .def("rows",
             [](const AbstractLoop& t) {
                 std::vector<std::vector<Index>> rows(t.size());
                 for (std::size_t i = 0; i < t.size(); ++i)
                     for (std::size_t j = 0; j < t.size(); ++j) rows[i].push_back(t.mul(Index(i), Index(j)));
                 return rows;
             })
        .def("relabeled", [](const AbstractLoop& t, const std::vector<Index>& perm) { return t.relabeled(perm); })
        .def("center", [](const AbstractLoop& t) { return center(t); })
        .def("dumps",
             [](const AbstractLoop& t) {
                 std::ostringstream os;
                 write_loop_table(os, t);
                 return os.str();
             })
        .def_static("loads",
                    [](const std::string& text) {
                        std::istringstream is(text);
                        return read_loop_table(is);
                    })
        .def("save", [](const AbstractLoop& t, const std::string& path) { write_loop_table_file(path, t); })
        .def_static("load", &read_loop_table_file)
        .def("__eq__", [](const AbstractLoop& a, const AbstractLoop& b) { return a == b; });

    m.def("b_k", [](unsigned n, unsigned k) { return fraction(b_k_closed(n, k)); }, py::arg("n"), py::arg("k"));

    m.def(
        "associativity_degree",
        [](const py::object& what, const std::string& method) {
            if (py::isinstance<AbstractLoop>(what)) return report_dict(associativity_degree_brute(what.cast<const AbstractLoop&>()));
            const auto& l = what.cast<const CDLoop&>();
            if (method_from(method) == Method::Brute) return report_dict(associativity_degree_brute(l));
            py::dict d;
            d["degree"] = fraction(associativity_degree_closed(l.n()));
            d["method"] = "closed";
            return d;
        },
        py::arg("loop"), py::arg("method") = "closed");
    m.def("associativity_degree_closed", [](unsigned n) { return fraction(associativity_degree_closed(n)); });

    m.def(
        "commutativity_degree",
        [](const CentralProduct& a, const std::string& method, unsigned workers) {
            if (method_from(method) == Method::Brute) return report_dict(commutativity_degree_brute(a, workers));
            py::dict d;
            d["degree"] = fraction(commutativity_degree_closed(a.m(), a.n()));
            d["method"] = "closed";
            return d;
        },
        py::arg("product"), py::arg("method") = "closed", py::arg("workers") = 1);
    m.def("commutativity_degree_closed", [](unsigned mm, unsigned n) {
        return fraction(commutativity_degree_closed(mm, n));
    });
    m.def("commutativity_degree_two_factor", [](unsigned n) {
        return fraction(commutativity_degree_two_factor_formula(n));
    });

    m.def(
        "rank_census",
        [](const CentralProduct& a, const std::string& method) {
            return method_from(method) == Method::Brute ? rank_census_brute(a).counts
                                                        : rank_census_closed(a.m(), a.n(), a.z().order()).counts;
        },
        py::arg("product"), py::arg("method") = "closed");

    m.def(
        "pc_limits",
        [](const std::string& mode, unsigned fixed, unsigned from, unsigned to) {
            LimitMode lm;
            if (mode == "grow_n")
                lm = LimitMode::GrowN;
            else if (mode == "grow_m")
                lm = LimitMode::GrowM;
            else
                throw ValidationError("mode must be 'grow_n' or 'grow_m'");
            py::list out;
            for (const auto& [k, v] : pc_limit_table(lm, fixed, from, to)) out.append(py::make_tuple(k, fraction(v)));
            return out;
        },
        py::arg("mode"), py::arg("fixed"), py::arg("start"), py::arg("stop"));

    m.def(
        "find_isomorphism",
        [](const AbstractLoop& a, const AbstractLoop& b) -> py::object {
            const auto w = find_isomorphism(a, b);
            if (!w) return py::none();
            py::dict d;
            d["mapping"] = w->mapping;
            d["preserves_center"] = w->preserves_center;
            d["fixes_center_pointwise"] = w->fixes_center_pointwise;
            return std::move(d);
        },
        py::arg("a"), py::arg("b"));
    m.def("is_isomorphism", [](const AbstractLoop& a, const AbstractLoop& b, const std::vector<Index>& mapping) {
        return is_isomorphism(a, b, mapping);
    });

    m.def(
        "recover_factors",
        [](const AbstractLoop& t, unsigned n) {
            const auto d = recover_factors(t, n);
            py::dict out;
            out["m"] = d.shape.m;
            out["n"] = d.n;
            out["center"] = d.shape.center;
            py::list factors;
            for (const auto& f : d.factors) {
                py::dict fd;
                fd["elements"] = f.elements;
                fd["table"] = f.table;
                factors.append(fd);
            }
            out["factors"] = factors;
            return out;
        },
        py::arg("table"), py::arg("n"));

    m.def(
        "match_factors",
        [](const std::vector<AbstractLoop>& d, const std::vector<AbstractLoop>& e) -> py::object {
            const auto r = match_factors(d, e);
            if (!r.sigma) return py::none();
            return py::cast(*r.sigma);
        },
        py::arg("d"), py::arg("e"));

    m.def(
        "verify",
        [](unsigned max_n, unsigned max_m, unsigned max_mn, std::vector<std::uint32_t> z_orders, unsigned trials,
           std::uint64_t seed) {
            VerifyOptions o;
            o.max_n = max_n;
            o.max_m = max_m;
            o.max_mn = max_mn;
            o.z_orders = std::move(z_orders);
            o.decompose_trials = trials;
            o.seed = seed;
            VerifyReport r;
            {
                py::gil_scoped_release release;
                r = run_verify(o);
            }
            py::list checks;
            for (const auto& c : r.checks) {
                py::dict d;
                d["group"] = c.group;
                d["name"] = c.name;
                d["expected"] = c.expected;
                d["actual"] = c.actual;
                d["basis"] = c.basis;
                d["status"] = to_string(c.status);
                d["detail"] = c.detail;
                checks.append(d);
            }
            py::dict out;
            out["passed"] = r.passed();
            out["checks"] = checks;
            return out;
        },
        py::arg("max_n") = 4, py::arg("max_m") = 3, py::arg("max_mn") = 9,
        py::arg("z_orders") = std::vector<std::uint32_t>{2, 4}, py::arg("trials") = 24,
        py::arg("seed") = 20240611);
}
