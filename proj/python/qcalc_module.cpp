// Python bindings for the qcalc core. Functions take the deformation
// parameter as a plain float and validate it on entry; callables cross the
// boundary as ordinary Python functions.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "qcalc/errors.hpp"
#include "qcalc/qcore.hpp"
#include "qcalc/qderiv.hpp"
#include "qcalc/qfock.hpp"
#include "qcalc/qint.hpp"
#include "qcalc/qsolve.hpp"
#include "qcalc/qspecial.hpp"

namespace py = pybind11;
using namespace qcalc;

namespace {

std::vector<std::vector<double>> matrix_rows(const SquareMatrix& m) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.dim));
    for (int i = 0; i < m.dim; ++i) {
        rows[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(m.dim));
        for (int j = 0; j < m.dim; ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m.at(i, j);
    }
    return rows;
}

QSeriesKind kind_from_name(const std::string& name) {
    if (name == "qexp") return QSeriesKind::q_exp;
    if (name == "qsin") return QSeriesKind::q_sin;
    if (name == "qcos") return QSeriesKind::q_cos;
    throw std::domain_error("kind must be qexp, qsin, or qcos");
}

}  // namespace

PYBIND11_MODULE(_qcalc, m) {
    m.doc() = "symmetric q-calculus: brackets, Jackson derivative and integrals, "
              "ladder operators, q-special functions";

    py::register_exception<DivergenceError>(m, "DivergenceError");

    py::class_<SummationControl> ctrl(m, "SummationControl");
    py::enum_<SummationControl::OnDivergence>(ctrl, "OnDivergence")
        .value("error", SummationControl::OnDivergence::error)
        .value("return_partial", SummationControl::OnDivergence::return_partial);
    ctrl.def(py::init([](double tol, int max_terms, double magnitude_bound,
                         SummationControl::OnDivergence on_divergence) {
                 SummationControl c;
                 c.tol = tol;
                 c.max_terms = max_terms;
                 c.magnitude_bound = magnitude_bound;
                 c.on_divergence = on_divergence;
                 c.validate();
                 return c;
             }),
             py::arg("tol") = 1e-12, py::arg("max_terms") = 10000,
             py::arg("magnitude_bound") = 1e6,
             py::arg("on_divergence") = SummationControl::OnDivergence::error)
        .def_readwrite("tol", &SummationControl::tol)
        .def_readwrite("max_terms", &SummationControl::max_terms)
        .def_readwrite("magnitude_bound", &SummationControl::magnitude_bound)
        .def_readwrite("on_divergence", &SummationControl::on_divergence);

    // qcore
    m.def("q_bracket",
          [](int n, double q) { return q_bracket(n, DeformationParameter(q)); },
          py::arg("n"), py::arg("q"));
    m.def("q_factorial",
          [](int n, double q) { return q_factorial(n, DeformationParameter(q)); },
          py::arg("n"), py::arg("q"));
    m.def("q_bracket_classical_gap",
          [](int n, double q) { return q_bracket_classical_gap(n, DeformationParameter(q)); },
          py::arg("n"), py::arg("q"));

    // qderiv
    m.def("jackson_derivative",
          [](const Evaluator& f, double q, double x) {
              return jackson_derivative(f, DeformationParameter(q), x);
          },
          py::arg("f"), py::arg("q"), py::arg("x"));
    m.def("jackson_derivative_poly",
          [](const std::vector<double>& coeffs, double q) {
              return jackson_derivative(Polynomial(coeffs), DeformationParameter(q)).coeffs();
          },
          py::arg("coeffs"), py::arg("q"),
          "Exact derivative on a coefficient vector (coeffs[k] multiplies x^k).");
    m.def("product_rule_forms",
          [](const Evaluator& f, const Evaluator& g, double q, double x) {
              const auto r = product_rule_forms(f, g, DeformationParameter(q), x);
              return py::make_tuple(r.lhs, r.form1, r.form2);
          },
          py::arg("f"), py::arg("g"), py::arg("q"), py::arg("x"));

    py::class_<CommutatorReport>(m, "CommutatorReport")
        .def_readonly("n", &CommutatorReport::n)
        .def_readonly("ratio", &CommutatorReport::ratio)
        .def_readonly("deviation", &CommutatorReport::deviation);
    m.def("q_commutator_xp",
          [](int n, double q) { return q_commutator_xp(n, DeformationParameter(q)); },
          py::arg("n"), py::arg("q"));

    // qint
    py::class_<IntegralResult>(m, "IntegralResult")
        .def_readonly("value", &IntegralResult::value)
        .def_readonly("terms_used", &IntegralResult::terms_used)
        .def_readonly("tail_estimate", &IntegralResult::tail_estimate)
        .def_readonly("converged", &IntegralResult::converged)
        .def_readonly("partial", &IntegralResult::partial)
        .def_readonly("guard_tripped", &IntegralResult::guard_tripped)
        .def_readonly("diagnostic", &IntegralResult::diagnostic);

    m.def("delta_eval", &delta_eval, py::arg("f"), py::arg("x0"));
    m.def("jackson_integral",
          [](const Evaluator& f, double q, double b, const SummationControl& ctrl) {
              return jackson_integral(f, DeformationParameter(q), b, ctrl);
          },
          py::arg("f"), py::arg("q"), py::arg("b"),
          py::arg("ctrl") = SummationControl{});
    m.def("jackson_integral_interval",
          [](const Evaluator& f, double q, double a, double b, const SummationControl& ctrl) {
              return jackson_integral_interval(f, DeformationParameter(q), a, b, ctrl);
          },
          py::arg("f"), py::arg("q"), py::arg("a"), py::arg("b"),
          py::arg("ctrl") = SummationControl{});
    m.def("jackson_integral_improper",
          [](const Evaluator& f, double q, const SummationControl& ctrl) {
              return jackson_integral_improper(f, DeformationParameter(q), ctrl);
          },
          py::arg("f"), py::arg("q"), py::arg("ctrl") = SummationControl{});
    m.def("jackson_integral_real_line",
          [](const Evaluator& f, double q, const SummationControl& ctrl) {
              return jackson_integral_real_line(f, DeformationParameter(q), ctrl);
          },
          py::arg("f"), py::arg("q"), py::arg("ctrl") = SummationControl{});
    m.def("antiderivative_at",
          [](const Evaluator& f, double q, double x, double constant,
             const SummationControl& ctrl) {
              return antiderivative_at(f, DeformationParameter(q), x, constant, ctrl);
          },
          py::arg("f"), py::arg("q"), py::arg("x"), py::arg("constant") = 0.0,
          py::arg("ctrl") = SummationControl{});
    m.def("lattice_points",
          [](double q, double scale, int n_lo, int n_hi, const std::string& sign) {
              const LatticeSign s = sign == "neg"    ? LatticeSign::negative
                                    : sign == "both" ? LatticeSign::both
                                                     : LatticeSign::positive;
              const auto lat = lattice_points(DeformationParameter(q), scale, n_lo, n_hi, s);
              std::vector<std::tuple<int, int, double>> out;
              out.reserve(lat.points.size());
              for (const auto& p : lat.points) out.emplace_back(p.n, p.sign, p.location);
              return out;
          },
          py::arg("q"), py::arg("scale"), py::arg("n_lo"), py::arg("n_hi"),
          py::arg("sign") = "pos",
          "Points (n, sign, location) of the sample lattice, ascending n.");
    m.def("finite_jackson_measure",
          [](double q, double b, const SummationControl& ctrl) {
              const auto mu = finite_jackson_measure(DeformationParameter(q), b, ctrl);
              std::vector<std::pair<double, double>> atoms;
              atoms.reserve(mu.atoms.size());
              for (const auto& a : mu.atoms) atoms.emplace_back(a.location, a.weight);
              return atoms;
          },
          py::arg("q"), py::arg("b"), py::arg("ctrl") = SummationControl{},
          "(location, weight) atoms of the truncated [0,b] integral.");
    m.def("equivalent_on_lattice",
          [](const Evaluator& f, const Evaluator& g, double q, int depth, double tol) {
              return equivalent_on_lattice(f, g, DeformationParameter(q), depth, tol);
          },
          py::arg("f"), py::arg("g"), py::arg("q"), py::arg("depth"), py::arg("tol"));

    py::class_<CounterexamplePair>(m, "CounterexamplePair")
        .def_readonly("f", &CounterexamplePair::f)
        .def_readonly("g", &CounterexamplePair::g)
        .def_readonly("int_f", &CounterexamplePair::int_f)
        .def_readonly("int_g", &CounterexamplePair::int_g)
        .def_readonly("plateau_center", &CounterexamplePair::plateau_center)
        .def_readonly("plateau_halfwidth", &CounterexamplePair::plateau_halfwidth)
        .def_readonly("plateau_height", &CounterexamplePair::plateau_height);
    m.def("monotonicity_counterexample",
          [](double q, double a, double b) {
              return monotonicity_counterexample(DeformationParameter(q), a, b);
          },
          py::arg("q"), py::arg("a"), py::arg("b"));

    // qfock
    m.def("vacuum_check",
          [](double q, const std::vector<double>& samples) {
              return vacuum_check(DeformationParameter(q), samples);
          },
          py::arg("q"), py::arg("samples"));
    m.def("vacuum_residual",
          [](const Evaluator& candidate, double q, const std::vector<double>& samples) {
              return vacuum_residual(candidate, DeformationParameter(q), samples);
          },
          py::arg("candidate"), py::arg("q"), py::arg("samples"));
    m.def("apply_lowering",
          [](const std::vector<double>& coeffs, double q) {
              return apply_lowering(FockState(coeffs, DeformationParameter(q))).coeffs();
          },
          py::arg("coeffs"), py::arg("q"));
    m.def("apply_raising",
          [](const std::vector<double>& coeffs, double q) {
              return apply_raising(FockState(coeffs, DeformationParameter(q))).coeffs();
          },
          py::arg("coeffs"), py::arg("q"));
    m.def("apply_q_number",
          [](const std::vector<double>& coeffs, double q) {
              return apply_q_number(FockState(coeffs, DeformationParameter(q))).coeffs();
          },
          py::arg("coeffs"), py::arg("q"));

    py::class_<TruncatedOperators>(m, "TruncatedOperators")
        .def_readonly("dim", &TruncatedOperators::dim)
        .def_property_readonly("lowering",
                               [](const TruncatedOperators& t) { return matrix_rows(t.lowering); })
        .def_property_readonly("raising",
                               [](const TruncatedOperators& t) { return matrix_rows(t.raising); })
        .def_property_readonly("number",
                               [](const TruncatedOperators& t) { return matrix_rows(t.number); })
        .def_property_readonly("q_number",
                               [](const TruncatedOperators& t) { return matrix_rows(t.q_number); });
    m.def("build_truncated",
          [](double q, int dim) { return build_truncated(DeformationParameter(q), dim); },
          py::arg("q"), py::arg("dim"));
    m.def("algebra_residuals",
          [](const TruncatedOperators& ops) {
              const auto r = algebra_residuals(ops);
              return py::make_tuple(r.r1, r.r2, r.r3);
          },
          py::arg("ops"));

    // qspecial
    m.def("q_exp",
          [](double x, double q, const SummationControl& ctrl) {
              return q_exp(x, DeformationParameter(q), ctrl);
          },
          py::arg("x"), py::arg("q"), py::arg("ctrl") = SummationControl{});
    m.def("q_sin",
          [](double x, double q, const SummationControl& ctrl) {
              return q_sin(x, DeformationParameter(q), ctrl);
          },
          py::arg("x"), py::arg("q"), py::arg("ctrl") = SummationControl{});
    m.def("q_cos",
          [](double x, double q, const SummationControl& ctrl) {
              return q_cos(x, DeformationParameter(q), ctrl);
          },
          py::arg("x"), py::arg("q"), py::arg("ctrl") = SummationControl{});
    m.def("ode_residual",
          [](const std::string& kind, double a, double q, double x,
             const SummationControl& ctrl) {
              return ode_residual(kind_from_name(kind), a, DeformationParameter(q), x, ctrl);
          },
          py::arg("kind"), py::arg("a"), py::arg("q"), py::arg("x"),
          py::arg("ctrl") = SummationControl{});

    // qsolve
    m.def("ft_derivative_of_integral",
          [](const Evaluator& f, double q, double b, const SummationControl& ctrl) {
              return ft_derivative_of_integral(f, DeformationParameter(q), b, ctrl);
          },
          py::arg("f"), py::arg("q"), py::arg("b"), py::arg("ctrl") = SummationControl{});
    m.def("ft_integral_of_derivative",
          [](const Evaluator& f, double q, double b, const SummationControl& ctrl) {
              const auto r = ft_integral_of_derivative(f, DeformationParameter(q), b, ctrl);
              return py::make_tuple(r.value, r.lattice_limit, r.terms_used);
          },
          py::arg("f"), py::arg("q"), py::arg("b"), py::arg("ctrl") = SummationControl{},
          "Returns (value, lattice_limit, terms_used).");
    m.def("recover_integrand",
          [](const Evaluator& F, double q, double b, int depth) {
              const auto sol = recover_integrand(F, DeformationParameter(q), b, depth);
              std::vector<std::pair<double, double>> out;
              out.reserve(sol.values.size());
              for (const auto& s : sol.values) out.emplace_back(s.point, s.h_value);
              return out;
          },
          py::arg("F"), py::arg("q"), py::arg("b"), py::arg("depth"),
          "(point, h_value) samples of the recovered integrand.");
    m.def("uniqueness_check",
          [](const Evaluator& f, const Evaluator& g, double q, double b, int depth,
             double tol, const SummationControl& ctrl) {
              const auto rep = uniqueness_check(f, g, DeformationParameter(q), b, depth,
                                                tol, ctrl);
              return py::make_tuple(rep.same_class, rep.integral_gap);
          },
          py::arg("f"), py::arg("g"), py::arg("q"), py::arg("b"), py::arg("depth"),
          py::arg("tol"), py::arg("ctrl") = SummationControl{},
          "Returns (same_class, integral_gap).");
}
