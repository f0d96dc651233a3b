#include "qcalc/qderiv.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qcalc {

double jackson_derivative(const Evaluator& f, const DeformationParameter& dp, double x) {
    if (x == 0.0) {
        throw std::domain_error("Jackson derivative undefined at 0");
    }
    return (f(dp.q() * x) - f(dp.q_inv() * x)) / (dp.span() * x);
}

Polynomial jackson_derivative(const Polynomial& p, const DeformationParameter& dp) {
    if (p.degree() < 1) return {};
    std::vector<double> out(static_cast<std::size_t>(p.degree()), 0.0);
    for (int n = 1; n <= p.degree(); ++n) {
        out[static_cast<std::size_t>(n - 1)] = p.coeff(n) * q_bracket(n, dp);
    }
    return Polynomial(std::move(out));
}

ProductRuleForms product_rule_forms(const Evaluator& f, const Evaluator& g,
                                    const DeformationParameter& dp, double x) {
    if (x == 0.0) {
        throw std::domain_error("Jackson derivative undefined at 0");
    }
    const Evaluator fg = [&f, &g](double t) { return f(t) * g(t); };
    const double df = jackson_derivative(f, dp, x);
    const double dg = jackson_derivative(g, dp, x);
    const double xq = dp.q() * x;
    const double xq_inv = dp.q_inv() * x;
    return {
        jackson_derivative(fg, dp, x),
        df * g(xq_inv) + f(xq) * dg,
        df * g(xq) + f(xq_inv) * dg,
    };
}

CommutatorReport q_commutator_xp(int n, const DeformationParameter& dp) {
    if (n < 0) {
        throw std::domain_error("q_commutator_xp: n must be >= 0");
    }
    // Exact polynomial computation of (x D - D x) on x^n, which returns
    // ([n]_q - [n+1]_q) x^n. The momentum sign flips that to [n+1]_q - [n]_q.
    const Polynomial xn = Polynomial::monomial(n);
    const Polynomial x_then_d = jackson_derivative(xn, dp).times_x();
    const Polynomial d_then_x = jackson_derivative(xn.times_x(), dp);
    const double eigen = (x_then_d - d_then_x).coeff(n);
    const double ratio = -eigen;
    return {n, ratio, std::abs(ratio - 1.0)};
}

}  // namespace qcalc
