#include "qcalc/qsolve.hpp"

#include <cmath>
#include <stdexcept>

#include "qcalc/errors.hpp"
#include "qcalc/qderiv.hpp"

namespace qcalc {

double ft_derivative_of_integral(const Evaluator& f, const DeformationParameter& dp,
                                 double b, const SummationControl& ctrl) {
    if (!(b > 0.0)) {
        throw std::domain_error("ft_derivative_of_integral: b must be > 0");
    }
    const Evaluator G = [&f, &dp, &ctrl](double upper) {
        return jackson_integral(f, dp, upper, ctrl).value;
    };
    return jackson_derivative(G, dp, b);
}

IntegralOfDerivative ft_integral_of_derivative(const Evaluator& f, const DeformationParameter& dp,
                                               double b, const SummationControl& ctrl) {
    ctrl.validate();
    if (!(b > 0.0)) {
        throw std::domain_error("ft_integral_of_derivative: b must be > 0");
    }
    // The sum telescopes: partial sums are f(b) - f(q^(2n) b), so only the
    // boundary sequence f(q^(2n) b) matters. Walk it until three consecutive
    // samples agree within tol.
    const double qsq = dp.q() * dp.q();
    double point = b;  // q^(2n) b
    double s_prev2 = 0.0, s_prev1 = 0.0;
    double s = f(point);
    const double f_at_b = s;
    for (int n = 1; n <= ctrl.max_terms; ++n) {
        point *= qsq;
        s_prev2 = s_prev1;
        s_prev1 = s;
        s = f(point);
        if (n >= 2 && std::abs(s - s_prev1) <= ctrl.tol && std::abs(s_prev1 - s_prev2) <= ctrl.tol) {
            return {f_at_b - s, s, n + 1};
        }
    }
    throw DivergenceError("no lattice limit");
}

LatticeSolution recover_integrand(const Evaluator& F, const DeformationParameter& dp,
                                  double b, int depth) {
    if (!(b > 0.0)) {
        throw std::domain_error("recover_integrand: b must be > 0");
    }
    if (depth < 1) {
        throw std::domain_error("recover_integrand: depth must be >= 1");
    }
    LatticeSolution sol;
    sol.base = b;
    sol.values.reserve(static_cast<std::size_t>(depth) + 1);
    double point = b * dp.q();  // q^(2n+1) b
    const double qsq = dp.q() * dp.q();
    for (int n = 0; n <= depth; ++n) {
        sol.values.push_back({point, jackson_derivative(F, dp, point)});
        point *= qsq;
    }
    return sol;
}

double reintegrate(const LatticeSolution& sol, const DeformationParameter& dp) {
    const double w = dp.q_inv() - dp.q();
    // Smallest points first, mirroring the integral's summation order.
    double sum = 0.0;
    for (std::size_t i = sol.values.size(); i-- > 0;) {
        sum += sol.values[i].point * sol.values[i].h_value;
    }
    return w * sum;
}

UniquenessReport uniqueness_check(const Evaluator& f, const Evaluator& g,
                                  const DeformationParameter& dp, double b, int depth,
                                  double tol, const SummationControl& ctrl) {
    if (!(b > 0.0)) {
        throw std::domain_error("uniqueness_check: b must be > 0");
    }
    if (depth < 1) {
        throw std::domain_error("uniqueness_check: depth must be >= 1");
    }
    UniquenessReport report;
    report.same_class = true;
    double point = b * dp.q();
    const double qsq = dp.q() * dp.q();
    for (int n = 0; n <= depth; ++n) {
        if (std::abs(f(point) - g(point)) > tol) {
            report.same_class = false;
            break;
        }
        point *= qsq;
    }
    const double int_f = jackson_integral(f, dp, b, ctrl).value;
    const double int_g = jackson_integral(g, dp, b, ctrl).value;
    report.integral_gap = std::abs(int_f - int_g);
    return report;
}

}  // namespace qcalc
