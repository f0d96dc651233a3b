#pragma once

#include <vector>

#include "qcalc/evaluator.hpp"
#include "qcalc/qcore.hpp"
#include "qcalc/qint.hpp"

namespace qcalc {

/// D applied to the upper limit of the base-point integral: differentiating
/// G(b) = integral of f over [0, b] at b returns f(b). The two integrals in
/// the difference quotient telescope term-by-term, so the identity is exact
/// up to truncation.
double ft_derivative_of_integral(const Evaluator& f, const DeformationParameter& dp,
                                 double b, const SummationControl& ctrl);

/// Integral over [0, b] of the Jackson derivative of f. Telescopes to
/// f(b) - lim f(q^(2n) b) along the lattice; f is never evaluated at 0, so
/// the boundary term is the lattice limit, not f(0). The limit is estimated
/// at the deepest retained point once the last three samples agree within
/// ctrl.tol; if they never do within max_terms the limit does not exist and
/// a DivergenceError("no lattice limit") is thrown.
struct IntegralOfDerivative {
    double value = 0.0;          // f(b) - lattice_limit
    double lattice_limit = 0.0;  // lim f(q^(2n) b)
    int terms_used = 0;
};

IntegralOfDerivative ft_integral_of_derivative(const Evaluator& f, const DeformationParameter& dp,
                                               double b, const SummationControl& ctrl);

/// The integrand of an integral equation, recovered on the sample lattice.
/// Only the values at q^(2n+1) b are determined by the equation; off the
/// lattice the integrand is arbitrary within its equivalence class.
struct LatticeSolution {
    struct Sample {
        double point;    // q^(2n+1) b, strictly decreasing
        double h_value;
    };
    double base = 0.0;
    std::vector<Sample> values;
};

/// Given the antiderivative F, returns h = D F at the lattice points
/// q^(2n+1) b for n = 0..depth. Re-integrating the result reproduces F(b)
/// up to the truncated tail.
LatticeSolution recover_integrand(const Evaluator& F, const DeformationParameter& dp,
                                  double b, int depth);

/// Truncated re-integration of a lattice solution:
/// b (1/q - q) sum q^(2n+1) h(q^(2n+1) b) over the stored samples.
double reintegrate(const LatticeSolution& sol, const DeformationParameter& dp);

/// Whether f and g lie in the same integration equivalence class at base b,
/// judged on the points q^(2n+1) b for n = 0..depth, together with the
/// resulting integral gap |int f - int g| over [0, b]. Agreement on the
/// lattice forces the gap to quadrature tolerance; an off-lattice
/// perturbation of any size leaves the integral untouched, while an
/// on-lattice perturbation of size eps at q^(2n+1) b moves it by exactly
/// the atom weight (1/q - q) b q^(2n+1) times eps.
struct UniquenessReport {
    bool same_class = false;
    double integral_gap = 0.0;
};

UniquenessReport uniqueness_check(const Evaluator& f, const Evaluator& g,
                                  const DeformationParameter& dp, double b, int depth,
                                  double tol, const SummationControl& ctrl = {});

}  // namespace qcalc
