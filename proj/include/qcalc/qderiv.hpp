#pragma once

#include "qcalc/evaluator.hpp"
#include "qcalc/qcore.hpp"

namespace qcalc {

/// Symmetric Jackson derivative (f(qx) - f(x/q)) / ((q - 1/q) x).
///
/// Undefined at x = 0: the symmetric difference quotient divides by x and has
/// no removable value there for general f. Throws std::domain_error for x = 0.
double jackson_derivative(const Evaluator& f, const DeformationParameter& dp, double x);

/// Exact Jackson derivative on the coefficient vector: c_n x^n maps to
/// c_n [n]_q x^(n-1). Constants (and the zero polynomial) map to zero; this
/// path is defined everywhere, including the origin.
Polynomial jackson_derivative(const Polynomial& p, const DeformationParameter& dp);

/// The direct derivative of a pointwise product next to its two expansion
/// forms. All three agree up to rounding:
///   lhs   = D(f g)(x)
///   form1 = Df(x) g(x/q) + f(qx) Dg(x)
///   form2 = Df(x) g(qx)  + f(x/q) Dg(x)
struct ProductRuleForms {
    double lhs;
    double form1;
    double form2;
};

ProductRuleForms product_rule_forms(const Evaluator& f, const Evaluator& g,
                                    const DeformationParameter& dp, double x);

/// Measured position-momentum commutator on the monomial x^n.
///
/// With the momentum realized through the Jackson derivative, the commutator
/// acts on x^n as a multiple of x^n; `ratio` is that eigenvalue divided by
/// the unit i*hbar, which works out to [n+1]_q - [n]_q. The classical value
/// is 1; `deviation` = |ratio - 1| measures how far the deformed commutator
/// is from the canonical one. It vanishes only for n = 0 or q -> 1.
struct CommutatorReport {
    int n;
    double ratio;
    double deviation;
};

CommutatorReport q_commutator_xp(int n, const DeformationParameter& dp);

}  // namespace qcalc
