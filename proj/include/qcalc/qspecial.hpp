#pragma once

#include "qcalc/qcore.hpp"

namespace qcalc {

/// The three q-factorial power series. q_exp sums x^k/[k]_q!, q_sin the odd
/// alternating terms x^(2k+1)/[2k+1]_q!, q_cos the even ones x^(2k)/[2k]_q!.
/// The symmetric brackets grow geometrically with k, so [k]_q! outgrows any
/// power of x and the series converge on the whole line; the divergence
/// guard still watches the terms so a hostile SummationControl fails loudly
/// instead of quietly truncating.
enum class QSeriesKind { q_exp, q_sin, q_cos };

struct SeriesEval {
    double value = 0.0;
    int terms_used = 0;
    double last_term = 0.0;
    bool converged = false;
};

/// Evaluates the chosen series, truncating at the first term below ctrl.tol
/// once the terms are decreasing. If the terms are still not decreasing at
/// ctrl.max_terms: throws DivergenceError reporting the last term magnitude
/// under the `error` policy, otherwise returns the partial sum with
/// converged = false.
SeriesEval q_series_eval(QSeriesKind kind, double x, const DeformationParameter& dp,
                         const SummationControl& ctrl);

double q_exp(double x, const DeformationParameter& dp, const SummationControl& ctrl);
double q_sin(double x, const DeformationParameter& dp, const SummationControl& ctrl);
double q_cos(double x, const DeformationParameter& dp, const SummationControl& ctrl);

/// |D(D f)(x) + a f(x)| for the chosen special function, with D the
/// evaluator-level Jackson derivative. Small for (q_sin, a=1) and
/// (q_cos, a=1): the sine and cosine series step to each other under D, so
/// they solve the second-order equation with unit coefficient. Requires
/// x != 0 (the derivative samples q^(+-2) x as well).
double ode_residual(QSeriesKind kind, double a, const DeformationParameter& dp,
                    double x, const SummationControl& ctrl);

}  // namespace qcalc
