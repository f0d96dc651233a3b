#include "qcalc/qspecial.hpp"

#include <cmath>
#include <string>

#include "qcalc/errors.hpp"
#include "qcalc/qderiv.hpp"

namespace qcalc {

namespace {

const char* kind_name(QSeriesKind kind) {
    switch (kind) {
        case QSeriesKind::q_exp: return "q_exp";
        case QSeriesKind::q_sin: return "q_sin";
        case QSeriesKind::q_cos: return "q_cos";
    }
    return "?";
}

}  // namespace

SeriesEval q_series_eval(QSeriesKind kind, double x, const DeformationParameter& dp,
                         const SummationControl& ctrl) {
    ctrl.validate();
    SeriesEval out;
    double term;       // current term, signs included
    int power_step;    // power increase per term
    switch (kind) {
        case QSeriesKind::q_exp:
            term = 1.0;
            power_step = 1;
            break;
        case QSeriesKind::q_sin:
            term = x;
            power_step = 2;
            break;
        case QSeriesKind::q_cos:
            term = 1.0;
            power_step = 2;
            break;
    }

    // term_k+1 = term_k * (+-) x^step / (bracket factors of the new indices)
    int index = (kind == QSeriesKind::q_sin) ? 1 : 0;  // factorial index of current term
    double prev_mag = std::abs(term);
    for (int k = 0; k < ctrl.max_terms; ++k) {
        out.value += term;
        out.last_term = term;
        ++out.terms_used;

        const double mag = std::abs(term);
        if (mag < ctrl.tol && mag <= prev_mag) {
            out.converged = true;
            return out;
        }
        prev_mag = mag;

        double denom = 1.0;
        for (int s = 0; s < power_step; ++s) {
            ++index;
            denom *= q_bracket(index, dp);
        }
        term *= (kind == QSeriesKind::q_exp ? x : -x * x) / denom;
    }

    if (ctrl.on_divergence == SummationControl::OnDivergence::error) {
        throw DivergenceError(std::string(kind_name(kind)) +
                              ": terms still not below tolerance at max_terms (last term " +
                              std::to_string(out.last_term) + ")");
    }
    return out;  // partial, converged = false
}

double q_exp(double x, const DeformationParameter& dp, const SummationControl& ctrl) {
    return q_series_eval(QSeriesKind::q_exp, x, dp, ctrl).value;
}

double q_sin(double x, const DeformationParameter& dp, const SummationControl& ctrl) {
    return q_series_eval(QSeriesKind::q_sin, x, dp, ctrl).value;
}

double q_cos(double x, const DeformationParameter& dp, const SummationControl& ctrl) {
    return q_series_eval(QSeriesKind::q_cos, x, dp, ctrl).value;
}

double ode_residual(QSeriesKind kind, double a, const DeformationParameter& dp,
                    double x, const SummationControl& ctrl) {
    const Evaluator f = [kind, &dp, &ctrl](double t) {
        return q_series_eval(kind, t, dp, ctrl).value;
    };
    const Evaluator df = [&f, &dp](double t) { return jackson_derivative(f, dp, t); };
    const double d2f = jackson_derivative(df, dp, x);
    return std::abs(d2f + a * f(x));
}

}  // namespace qcalc
