#include "qcalc/qint.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qcalc/errors.hpp"

namespace qcalc {

namespace {

// Terms are recorded first and folded smallest-magnitude-first afterwards;
// the fold order is fixed, so identical inputs reproduce bit-identical sums.
double fold_reversed(const std::vector<double>& terms) {
    double sum = 0.0;
    for (std::size_t i = terms.size(); i-- > 0;) sum += terms[i];
    return sum;
}

// Truncation depth of the [0,b] sum: smallest N >= 1 with b*M*q^(2N) <= tol,
// capped at max_terms. Depends only on (b, q, M, tol) -- never on f -- so
// perturbing an integrand cannot shift the sample set.
int finite_term_count(const DeformationParameter& dp, double b,
                      const SummationControl& ctrl, double* tail_out, bool* reached) {
    const double qsq = dp.q() * dp.q();
    double tail = b * ctrl.magnitude_bound * qsq;
    int n_terms = 1;
    while (tail > ctrl.tol && n_terms < ctrl.max_terms) {
        tail *= qsq;
        ++n_terms;
    }
    *tail_out = tail;
    *reached = tail <= ctrl.tol;
    return n_terms;
}

void check_guard(double fv, double x, const SummationControl& ctrl,
                 IntegralResult& res, const char* where) {
    if (std::abs(fv) > ctrl.magnitude_bound) {
        if (ctrl.on_divergence == SummationControl::OnDivergence::error) {
            throw DivergenceError(std::string(where) + ": |f| exceeds magnitude_bound at x = " +
                                  std::to_string(x));
        }
        res.guard_tripped = true;
    }
}

// One half-line of the improper integral, summed over the full integer index:
// returns sum_{n in Z} q^(2n+1) f(q^(2n+1)) without the (1/q - q) prefactor.
//
// The small-point side (n >= 0) is controlled by the geometric majorant
// M q^(2N). The large-point side (n < 0) has no such bound; it is truncated
// once the last few terms decay geometrically and the projected geometric
// remainder falls below tol/2. A minimum of kLargeTailMinTerms terms is
// always examined so an early run of zeros cannot end the sum prematurely.
struct TwoTailSum {
    double sum = 0.0;
    int terms_used = 0;
    double tail_estimate = 0.0;
    bool converged = false;
    IntegralResult flags;  // guard/partial bookkeeping only
    std::string diagnostic;
};

constexpr int kLargeTailMinTerms = 8;
constexpr int kLargeTailRatioWindow = 3;

TwoTailSum improper_sum(const Evaluator& f, const DeformationParameter& dp,
                        const SummationControl& ctrl, const char* where) {
    const double q = dp.q();
    const double qsq = q * q;
    TwoTailSum out;

    // Small-point tail: q, q^3, q^5, ...
    std::vector<double> small_terms;
    {
        double tail = 0.0;
        bool reached = false;
        const int n_terms = finite_term_count(dp, 1.0, ctrl, &tail, &reached);
        double qpow = q;  // q^(2n+1)
        small_terms.reserve(static_cast<std::size_t>(n_terms));
        for (int n = 0; n < n_terms; ++n) {
            const double fv = f(qpow);
            check_guard(fv, qpow, ctrl, out.flags, where);
            small_terms.push_back(qpow * fv);
            qpow *= qsq;
        }
        out.tail_estimate += tail;
        if (!reached) {
            if (ctrl.on_divergence == SummationControl::OnDivergence::error) {
                throw DivergenceError(std::string(where) +
                                      ": small-point tail did not reach tolerance within max_terms");
            }
            out.flags.partial = true;
            out.diagnostic = "small-point tail";
        }
    }

    // Large-point tail: 1/q, 1/q^3, ...
    std::vector<double> large_terms;
    {
        const double grow = dp.q_inv() * dp.q_inv();
        double xpow = dp.q_inv();  // q^(-(2k-1))
        bool reached = false;
        double tail = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= ctrl.max_terms; ++k) {
            const double fv = f(xpow);
            check_guard(fv, xpow, ctrl, out.flags, where);
            large_terms.push_back(xpow * fv);
            xpow *= grow;

            if (k >= kLargeTailMinTerms) {
                double ratio = 0.0;
                for (int j = 0; j < kLargeTailRatioWindow; ++j) {
                    const double cur = std::abs(large_terms[large_terms.size() - 1 - j]);
                    const double prev = std::abs(large_terms[large_terms.size() - 2 - j]);
                    double r;
                    if (prev == 0.0) {
                        r = (cur == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
                    } else {
                        r = cur / prev;
                    }
                    ratio = std::max(ratio, r);
                }
                if (ratio < 1.0) {
                    const double last = std::abs(large_terms.back());
                    tail = (ratio == 0.0) ? 0.0 : last * ratio / (1.0 - ratio);
                    if (tail <= ctrl.tol / 2.0) {
                        reached = true;
                        break;
                    }
                }
            }
        }
        if (!reached) {
            if (ctrl.on_divergence == SummationControl::OnDivergence::error) {
                throw DivergenceError(std::string(where) +
                                      ": large-point tail did not decay within max_terms");
            }
            out.flags.partial = true;
            out.diagnostic = out.diagnostic.empty() ? "large-point tail"
                                                    : out.diagnostic + "; large-point tail";
        } else {
            out.tail_estimate += tail;
        }
    }

    out.sum = fold_reversed(small_terms) + fold_reversed(large_terms);
    out.terms_used = static_cast<int>(small_terms.size() + large_terms.size());
    out.converged = !out.flags.partial && !out.flags.guard_tripped;
    return out;
}

}  // namespace

QLattice lattice_points(const DeformationParameter& dp, double scale,
                        int n_lo, int n_hi, LatticeSign sign) {
    if (!(scale > 0.0)) {
        throw std::domain_error("lattice_points: scale must be > 0 (scale = 0 is degenerate)");
    }
    if (n_lo > n_hi) {
        throw std::domain_error("lattice_points: n_lo must be <= n_hi");
    }
    QLattice lat{dp.q(), scale, sign, n_lo, n_hi, {}};
    for (int n = n_lo; n <= n_hi; ++n) {
        const double loc = scale * std::pow(dp.q(), 2 * n + 1);
        if (sign == LatticeSign::positive || sign == LatticeSign::both) {
            lat.points.push_back({n, +1, loc});
        }
        if (sign == LatticeSign::negative || sign == LatticeSign::both) {
            lat.points.push_back({n, -1, -loc});
        }
    }
    return lat;
}

double delta_eval(const Evaluator& f, double x0) { return f(x0); }

double integrate(const PointMeasure& mu, const Evaluator& f) {
    double sum = 0.0;
    for (const auto& atom : mu.atoms) sum += atom.weight * f(atom.location);
    return sum;
}

PointMeasure finite_jackson_measure(const DeformationParameter& dp, double b,
                                    const SummationControl& ctrl) {
    ctrl.validate();
    if (!(b > 0.0)) {
        throw std::domain_error("finite_jackson_measure: b must be > 0");
    }
    double tail = 0.0;
    bool reached = false;
    const int n_terms = finite_term_count(dp, b, ctrl, &tail, &reached);
    const double w = dp.q_inv() - dp.q();
    const double qsq = dp.q() * dp.q();
    PointMeasure mu;
    mu.atoms.reserve(static_cast<std::size_t>(n_terms));
    double qpow = dp.q();
    for (int n = 0; n < n_terms; ++n) {
        mu.atoms.push_back({b * qpow, b * w * qpow});
        qpow *= qsq;
    }
    return mu;
}

IntegralResult jackson_integral(const Evaluator& f, const DeformationParameter& dp,
                                double b, const SummationControl& ctrl) {
    ctrl.validate();
    if (!(b > 0.0)) {
        throw std::domain_error("jackson_integral: b must be > 0");
    }
    double tail = 0.0;
    bool reached = false;
    const int n_terms = finite_term_count(dp, b, ctrl, &tail, &reached);

    IntegralResult res;
    const double w = dp.q_inv() - dp.q();
    const double qsq = dp.q() * dp.q();
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(n_terms));
    double qpow = dp.q();  // q^(2n+1)
    for (int n = 0; n < n_terms; ++n) {
        const double x = b * qpow;
        const double fv = f(x);
        check_guard(fv, x, ctrl, res, "jackson_integral");
        terms.push_back(b * w * qpow * fv);
        qpow *= qsq;
    }
    if (!reached) {
        if (ctrl.on_divergence == SummationControl::OnDivergence::error) {
            throw DivergenceError("jackson_integral: tail bound " + std::to_string(tail) +
                                  " did not reach tolerance within max_terms");
        }
        res.partial = true;
    }
    res.value = fold_reversed(terms);
    res.terms_used = n_terms;
    res.tail_estimate = tail;
    res.converged = reached && !res.guard_tripped;
    return res;
}

IntegralResult jackson_integral_interval(const Evaluator& f, const DeformationParameter& dp,
                                         double a, double b, const SummationControl& ctrl) {
    if (!(a > 0.0)) {
        throw std::domain_error("jackson_integral_interval: a must be > 0 "
                                "(negative limits route through the two-sided form)");
    }
    if (b < a) {
        throw std::domain_error("jackson_integral_interval: b must be >= a");
    }
    const IntegralResult upper = jackson_integral(f, dp, b, ctrl);
    const IntegralResult lower = jackson_integral(f, dp, a, ctrl);
    IntegralResult res;
    res.value = upper.value - lower.value;
    res.terms_used = upper.terms_used + lower.terms_used;
    res.tail_estimate = upper.tail_estimate + lower.tail_estimate;
    res.converged = upper.converged && lower.converged;
    res.partial = upper.partial || lower.partial;
    res.guard_tripped = upper.guard_tripped || lower.guard_tripped;
    return res;
}

IntegralResult jackson_integral_improper(const Evaluator& f, const DeformationParameter& dp,
                                         const SummationControl& ctrl) {
    ctrl.validate();
    const TwoTailSum s = improper_sum(f, dp, ctrl, "jackson_integral_improper");
    IntegralResult res = s.flags;
    res.value = (dp.q_inv() - dp.q()) * s.sum;
    res.terms_used = s.terms_used;
    res.tail_estimate = s.tail_estimate;
    res.converged = s.converged;
    res.diagnostic = s.diagnostic;
    return res;
}

IntegralResult jackson_integral_real_line(const Evaluator& f, const DeformationParameter& dp,
                                          const SummationControl& ctrl) {
    ctrl.validate();
    const Evaluator mirrored = [&f](double x) { return f(-x); };
    const TwoTailSum neg = improper_sum(mirrored, dp, ctrl, "jackson_integral_real_line (x<0)");
    const TwoTailSum pos = improper_sum(f, dp, ctrl, "jackson_integral_real_line (x>0)");
    IntegralResult res;
    res.value = (dp.q_inv() - dp.q()) * (neg.sum + pos.sum);
    res.terms_used = neg.terms_used + pos.terms_used;
    res.tail_estimate = neg.tail_estimate + pos.tail_estimate;
    res.converged = neg.converged && pos.converged;
    res.partial = neg.flags.partial || pos.flags.partial;
    res.guard_tripped = neg.flags.guard_tripped || pos.flags.guard_tripped;
    if (!neg.diagnostic.empty() || !pos.diagnostic.empty()) {
        res.diagnostic = (neg.diagnostic.empty() ? "" : "negative side: " + neg.diagnostic) +
                         (neg.diagnostic.empty() || pos.diagnostic.empty() ? "" : "; ") +
                         (pos.diagnostic.empty() ? "" : "positive side: " + pos.diagnostic);
    }
    return res;
}

double antiderivative_at(const Evaluator& f, const DeformationParameter& dp,
                         double x, double constant, const SummationControl& ctrl) {
    if (!(x > 0.0)) {
        throw std::domain_error("antiderivative_at: x must be > 0");
    }
    return jackson_integral(f, dp, x, ctrl).value + constant;
}

bool equivalent_on_lattice(const Evaluator& f, const Evaluator& g,
                           const DeformationParameter& dp, int depth, double tol) {
    if (depth < 1) {
        throw std::domain_error("equivalent_on_lattice: depth must be >= 1");
    }
    for (int n = -depth; n <= depth; ++n) {
        const double p = std::pow(dp.q(), 2 * n + 1);
        if (std::abs(f(p) - g(p)) > tol) return false;
        if (std::abs(f(-p) - g(-p)) > tol) return false;
    }
    return true;
}

CounterexamplePair monotonicity_counterexample(const DeformationParameter& dp,
                                               double a, double b) {
    if (!(0.0 < a && a < b)) {
        throw std::domain_error("monotonicity_counterexample: need 0 < a < b");
    }
    const double q = dp.q();
    if (!(a / b > q * q)) {
        throw std::domain_error("monotonicity_counterexample: need a/b > q^2");
    }

    // First b-series sample strictly below a. The precondition guarantees the
    // second sample b q^3 < (a/b) b q = ... < a, so this stops at m <= 1.
    int m = 0;
    double p = b * q;
    while (!(p < a)) {
        p *= q * q;
        ++m;
    }

    // Plateau radius: clear of every other sample of both base-point series,
    // strictly below a, strictly above 0.
    double nearest = std::min(p / (q * q) - p, p - p * q * q);  // b-series neighbours
    double ap = a * q;                                          // a-series: a q, a q^3, ...
    while (true) {
        nearest = std::min(nearest, std::abs(ap - p));
        if (ap <= p * q * q) break;  // further points are even smaller
        ap *= q * q;
    }
    const double radius = std::min({nearest / 3.0, (a - p) / 2.0, p / 2.0});

    // g's integral over [a,b] collapses to the single atom at p, whose weight
    // is (1/q - q) * p; pick the plateau height so it beats int_f = b - a by
    // a unit margin.
    const double height = (b - a + 1.0) / ((dp.q_inv() - q) * p);

    const Evaluator f = [](double) { return 1.0; };
    const Evaluator g = [p, radius, height](double x) {
        return (x >= p - radius && x <= p + radius) ? height : 0.0;
    };

    SummationControl ctrl;
    ctrl.magnitude_bound = height + 1.0;
    // the truncation must run at least past sample index m or the quadrature
    // would never see the plateau
    const double reach = b * ctrl.magnitude_bound * std::pow(q, 2 * (m + 1));
    ctrl.tol = std::min(1e-12, std::max(0.5 * reach, std::numeric_limits<double>::min()));
    const double int_f = jackson_integral_interval(f, dp, a, b, ctrl).value;
    const double int_g = jackson_integral_interval(g, dp, a, b, ctrl).value;

    return {f, g, int_f, int_g, p, radius, height};
}

}  // namespace qcalc
