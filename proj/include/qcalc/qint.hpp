#pragma once

#include <string>
#include <vector>

#include "qcalc/evaluator.hpp"
#include "qcalc/qcore.hpp"

namespace qcalc {

// ---------------------------------------------------------------------------
// The geometric sample lattice
// ---------------------------------------------------------------------------
//
// Every Jackson integral in this module is a weighted sum of point evaluations
// over the countable set {s * scale * q^(2n+1)}, n in Z, s in {+1,-1}. The
// points accumulate at 0 as n grows and escape to infinity as n decreases;
// 0 itself is never a sample point and integrands are never evaluated there.

enum class LatticeSign { positive, negative, both };

struct LatticePoint {
    int n;           // lattice index
    int sign;        // +1 or -1
    double location; // sign * scale * q^(2n+1)
};

struct QLattice {
    double q;
    double scale;
    LatticeSign sign;
    int n_lo;
    int n_hi;
    std::vector<LatticePoint> points;  // ascending n, positive before negative
};

/// Enumerates the lattice points for n in [n_lo, n_hi] and the requested
/// signs, in deterministic order. scale must be positive; scale = 0 would
/// collapse every point onto the origin and is rejected.
QLattice lattice_points(const DeformationParameter& dp, double scale,
                        int n_lo, int n_hi, LatticeSign sign);

// ---------------------------------------------------------------------------
// Point measures
// ---------------------------------------------------------------------------

/// Finitely many weighted atoms. The finite Jackson integral over [0, b] is
/// the point measure with atoms (b q^(2n+1), (1/q - q) b q^(2n+1)); all its
/// weights are positive and their total mass is b up to the truncated tail.
struct PointMeasure {
    struct Atom {
        double location;
        double weight;
    };
    std::vector<Atom> atoms;
};

/// Point evaluation f(x0) -- the single-atom delta functional.
double delta_eval(const Evaluator& f, double x0);

/// Linear extension of delta_eval over the atoms: sum of weight * f(location).
double integrate(const PointMeasure& mu, const Evaluator& f);

/// The atoms of the truncated [0, b] Jackson integral, with the truncation
/// depth chosen by the same tail rule jackson_integral uses.
PointMeasure finite_jackson_measure(const DeformationParameter& dp, double b,
                                    const SummationControl& ctrl);

// ---------------------------------------------------------------------------
// Jackson integrals
// ---------------------------------------------------------------------------

struct IntegralResult {
    double value = 0.0;
    int terms_used = 0;
    double tail_estimate = 0.0;
    bool converged = false;
    bool partial = false;        // truncated before the tail bound was met
    bool guard_tripped = false;  // some |f(sample)| exceeded magnitude_bound
    std::string diagnostic;      // names the failing tail, when any
};

/// Jackson integral over [0, b]:
///   b (1/q - q) sum_{n>=0} q^(2n+1) f(q^(2n+1) b).
///
/// The tail after N terms is bounded by b * M * q^(2N) with M the configured
/// magnitude bound; summation stops once that bound drops below ctrl.tol.
/// Terms are accumulated smallest magnitude first in a fixed order, so
/// repeated evaluation is bit-identical. The truncation depth depends only on
/// (b, q, M, tol), never on f.
IntegralResult jackson_integral(const Evaluator& f, const DeformationParameter& dp,
                                double b, const SummationControl& ctrl);

/// Integral over [a, b] as the difference of the two base-point integrals.
/// Requires 0 < a <= b. Sample points of either base integral may lie
/// outside [a, b]; see monotonicity_counterexample for the consequence.
IntegralResult jackson_integral_interval(const Evaluator& f, const DeformationParameter& dp,
                                         double a, double b, const SummationControl& ctrl);

/// Improper integral over (0, inf): the lattice runs over all n in Z, i.e.
/// both the small points q, q^3, ... and the large points 1/q, 1/q^3, ...
/// The small-point tail truncates under the geometric majorant; the
/// large-point tail has no a-priori bound and truncates empirically, once the
/// weighted terms decay geometrically and the projected remainder is below
/// tolerance. A non-decaying large tail is reported as divergence naming the
/// tail.
IntegralResult jackson_integral_improper(const Evaluator& f, const DeformationParameter& dp,
                                         const SummationControl& ctrl);

/// Two-sided integral over the full real line:
///   (1/q - q) ( sum_n q^(2n+1) f(-q^(2n+1)) + sum_n q^(2n+1) f(q^(2n+1)) ),
/// weights positive on both sides. Each side is truncated independently.
IntegralResult jackson_integral_real_line(const Evaluator& f, const DeformationParameter& dp,
                                          const SummationControl& ctrl);

/// Antiderivative value (1/q - q) sum_{n>=0} q^(2n+1) x f(q^(2n+1) x) + constant.
double antiderivative_at(const Evaluator& f, const DeformationParameter& dp,
                         double x, double constant, const SummationControl& ctrl);

// ---------------------------------------------------------------------------
// Lattice equivalence and the monotonicity counterexample
// ---------------------------------------------------------------------------

/// True iff |f - g| <= tol at every two-sided lattice point with |n| <= depth
/// (scale 1). Functions agreeing there are indistinguishable to every
/// integral in this module, no matter how much they differ off-lattice.
bool equivalent_on_lattice(const Evaluator& f, const Evaluator& g,
                           const DeformationParameter& dp, int depth, double tol);

/// A concrete failure of integral monotonicity: f > g everywhere on [a, b]
/// yet the interval integral of g exceeds that of f. g carries a tall plateau
/// around one b-series sample point below a, where the b-base integral
/// (and only it) looks.
struct CounterexamplePair {
    Evaluator f;  // identically 1
    Evaluator g;  // 0 on [a, b], tall plateau below a
    double int_f; // interval integral of f over [a, b]
    double int_g; // interval integral of g over [a, b]
    double plateau_center;
    double plateau_halfwidth;
    double plateau_height;
};

/// Requires 0 < a < b and a/b > q^2 (which puts one of the first two b-series
/// sample points strictly below a). Throws std::domain_error otherwise.
CounterexamplePair monotonicity_counterexample(const DeformationParameter& dp,
                                               double a, double b);

}  // namespace qcalc
