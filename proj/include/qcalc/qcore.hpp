#pragma once

#include <string>

namespace qcalc {

/// Validated deformation parameter q with cached derived quantities.
///
/// q must lie strictly inside (0, 1). Values q >= 1 are rejected rather than
/// mapped to 1/q; the symmetric bracket is invariant under q -> 1/q, so
/// nothing is lost by the restriction. Immutable after construction and safe
/// to share between threads.
class DeformationParameter {
public:
    explicit DeformationParameter(double q);

    double q() const { return q_; }
    double q_inv() const { return q_inv_; }
    /// q - 1/q, negative for q in (0, 1).
    double span() const { return span_; }

private:
    double q_;
    double q_inv_;
    double span_;
};

/// One row of a bracket table: the symmetric q-integer [n]_q at index n.
struct QBracketValue {
    int n;
    double value;
};

/// Truncation policy shared by every series and lattice sum.
struct SummationControl {
    enum class OnDivergence { error, return_partial };

    double tol = 1e-12;             // absolute tail bound for truncation
    int max_terms = 10000;
    double magnitude_bound = 1e6;   // assumed bound M with |f| <= M on sample points
    OnDivergence on_divergence = OnDivergence::error;

    void validate() const;          // throws std::domain_error on bad fields
};

/// Symmetric q-integer [n]_q = (q^n - q^-n) / (q - q^-1).
///
/// [0]_q = 0 and [1]_q = 1 are returned exactly. For q extremely close to 1
/// the equivalent sum q^(n-1) + q^(n-3) + ... + q^(1-n) is used instead of
/// the ratio, which suffers 0/0 cancellation there.
double q_bracket(int n, const DeformationParameter& dp);

/// [n]_q! = [n]_q [n-1]_q ... [1]_q, with the empty product [0]_q! = 1.
/// Throws std::range_error naming the first n at which the product overflows.
double q_factorial(int n, const DeformationParameter& dp);

/// |[n]_q - n|, the departure of the q-integer from the classical integer.
/// Tends to 0 as q -> 1 for fixed n.
double q_bracket_classical_gap(int n, const DeformationParameter& dp);

namespace detail {

// Both evaluation routes for [n]_q, exposed so tests can compare them in the
// regime where both are stable.
double q_bracket_ratio_form(int n, double q);
double q_bracket_sum_form(int n, double q);

}  // namespace detail

}  // namespace qcalc
