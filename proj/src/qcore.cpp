#include "qcalc/qcore.hpp"

#include <cmath>
#include <stdexcept>

namespace qcalc {

namespace {

// Above this q the ratio form loses too many digits to 0/0 cancellation and
// the n-term sum takes over.
constexpr double kNearOneThreshold = 0.9999;

}  // namespace

DeformationParameter::DeformationParameter(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw std::domain_error("q must lie in (0,1)");
    }
    q_ = q;
    q_inv_ = 1.0 / q;
    span_ = q_ - q_inv_;
}

void SummationControl::validate() const {
    if (!(tol > 0.0)) {
        throw std::domain_error("SummationControl: tol must be > 0");
    }
    if (max_terms < 1) {
        throw std::domain_error("SummationControl: max_terms must be >= 1");
    }
    if (!(magnitude_bound > 0.0)) {
        throw std::domain_error("SummationControl: magnitude_bound must be > 0");
    }
}

namespace detail {

double q_bracket_ratio_form(int n, double q) {
    const double q_inv = 1.0 / q;
    return (std::pow(q, n) - std::pow(q_inv, n)) / (q - q_inv);
}

double q_bracket_sum_form(int n, double q) {
    // [n]_q = q^(n-1) + q^(n-3) + ... + q^(1-n), n terms, stable as q -> 1.
    double term = std::pow(q, n - 1);
    const double ratio = 1.0 / (q * q);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        sum += term;
        term *= ratio;
    }
    return sum;
}

}  // namespace detail

double q_bracket(int n, const DeformationParameter& dp) {
    if (n < 0) {
        throw std::domain_error("q_bracket: n must be >= 0");
    }
    if (n == 0) return 0.0;
    if (n == 1) return 1.0;
    if (dp.q() > kNearOneThreshold) {
        return detail::q_bracket_sum_form(n, dp.q());
    }
    return detail::q_bracket_ratio_form(n, dp.q());
}

double q_factorial(int n, const DeformationParameter& dp) {
    if (n < 0) {
        throw std::domain_error("q_factorial: n must be >= 0");
    }
    double product = 1.0;  // empty product for n = 0
    for (int k = 1; k <= n; ++k) {
        product *= q_bracket(k, dp);
        if (std::isinf(product)) {
            throw std::range_error("q_factorial: overflow at n = " + std::to_string(k));
        }
    }
    return product;
}

double q_bracket_classical_gap(int n, const DeformationParameter& dp) {
    return std::abs(q_bracket(n, dp) - static_cast<double>(n));
}

}  // namespace qcalc
