#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace qcalc {

/// A sampled real function. Callers must supply deterministic functions
/// (same input -> same output) that are safe to invoke concurrently; every
/// routine in this library may sample an Evaluator from several points in
/// arbitrary order and assumes repeat calls agree bitwise.
using Evaluator = std::function<double(double)>;

/// Finite coefficient vector, coeffs[k] multiplying x^k. Trailing zero
/// coefficients are trimmed so degree() is the index of the last nonzero
/// coefficient, or -1 for the zero polynomial.
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        trim();
    }

    static Polynomial monomial(int degree, double coeff = 1.0) {
        std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
        c.back() = coeff;
        return Polynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<double>& coeffs() const { return coeffs_; }

    double coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
        return coeffs_[static_cast<std::size_t>(k)];
    }

    double operator()(double x) const {
        double acc = 0.0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            acc = acc * x + coeffs_[i];
        }
        return acc;
    }

    /// Multiplication by x: coefficient of x^k moves to x^(k+1).
    Polynomial times_x() const {
        if (is_zero()) return {};
        std::vector<double> c(coeffs_.size() + 1, 0.0);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i + 1] = coeffs_[i];
        return Polynomial(std::move(c));
    }

    Polynomial scaled(double a) const {
        std::vector<double> c = coeffs_;
        for (double& v : c) v *= a;
        return Polynomial(std::move(c));
    }

    friend Polynomial operator+(const Polynomial& lhs, const Polynomial& rhs) {
        std::vector<double> c(std::max(lhs.coeffs_.size(), rhs.coeffs_.size()), 0.0);
        for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) c[i] += lhs.coeffs_[i];
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) c[i] += rhs.coeffs_[i];
        return Polynomial(std::move(c));
    }

    friend Polynomial operator-(const Polynomial& lhs, const Polynomial& rhs) {
        return lhs + rhs.scaled(-1.0);
    }

    friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
        if (lhs.is_zero() || rhs.is_zero()) return {};
        std::vector<double> c(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
        for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
                c[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
            }
        }
        return Polynomial(std::move(c));
    }

    Evaluator to_evaluator() const {
        return [p = *this](double x) { return p(x); };
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
    }

    std::vector<double> coeffs_;
};

}  // namespace qcalc
