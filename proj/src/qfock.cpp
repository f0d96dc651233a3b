#include "qcalc/qfock.hpp"

#include <cmath>
#include <stdexcept>

#include "qcalc/qderiv.hpp"

namespace qcalc {

FockState::FockState(std::vector<double> coeffs, const DeformationParameter& dp)
    : coeffs_(std::move(coeffs)), dp_(dp) {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

FockState FockState::basis(int n, const DeformationParameter& dp) {
    if (n < 0) {
        throw std::domain_error("FockState::basis: n must be >= 0");
    }
    std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
    c.back() = 1.0;
    return {std::move(c), dp};
}

double FockState::coeff(int n) const {
    if (n < 0 || n >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<std::size_t>(n)];
}

bool FockState::is_zero() const { return coeffs_.empty(); }

FockState apply_lowering(const FockState& s) {
    const auto& c = s.coeffs();
    if (c.size() <= 1) return {{}, s.dp()};
    std::vector<double> out(c.size() - 1, 0.0);
    for (std::size_t n = 1; n < c.size(); ++n) {
        out[n - 1] = c[n] * std::sqrt(q_bracket(static_cast<int>(n), s.dp()));
    }
    return {std::move(out), s.dp()};
}

FockState apply_raising(const FockState& s) {
    const auto& c = s.coeffs();
    if (c.empty()) return s;
    std::vector<double> out(c.size() + 1, 0.0);
    for (std::size_t n = 0; n < c.size(); ++n) {
        out[n + 1] = c[n] * std::sqrt(q_bracket(static_cast<int>(n) + 1, s.dp()));
    }
    return {std::move(out), s.dp()};
}

FockState apply_q_number(const FockState& s) {
    std::vector<double> out = s.coeffs();
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] *= q_bracket(static_cast<int>(n), s.dp());
    }
    return {std::move(out), s.dp()};
}

double vacuum_residual(const Evaluator& candidate, const DeformationParameter& dp,
                       std::span<const double> samples) {
    double worst = 0.0;
    for (double x : samples) {
        worst = std::max(worst, std::abs(jackson_derivative(candidate, dp, x)));
    }
    return worst;
}

double vacuum_check(const DeformationParameter& dp, std::span<const double> samples) {
    return vacuum_residual([](double) { return 1.0; }, dp, samples);
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix out(a.dim);
    for (int i = 0; i < a.dim; ++i) {
        for (int k = 0; k < a.dim; ++k) {
            const double aik = a.at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < a.dim; ++j) {
                out.at(i, j) += aik * b.at(k, j);
            }
        }
    }
    return out;
}

SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix out(a.dim);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = a.data[i] - b.data[i];
    return out;
}

SquareMatrix SquareMatrix::scaled(double s) const {
    SquareMatrix out(dim);
    for (std::size_t i = 0; i < data.size(); ++i) out.data[i] = data[i] * s;
    return out;
}

SquareMatrix SquareMatrix::transposed() const {
    SquareMatrix out(dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) out.at(j, i) = at(i, j);
    }
    return out;
}

TruncatedOperators build_truncated(const DeformationParameter& dp, int dim) {
    if (dim < 2) {
        throw std::domain_error("build_truncated: dim must be >= 2");
    }
    SquareMatrix lowering(dim), number(dim), q_number(dim);
    for (int n = 0; n + 1 < dim; ++n) {
        lowering.at(n, n + 1) = std::sqrt(q_bracket(n + 1, dp));
    }
    for (int n = 0; n < dim; ++n) {
        number.at(n, n) = static_cast<double>(n);
        q_number.at(n, n) = q_bracket(n, dp);
    }
    SquareMatrix raising = lowering.transposed();
    return {dp, dim, std::move(lowering), std::move(raising), std::move(number),
            std::move(q_number)};
}

AlgebraResiduals algebra_residuals(const TruncatedOperators& ops) {
    const int dim = ops.dim;
    const double q = ops.dp.q();

    SquareMatrix q_pow_neg_n(dim);  // diag(q^-n)
    for (int n = 0; n < dim; ++n) {
        q_pow_neg_n.at(n, n) = std::pow(q, -n);
    }

    // Entries grow like q^(-n) and overwhelm any absolute scale (one ulp of
    // [39]_0.3 is ~1e4), so each defect entry is normalized by the largest
    // term feeding it, floored at 1. The normalized norm is 0 up to rounding
    // for the built operators at any dim.
    const auto block_max = [dim](const SquareMatrix& lhs1, double sign2,
                                 const SquareMatrix& lhs2, double sign3,
                                 const SquareMatrix& lhs3) {
        double worst = 0.0;
        for (int i = 0; i + 1 < dim; ++i) {
            for (int j = 0; j + 1 < dim; ++j) {
                const double t1 = lhs1.at(i, j);
                const double t2 = sign2 * lhs2.at(i, j);
                const double t3 = sign3 * lhs3.at(i, j);
                const double scale =
                    std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3)});
                worst = std::max(worst, std::abs(t1 + t2 + t3) / scale);
            }
        }
        return worst;
    };

    const double r1 = block_max(ops.lowering * ops.raising, -1.0,
                                (ops.raising * ops.lowering).scaled(q), -1.0, q_pow_neg_n);
    const double r2 = block_max(ops.number * ops.raising, -1.0,
                                ops.raising * ops.number, -1.0, ops.raising);
    const double r3 = block_max(ops.number * ops.lowering, -1.0,
                                ops.lowering * ops.number, +1.0, ops.lowering);
    return {r1, r2, r3};
}

}  // namespace qcalc
