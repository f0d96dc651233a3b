#pragma once

#include <span>
#include <vector>

#include "qcalc/evaluator.hpp"
#include "qcalc/qcore.hpp"

namespace qcalc {

/// Formal state in the ladder basis psi_n = x^n / sqrt([n]_q!) applied to the
/// constant vacuum psi_0 = 1. coeffs()[n] multiplies psi_n. No inner product
/// is defined; states are plain coefficient vectors. Immutable.
class FockState {
public:
    FockState(std::vector<double> coeffs, const DeformationParameter& dp);

    static FockState basis(int n, const DeformationParameter& dp);

    const std::vector<double>& coeffs() const { return coeffs_; }
    const DeformationParameter& dp() const { return dp_; }
    double coeff(int n) const;
    bool is_zero() const;

private:
    std::vector<double> coeffs_;
    DeformationParameter dp_;
};

/// psi_n -> sqrt([n]_q) psi_(n-1); the vacuum is annihilated.
FockState apply_lowering(const FockState& s);

/// psi_n -> sqrt([n+1]_q) psi_(n+1).
FockState apply_raising(const FockState& s);

/// psi_n -> [n]_q psi_n, the multiplication-then-derivative combination.
/// Coefficient-wise it equals apply_raising after apply_lowering.
FockState apply_q_number(const FockState& s);

/// max over samples of |D psi_0| with the constant vacuum psi_0 = 1;
/// identically zero since constants agree at qx and x/q. Samples must be
/// nonzero.
double vacuum_check(const DeformationParameter& dp, std::span<const double> samples);

/// Same residual for an arbitrary vacuum candidate; nonzero candidates that
/// are not constant on q^2-orbits fail.
double vacuum_residual(const Evaluator& candidate, const DeformationParameter& dp,
                       std::span<const double> samples);

/// Minimal dense square matrix, row major.
struct SquareMatrix {
    int dim = 0;
    std::vector<double> data;

    explicit SquareMatrix(int d) : dim(d), data(static_cast<std::size_t>(d) * d, 0.0) {}
    double& at(int i, int j) { return data[static_cast<std::size_t>(i) * dim + j]; }
    double at(int i, int j) const { return data[static_cast<std::size_t>(i) * dim + j]; }

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
    friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b);
    SquareMatrix scaled(double s) const;
    SquareMatrix transposed() const;
};

/// Finite matrix truncation of the ladder algebra on the first `dim` basis
/// states. `lowering` carries sqrt([n]_q) on the first superdiagonal,
/// `raising` is its transpose, `number` = diag(0..dim-1) and `q_number` =
/// diag([0]_q..[dim-1]_q). The two diagonals agree only at n = 0, 1; their
/// difference is the fractional-quanta discrepancy of the deformed number
/// operator.
struct TruncatedOperators {
    DeformationParameter dp;
    int dim;
    SquareMatrix lowering;
    SquareMatrix raising;
    SquareMatrix number;
    SquareMatrix q_number;
};

/// Requires dim >= 2.
TruncatedOperators build_truncated(const DeformationParameter& dp, int dim);

/// Defect norms of the three algebra relations on the truncation:
///   r1: a a† - q a†a - q^(-N)
///   r2: [N, a†] - a†
///   r3: [N, a] + a
/// Each is the max over the principal (dim-1)x(dim-1) block (the last basis
/// vector is corrupted by truncation and excluded) of the defect entry
/// divided by the magnitude of the largest term entering it, floored at 1.
/// The normalization keeps the norm meaningful where entries grow like
/// q^(-n) past any absolute scale. All three vanish up to rounding for the
/// built operators.
struct AlgebraResiduals {
    double r1;
    double r2;
    double r3;
};

AlgebraResiduals algebra_residuals(const TruncatedOperators& ops);

}  // namespace qcalc
