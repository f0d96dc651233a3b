#pragma once

// Brute-force reference computations for the tests. Everything here is
// deliberately written from the defining formulas, independent of the
// library code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace oracles {

inline double bracket(int n, double q) {
    return (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0 / q);
}

inline double factorial(int n, double q) {
    double p = 1.0;
    for (int k = 1; k <= n; ++k) p *= bracket(k, q);
    return p;
}

// Truncated Jackson sum over [0, b], summed smallest term first.
template <typename F>
double finite_sum(F&& f, double q, double b, int n_terms) {
    double s = 0.0;
    for (int n = n_terms - 1; n >= 0; --n) {
        const double p = std::pow(q, 2 * n + 1);
        s += p * f(b * p);
    }
    return b * (1.0 / q - q) * s;
}

// Two-sided-index sum (1/q - q) sum_{n in [n_lo, n_hi]} q^(2n+1) f(q^(2n+1)).
template <typename F>
double two_tail_sum(F&& f, double q, int n_lo, int n_hi) {
    double s = 0.0;
    for (int n = n_hi; n >= n_lo; --n) {
        const double p = std::pow(q, 2 * n + 1);
        s += p * f(p);
    }
    return (1.0 / q - q) * s;
}

// Deterministic generator for property-style tests; fixed seeds keep runs
// reproducible.
struct Lcg {
    std::uint64_t state;

    explicit Lcg(std::uint64_t seed) : state(seed) {}

    double uniform(double lo, double hi) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const double u = static_cast<double>(state >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(uniform(0.0, static_cast<double>(hi - lo + 1)));
    }
};

inline bool close_rel(double a, double b, double rel) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= rel * scale;
}

}  // namespace oracles
