#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "qcalc/errors.hpp"
#include "qcalc/qsolve.hpp"
#include "qcalc/qspecial.hpp"

using namespace qcalc;

namespace {

const SummationControl kCtrl{};

Polynomial random_poly(oracles::Lcg& rng, int max_degree) {
    std::vector<double> c(static_cast<std::size_t>(rng.uniform_int(0, max_degree)) + 1);
    for (double& v : c) v = rng.uniform(-2.0, 2.0);
    return Polynomial(std::move(c));
}

}  // namespace

TEST_CASE("differentiating the integral returns the integrand") {
    const DeformationParameter dp(0.5);
    CHECK(std::abs(ft_derivative_of_integral([](double x) { return x; }, dp, 1.0, kCtrl) -
                   1.0) <= 1e-8);
    CHECK(std::abs(ft_derivative_of_integral([](double) { return 1.0; }, dp, 2.0, kCtrl) -
                   1.0) <= 1e-8);
    CHECK(std::abs(ft_derivative_of_integral([](double x) { return x * x; }, dp, 0.7, kCtrl) -
                   0.49) <= 1e-8);

    // random polynomials and the deformed sine, both at q = 0.9
    const DeformationParameter dq(0.9);
    oracles::Lcg rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Polynomial p = random_poly(rng, 6);
        for (double b : {0.5, 1.0}) {
            const double got = ft_derivative_of_integral(p.to_evaluator(), dq, b, kCtrl);
            CHECK(std::abs(got - p(b)) <= 1e-8);
        }
    }
    const Evaluator qs = [&](double t) { return q_sin(t, dq, kCtrl); };
    for (double b : {0.5, 1.0}) {
        CHECK(std::abs(ft_derivative_of_integral(qs, dq, b, kCtrl) - qs(b)) <= 1e-8);
    }
}

TEST_CASE("integrating the derivative telescopes to the boundary terms") {
    const DeformationParameter dp(0.5);

    const auto linear = ft_integral_of_derivative([](double x) { return x; }, dp, 1.0, kCtrl);
    CHECK(std::abs(linear.value - 1.0) <= 1e-8);
    CHECK(std::abs(linear.lattice_limit) <= 1e-8);

    // constants shift the lattice limit, not the telescoped difference
    const auto shifted =
        ft_integral_of_derivative([](double x) { return x + 5.0; }, dp, 1.0, kCtrl);
    CHECK(std::abs(shifted.value - 1.0) <= 1e-8);
    CHECK(std::abs(shifted.lattice_limit - 5.0) <= 1e-8);

    const auto constant =
        ft_integral_of_derivative([](double) { return 3.0; }, dp, 1.0, kCtrl);
    CHECK(constant.value == 0.0);
    CHECK(constant.lattice_limit == 3.0);

    // an oscillation locked to the lattice has no limit
    const Evaluator no_limit = [](double x) {
        return std::cos(std::numbers::pi * std::log(x) / (2.0 * std::log(0.5)));
    };
    CHECK_THROWS_AS(ft_integral_of_derivative(no_limit, dp, 1.0, kCtrl), DivergenceError);
    CHECK_THROWS_WITH(ft_integral_of_derivative(no_limit, dp, 1.0, kCtrl), "no lattice limit");

    CHECK_THROWS_AS(ft_integral_of_derivative([](double x) { return x; }, dp, -1.0, kCtrl),
                    std::domain_error);
}

TEST_CASE("round trip B on polynomials and the deformed sine") {
    const DeformationParameter dq(0.9);
    oracles::Lcg rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Polynomial p = random_poly(rng, 6);
        for (double b : {0.5, 1.0}) {
            const auto r = ft_integral_of_derivative(p.to_evaluator(), dq, b, kCtrl);
            CHECK(std::abs(r.value - (p(b) - p.coeff(0))) <= 1e-8);
            CHECK(std::abs(r.lattice_limit - p.coeff(0)) <= 1e-8);
        }
    }
    const Evaluator qs = [&](double t) { return q_sin(t, dq, kCtrl); };
    for (double b : {0.5, 1.0}) {
        const auto r = ft_integral_of_derivative(qs, dq, b, kCtrl);
        CHECK(std::abs(r.value - qs(b)) <= 1e-8);
        CHECK(std::abs(r.lattice_limit) <= 1e-8);
    }
}

TEST_CASE("integrand recovery on the lattice") {
    const DeformationParameter dp(0.5);

    const auto flat = recover_integrand([](double b) { return b; }, dp, 1.0, 3);
    REQUIRE(flat.values.size() == 4);
    const double expected_points[] = {0.5, 0.125, 0.03125, 0.0078125};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(flat.values[i].point == doctest::Approx(expected_points[i]).epsilon(1e-14));
        CHECK(flat.values[i].h_value == doctest::Approx(1.0).epsilon(1e-12));
    }

    // F = b^2 / [2]_q recovers h(p) = p
    const double b2 = oracles::bracket(2, 0.5);
    const auto lin = recover_integrand([b2](double b) { return b * b / b2; }, dp, 1.0, 5);
    for (const auto& s : lin.values) {
        CHECK(s.h_value == doctest::Approx(s.point).epsilon(1e-12));
    }

    const auto zero = recover_integrand([](double) { return 0.0; }, dp, 1.0, 4);
    for (const auto& s : zero.values) CHECK(s.h_value == 0.0);

    // points strictly decreasing inside (0, b)
    for (std::size_t i = 1; i < lin.values.size(); ++i) {
        CHECK(lin.values[i].point < lin.values[i - 1].point);
        CHECK(lin.values[i].point > 0.0);
        CHECK(lin.values[i].point < 1.0);
    }

    CHECK_THROWS_AS(recover_integrand([](double b) { return b; }, dp, 1.0, 0),
                    std::domain_error);
}

TEST_CASE("re-integration reproduces the antiderivative on the monomial family") {
    const DeformationParameter half(0.5);
    for (int m = 0; m <= 6; ++m) {
        const double bm = oracles::bracket(m + 1, 0.5);
        const Evaluator F = [m, bm](double b) { return std::pow(b, m + 1) / bm; };
        const auto sol = recover_integrand(F, half, 1.0, 30);
        CHECK(std::abs(reintegrate(sol, half) - F(1.0)) <= 1e-8);
    }
    const DeformationParameter nine(0.9);
    for (int m = 0; m <= 6; ++m) {
        const double bm = oracles::bracket(m + 1, 0.9);
        const Evaluator F = [m, bm](double b) { return std::pow(b, m + 1) / bm; };
        const auto sol = recover_integrand(F, nine, 1.0, 110);
        CHECK(std::abs(reintegrate(sol, nine) - F(1.0)) <= 1e-8);
    }
}

TEST_CASE("uniqueness is decided exactly on the lattice") {
    const DeformationParameter dp(0.5);
    const Evaluator f = [](double x) { return x * x; };

    SUBCASE("identical functions") {
        const auto rep = uniqueness_check(f, f, dp, 1.0, 10, 1e-9, kCtrl);
        CHECK(rep.same_class);
        CHECK(rep.integral_gap == 0.0);
    }

    SUBCASE("an off-lattice bump changes nothing") {
        const Evaluator g = [](double x) {
            return x * x + ((x > 0.2 && x < 0.4) ? 7.0 : 0.0);
        };
        const auto rep = uniqueness_check(f, g, dp, 1.0, 10, 1e-9, kCtrl);
        CHECK(rep.same_class);
        CHECK(rep.integral_gap <= 1e-12);
    }

    SUBCASE("an on-lattice perturbation moves the integral by the atom weight") {
        const double b = 1.0;
        const double q = 0.5;
        for (int n : {0, 1, 2}) {
            const double point = b * std::pow(q, 2 * n + 1);
            const double weight = (1.0 / q - q) * b * std::pow(q, 2 * n + 1);
            for (double eps : {1e-4, 1e-3, 1e-2}) {
                const Evaluator g = [point, eps](double x) {
                    return x * x + (std::abs(x - point) < point * 0.01 ? eps : 0.0);
                };
                const auto rep = uniqueness_check(f, g, dp, b, 10, 1e-9, kCtrl);
                CHECK_FALSE(rep.same_class);
                CHECK(std::abs(rep.integral_gap - weight * eps) <= 1e-10 * (weight * eps));
                // linear in eps: the slope is the atom weight itself
                CHECK(std::abs(rep.integral_gap / eps - weight) <= 1e-10 * weight);
            }
        }
    }
}
