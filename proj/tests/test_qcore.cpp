#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "qcalc/qcore.hpp"

using namespace qcalc;

TEST_CASE("deformation parameter validates its range") {
    CHECK_THROWS_AS(DeformationParameter(1.0), std::domain_error);
    CHECK_THROWS_AS(DeformationParameter(0.0), std::domain_error);
    CHECK_THROWS_AS(DeformationParameter(-0.5), std::domain_error);
    CHECK_THROWS_AS(DeformationParameter(1.5), std::domain_error);
    CHECK_THROWS_WITH(DeformationParameter(1.0), "q must lie in (0,1)");

    const DeformationParameter dp(0.5);
    CHECK(dp.q() == 0.5);
    CHECK(dp.q_inv() == 2.0);
    CHECK(dp.span() == -1.5);
    CHECK(dp.q_inv() * dp.q() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("summation control validates its fields") {
    SummationControl ctrl;
    CHECK_NOTHROW(ctrl.validate());
    ctrl.tol = 0.0;
    CHECK_THROWS_AS(ctrl.validate(), std::domain_error);
    ctrl.tol = 1e-12;
    ctrl.max_terms = 0;
    CHECK_THROWS_AS(ctrl.validate(), std::domain_error);
    ctrl.max_terms = 10;
    ctrl.magnitude_bound = -1.0;
    CHECK_THROWS_AS(ctrl.validate(), std::domain_error);
}

TEST_CASE("bracket base values") {
    const DeformationParameter dp(0.5);
    CHECK(q_bracket(0, dp) == 0.0);
    CHECK(q_bracket(1, dp) == 1.0);
    CHECK(q_bracket(2, dp) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(q_bracket(3, dp) == doctest::Approx(5.25).epsilon(1e-14));
    CHECK(q_bracket(2, dp) == doctest::Approx(oracles::bracket(2, 0.5)).epsilon(1e-14));
    CHECK(q_bracket(3, dp) == doctest::Approx(oracles::bracket(3, 0.5)).epsilon(1e-14));
    CHECK_THROWS_AS(q_bracket(-1, dp), std::domain_error);
}

TEST_CASE("factorials") {
    const DeformationParameter dp(0.5);
    CHECK(q_factorial(0, dp) == 1.0);
    CHECK(q_factorial(1, dp) == 1.0);
    CHECK(q_factorial(3, dp) == doctest::Approx(13.125).epsilon(1e-14));
    CHECK(q_factorial(3, dp) == doctest::Approx(oracles::factorial(3, 0.5)).epsilon(1e-14));
    CHECK_THROWS_AS(q_factorial(-2, dp), std::domain_error);

    // the running product blows through binary64 well before n = 60 here
    const DeformationParameter tiny_q(0.01);
    CHECK_THROWS_AS(q_factorial(60, tiny_q), std::range_error);
    try {
        q_factorial(60, tiny_q);
    } catch (const std::range_error& e) {
        CHECK(std::string(e.what()).find("overflow at n = ") != std::string::npos);
    }
}

TEST_CASE("classical gap values") {
    CHECK(q_bracket_classical_gap(1, DeformationParameter(0.5)) == 0.0);
    CHECK(q_bracket_classical_gap(2, DeformationParameter(0.5)) ==
          doctest::Approx(0.5).epsilon(1e-14));
    // [2]_q - 2 = q + 1/q - 2 = (1-q)^2 / q
    const double expected = (1.0 - 0.99) * (1.0 - 0.99) / 0.99;
    const double gap = q_bracket_classical_gap(2, DeformationParameter(0.99));
    CHECK(gap == doctest::Approx(expected).epsilon(1e-12));
    CHECK(gap > 1e-4);
    CHECK(gap < 1e-3);
}

TEST_CASE("bracket is symmetric under q -> 1/q in the defining formula") {
    for (double q : {0.3, 0.5, 0.9}) {
        const DeformationParameter dp(q);
        const double qi = 1.0 / q;
        for (int n = 0; n <= 50; ++n) {
            const double substituted =
                n == 0 ? 0.0 : (std::pow(qi, n) - std::pow(qi, -n)) / (qi - 1.0 / qi);
            CHECK(oracles::close_rel(q_bracket(n, dp), substituted, 1e-12));
        }
    }
}

TEST_CASE("recurrence [n+1] - q [n] = q^-n") {
    for (double q : {0.3, 0.5, 0.9}) {
        const DeformationParameter dp(q);
        for (int n = 0; n <= 20; ++n) {
            const double lhs = q_bracket(n + 1, dp) - q * q_bracket(n, dp);
            CHECK(std::abs(lhs - std::pow(q, -n)) <= 1e-12 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("classical limit: gap shrinks toward q = 1") {
    CHECK(q_bracket_classical_gap(0, DeformationParameter(0.999)) == 0.0);
    for (int n = 1; n <= 10; ++n) {
        const double g1 = q_bracket_classical_gap(n, DeformationParameter(0.9));
        const double g2 = q_bracket_classical_gap(n, DeformationParameter(0.99));
        const double g3 = q_bracket_classical_gap(n, DeformationParameter(0.999));
        CHECK(g1 >= g2);
        CHECK(g2 >= g3);
        CHECK(g3 <= 1e-2 * n);
    }
}

TEST_CASE("deformed integers differ from classical ones") {
    const DeformationParameter dp(0.5);
    for (int n = 2; n <= 10; ++n) {
        CHECK(q_bracket_classical_gap(n, dp) > 0.0);
    }
}

TEST_CASE("ratio and sum forms agree where both are stable") {
    for (double q : {0.99, 0.999, 0.99995}) {
        for (int n = 1; n <= 30; ++n) {
            const double ratio = detail::q_bracket_ratio_form(n, q);
            const double sum = detail::q_bracket_sum_form(n, q);
            CHECK(oracles::close_rel(ratio, sum, 1e-10));
        }
    }
    // past the cancellation threshold the sum form is the one in use
    const DeformationParameter dp(0.99995);
    CHECK(q_bracket(5, dp) == detail::q_bracket_sum_form(5, 0.99995));
}
