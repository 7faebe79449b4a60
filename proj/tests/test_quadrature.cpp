#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "berezin/quadrature.hpp"

using namespace berezin;

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
    for (int n : {1, 2, 5, 16, 40}) {
        const GaussLegendre rule(n);
        double wsum = 0.0;
        for (double w : rule.weights()) wsum += w;
        EXPECT_NEAR(wsum, 2.0, 1e-14);
        for (int deg = 0; deg <= 2 * n - 1; ++deg) {
            double s = 0.0;
            for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights()[i] * std::pow(rule.nodes()[i], deg);
            const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1.0);
            EXPECT_NEAR(s, exact, 1e-13) << n << ' ' << deg;
        }
    }
    EXPECT_THROW(GaussLegendre(0), DomainError);
}

TEST(Integrate, FiniteInterval) {
    const QuadratureSpec q;
    EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, q).value, 2.0, 1e-13);
    EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, -3.0, 3.0, q).value,
                std::sqrt(std::numbers::pi) * std::erf(3.0), 1e-13);
}

TEST(Integrate, RejectsBadSpec) {
    QuadratureSpec q;
    q.panels = 0;
    EXPECT_THROW(integrate([](double) { return 1.0; }, 0.0, 1.0, q), DomainError);
    q = {};
    q.tol = -1.0;
    EXPECT_THROW(integrate_semi_infinite([](double) { return 1.0; }, q), DomainError);
}

TEST(Integrate, SemiInfiniteGrowsCutoff) {
    QuadratureSpec q;
    q.truncation_T = 2.0;
    q.panels = 4;
    const auto e = integrate_semi_infinite([](double x) { return std::exp(-x); }, q);
    EXPECT_NEAR(e.value, 1.0, 1e-9);
    EXPECT_GT(e.evaluations, 0u);
}

TEST(Integrate, SemiInfiniteReportsNonDecay) {
    const QuadratureSpec q;
    EXPECT_THROW(integrate_semi_infinite([](double) { return 1.0; }, q), ConvergenceError);
}

TEST(Integrate, ComplexIntegrand) {
    const QuadratureSpec q;
    const auto e = integrate([](double x) { return std::polar(1.0, x); }, 0.0, std::numbers::pi, q);
    EXPECT_LT(std::abs(e.value - std::complex<double>(0.0, 2.0)), 1e-13);
}

TEST(Trapezoid, GaussianHalfLine) {
    const auto e = integrate_even_trapezoid([](double x) { return std::exp(-x * x); }, 0.25, 1e-14);
    EXPECT_NEAR(e.value, 0.5 * std::sqrt(std::numbers::pi), 1e-14);
}

TEST(Trapezoid, OscillatingIntegrandDoesNotStopAtZeroCrossing) {
    // the integrand vanishes at x = pi/2 but its envelope is still large there
    const auto e = integrate_even_trapezoid(
        [](double x) { return std::cos(x) / std::cosh(x); }, 0.05, 1e-12, 1.6);
    EXPECT_NEAR(e.value, 0.5 * std::numbers::pi / std::cosh(0.5 * std::numbers::pi), 1e-10);
}

TEST(Trapezoid, ReportsNonDecay) {
    EXPECT_THROW(integrate_even_trapezoid([](double) { return 1.0; }, 0.5, 1e-10, 20.0, 100.0), ConvergenceError);
    EXPECT_THROW(integrate_even_trapezoid([](double) { return 1.0; }, 0.0, 1e-10), DomainError);
}

TEST(TanhSinh, EndpointSingularities) {
    auto inv_sqrt = [](double t, double) { return 1.0 / std::sqrt(t); };
    EXPECT_NEAR(integrate_unit_tanh_sinh(inv_sqrt).value, 2.0, 1e-12);
    auto beta = [](double t, double tc) { return std::pow(t, -0.9) * std::pow(tc, -0.9); };
    const double ref = std::exp(2.0 * std::lgamma(0.1) - std::lgamma(0.2));
    EXPECT_NEAR(integrate_unit_tanh_sinh(beta, 1e-13).value / ref, 1.0, 1e-9);
    EXPECT_THROW(integrate_unit_tanh_sinh(inv_sqrt, 0.0), DomainError);
}

TEST(Quadrature, Deterministic) {
    const QuadratureSpec q;
    auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
    EXPECT_EQ(integrate_semi_infinite(f, q).value, integrate_semi_infinite(f, q).value);
}
