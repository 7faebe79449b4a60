#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "berezin/operator_engine.hpp"
#include "oracles.hpp"

using namespace berezin;
using oracle::rel_err;

namespace {

BallGrid coarse_grid() {
    BallGrid g;
    g.angular = 24;
    return g;
}

QuadratureSpec coarse_spec() {
    QuadratureSpec q;
    q.panels = 12;
    return q;
}

double spherical(const Params& p, double lam, const BallPoint& w) {
    return jacobi_function({p.n - 1.0, 0.0, lam}, std::atanh(std::sqrt(w.norm_sq()))).real();
}

} // namespace

TEST(ApplyRadial, ConstantsAndZero) {
    const QuadratureSpec q;
    for (const Params& p : {Params{1, 2.0, 0}, Params{2, 3.0, 1}, Params{3, 4.0, 1}}) {
        EXPECT_NEAR(apply_berezin_radial(p, {[](double) { return 1.0; }, 0.0}, q).value, 1.0, 1e-8);
        EXPECT_EQ(apply_berezin_radial(p, {[](double) { return 0.0; }, 0.0}, q).value, 0.0);
    }
}

TEST(ApplyRadial, SphericalFunctionsAreEigenvectors) {
    const QuadratureSpec q;
    for (const Params& p : {Params{1, 2.0, 1}, Params{2, 3.0, 0}, Params{2, 4.0, 2}, Params{3, 4.0, 1}}) {
        for (double lam : {0.1, 1.0, 5.0}) {
            const RadialFunction phi{[&](double r) { return jacobi_function({p.n - 1.0, 0.0, lam}, r).real(); }, 0.0};
            EXPECT_LT(rel_err(apply_berezin_radial(p, phi, q).value, multiplier_f(p, lam)), 1e-5);
        }
    }
}

TEST(ApplyRadial, RejectsFastGrowingSymbol) {
    const Params p{1, 2.0, 1};
    // 4(nu - m) - 2n = 2
    const RadialFunction phi{[](double r) { return std::exp(2.5 * r); }, 2.5};
    EXPECT_THROW(apply_berezin_radial(p, phi, QuadratureSpec{}), DomainError);
}

TEST(ApplyAt, RoutesAgreeInTheDisc) {
    const Params p{1, 2.0, 1};
    const QuadratureSpec q;
    std::mt19937_64 gen(51);
    const BallFunction gauss = [](const BallPoint& w) { return std::exp(-w.norm_sq() / w.defect()); };
    const BallFunction sph = [&](const BallPoint& w) { return spherical(p, 1.5, w); };
    for (int i = 0; i < 3; ++i) {
        const BallPoint z = oracle::random_point(1, 0.7, gen);
        for (const BallFunction& f : {gauss, sph}) {
            const RouteResult r = apply_berezin_routes(p, f, z, q);
            EXPECT_LT(r.difference, 1e-5 * std::max(1.0, std::abs(r.pullback)));
        }
        EXPECT_NEAR(apply_berezin_at(p, [](const BallPoint&) { return 1.0; }, z, q).value, 1.0, 1e-6);
    }
}

TEST(ApplyAt, OriginReducesToRadialRoute) {
    const Params p{1, 2.5, 1};
    const QuadratureSpec q;
    const double lam = 0.8;
    const double at = apply_berezin_at(p, [&](const BallPoint& w) { return spherical(p, lam, w); }, BallPoint::origin(1), q)
                          .value;
    EXPECT_LT(rel_err(at, multiplier_f(p, lam)), 1e-5);
}

TEST(ApplyAt, TwoDimensionalUnitMass) {
    const Params p{2, 3.0, 1};
    const BallPoint z{Complex(0.3, 0.1), Complex(-0.2, 0.2)};
    const RouteResult r = apply_berezin_routes(p, [](const BallPoint&) { return 1.0; }, z, coarse_spec(), coarse_grid());
    EXPECT_NEAR(r.direct, 1.0, 1e-6);
    EXPECT_NEAR(r.pullback, 1.0, 1e-6);
}

TEST(ApplyAt, MismatchRaises) {
    const Params p{1, 2.0, 0};
    BallGrid g;
    g.angular = 4;
    g.route_tol = 1e-15;
    const BallPoint z{Complex(0.6, 0.3)};
    EXPECT_THROW(apply_berezin_at(p, [](const BallPoint& w) { return w[0].real() > 0.0 ? 1.0 : 0.0; }, z,
                                  QuadratureSpec{}, g),
                 RouteMismatchError);
}

TEST(ApplyAt, GridRestrictions) {
    const Params p{3, 4.0, 0};
    EXPECT_THROW(apply_berezin_at(p, [](const BallPoint&) { return 1.0; }, BallPoint::origin(3), QuadratureSpec{}),
                 DomainError);
    BallGrid g;
    g.rho_max = 20.0;
    EXPECT_THROW(apply_berezin_at({1, 2.0, 0}, [](const BallPoint&) { return 1.0; }, BallPoint::origin(1),
                                  QuadratureSpec{}, g),
                 DomainError);
    EXPECT_THROW(apply_berezin_at({1, 2.0, 0}, [](const BallPoint&) { return 1.0; }, BallPoint::origin(2),
                                  QuadratureSpec{}),
                 DomainError);
}

TEST(MonteCarlo, ConstantIsExactAndSphericalWithinError) {
    const Params p{3, 4.0, 1};
    const BallPoint z{Complex(0.2, 0.0), Complex(0.0, 0.1), Complex(-0.1, 0.1)};
    const auto one = apply_berezin_monte_carlo(p, [](const BallPoint&) { return 1.0; }, z, 1000);
    EXPECT_EQ(one.value, 1.0);
    EXPECT_EQ(one.abs_err, 0.0);
    const double lam = 1.0;
    const auto est = apply_berezin_monte_carlo(p, [&](const BallPoint& w) { return spherical(p, lam, w); },
                                               BallPoint::origin(3), 100000);
    EXPECT_LT(std::abs(est.value - multiplier_f(p, lam)), 5.0 * est.abs_err);
    EXPECT_THROW(apply_berezin_monte_carlo(p, [](const BallPoint&) { return 1.0; }, z, 1), DomainError);
}

TEST(MonteCarlo, DeterministicForFixedSeed) {
    const Params p{2, 3.0, 0};
    const BallPoint z{Complex(0.1, 0.2), Complex(0.0, 0.0)};
    const BallFunction f = [](const BallPoint& w) { return w[0].real(); };
    EXPECT_EQ(apply_berezin_monte_carlo(p, f, z, 5000, 7).value, apply_berezin_monte_carlo(p, f, z, 5000, 7).value);
}

TEST(Eigenfunction, ValuesAndRestrictions) {
    const Eigenfunction1D e0{0, 0, {1, 2.0, 0}};
    const BallPoint z{Complex(0.3, 0.4)};
    EXPECT_LT(std::abs(eigenfunction_value(e0, z) - std::pow(0.75, 2.0)), 1e-15);
    EXPECT_EQ(eigenfunction_value({2, 0, {1, 3.0, 1}}, BallPoint::origin(1)), Complex(0.0));
    EXPECT_THROW(eigenfunction_value({1, 1, {1, 3.0, 1}}, z), DomainError);
    EXPECT_THROW(eigenfunction_value({0, 2, {1, 3.0, 1}}, z), DomainError);
    EXPECT_THROW(eigenfunction_value({0, 0, {2, 3.0, 0}}, BallPoint::origin(2)), DomainError);
}

TEST(Eigenfunction, NormsMatchClosedForm) {
    const QuadratureSpec q;
    for (int m : {0, 1, 2}) {
        for (auto [pp, qq] : {std::pair{0, 0}, {2, 0}, {0, m}}) {
            const Eigenfunction1D e{pp, qq, {1, 3.5, m}};
            const double quad = l2_inner_n1(e, e, q).real();
            EXPECT_LT(rel_err(quad, eigenfunction_norm_sq_closed(e)), 1e-6) << m << ' ' << pp << ' ' << qq;
        }
    }
}

TEST(Eigenfunction, OrthogonalAcrossLevelsAndFrequencies) {
    const QuadratureSpec q;
    const Eigenfunction1D a{1, 0, {1, 3.0, 0}};
    const Eigenfunction1D b{1, 0, {1, 3.0, 1}};
    const Eigenfunction1D c{2, 0, {1, 3.0, 1}};
    const double scale = std::sqrt(eigenfunction_norm_sq_closed(a) * eigenfunction_norm_sq_closed(b));
    EXPECT_LT(std::abs(l2_inner_n1(a, b, q)) / scale, 1e-6);
    EXPECT_LT(std::abs(l2_inner_n1(b, c, q)) / scale, 1e-6);
}

TEST(MagneticOperator, EigenEquation) {
    std::mt19937_64 gen(52);
    for (int m : {0, 1}) {
        const Params p{1, 3.0, m};
        for (auto [pp, qq] : {std::pair{0, 0}, {3, 0}, {0, m}}) {
            const Eigenfunction1D e{pp, qq, p};
            const ComplexBallFunction f = [&](const BallPoint& w) { return eigenfunction_value(e, w); };
            for (int i = 0; i < 20; ++i) {
                const BallPoint z = oracle::random_point(1, 0.8, gen);
                const Complex lhs = magnetic_operator_apply(p, f, z);
                const Complex rhs = eigenvalue(p) * f(z);
                EXPECT_LT(std::abs(lhs - rhs), 1e-4 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
}

TEST(MagneticOperator, ConstantsAndZero) {
    const Params p{2, 3.0, 0};
    const BallPoint z{Complex(0.3, 0.1), Complex(0.0, -0.2)};
    const Complex v = magnetic_operator_apply(p, [](const BallPoint&) { return Complex(1.0); }, z);
    EXPECT_LT(std::abs(v - 4.0 * p.nu * p.nu * z.norm_sq()), 1e-8);
    EXPECT_EQ(magnetic_operator_apply(p, [](const BallPoint&) { return Complex(0.0); }, z), Complex(0.0));
}

TEST(MagneticOperator, RejectsBadSteps) {
    const Params p{1, 2.0, 0};
    const ComplexBallFunction f = [](const BallPoint&) { return Complex(1.0); };
    EXPECT_THROW(magnetic_operator_apply(p, f, BallPoint{Complex(0.1, 0.0)}, 1e-8), DomainError);
    EXPECT_THROW(magnetic_operator_apply(p, f, BallPoint{Complex(0.1, 0.0)}, 0.5), DomainError);
    EXPECT_THROW(magnetic_operator_apply(p, f, BallPoint{Complex(0.999, 0.0)}, 1e-3), DomainError);
}

TEST(MagneticOperator, MixedMonomialIsNotAnEigenfunction) {
    // p = q = 1 at m = 1: the same radial ansatz with z conj(z) fails the eigen-equation
    const Params p{1, 3.0, 1};
    auto f = [&](const BallPoint& w) {
        const double r2 = w.norm_sq();
        return Complex(std::pow(w.defect(), p.nu - p.m) * jacobi_poly(0, 2.0, 2.0 * (p.nu - p.m) - 1.0, 1.0 - 2.0 * r2) *
                       r2);
    };
    const BallPoint z{Complex(0.4, 0.2)};
    const Complex lhs = magnetic_operator_apply(p, f, z);
    EXPECT_GT(std::abs(lhs - eigenvalue(p) * f(z)) / std::abs(f(z)), 0.1);
}

TEST(Reproducing, KernelReproducesItsLevel) {
    const QuadratureSpec q;
    for (int m : {0, 1}) {
        const Params p{1, 3.0, m};
        for (const BallPoint& z : {BallPoint{Complex(0.3, 0.0)}, BallPoint{Complex(-0.2, 0.5)}}) {
            EXPECT_LT(reproducing_check(p, {0, 0, p}, z, q), 1e-4);
            EXPECT_LT(reproducing_check(p, {2, 0, p}, z, q), 1e-4);
        }
        EXPECT_LT(reproducing_check(p, {1, 0, p}, BallPoint::origin(1), q), 1e-10);
    }
}

TEST(Reproducing, OtherLevelIsAnnihilated) {
    const QuadratureSpec q;
    const Params k1{1, 3.0, 1};
    const Eigenfunction1D e0{0, 0, {1, 3.0, 0}};
    const BallPoint z{Complex(0.3, 0.0)};
    EXPECT_NEAR(reproducing_check(k1, e0, z, q), 1.0, 1e-4);
}

TEST(SpectralSynthesis, RecoversKernel) {
    const QuadratureSpec q;
    for (const Params& p : {Params{2, 3.0, 0}, Params{1, 2.0, 1}}) {
        for (double d : {0.0, 0.5, 1.5}) {
            const auto e = kernel_from_spectral_radial(p, d, q);
            EXPECT_LT(rel_err(e.value, berezin_kernel_radial(p, d)), 1e-3) << p.n << ' ' << d;
        }
    }
    const Params p{2, 3.0, 0};
    const BallPoint z{Complex(0.2, 0.1), Complex(0.0, 0.3)};
    EXPECT_LT(rel_err(kernel_from_spectral(p, z, z, q).value, berezin_kernel(p, z, z)), 1e-3);
}

TEST(SpectralSynthesis, IntegrandDecays) {
    const Params p{2, 3.0, 0};
    double peak = 0.0;
    for (double lam = 0.1; lam <= 10.0; lam += 0.1) {
        peak = std::max(peak, std::abs(spectral_kernel_psi_radial(2, 0.5, lam) * multiplier_f(p, lam)));
    }
    EXPECT_LT(std::abs(spectral_kernel_psi_radial(2, 0.5, 40.0) * multiplier_f(p, 40.0)), 1e-12 * peak);
}
