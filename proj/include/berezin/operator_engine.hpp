#pragma once

// The generalized Berezin transform as an integral operator on the ball,
// its spectral-kernel representation, and the magnetic Schroedinger operator
// with its Landau-level eigenfunctions at n = 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "berezin/ball_geometry.hpp"
#include "berezin/berezin_core.hpp"
#include "berezin/errors.hpp"
#include "berezin/fourier_jacobi.hpp"
#include "berezin/quadrature.hpp"
#include "berezin/special_functions.hpp"

namespace berezin {

using BallFunction = std::function<double(const BallPoint&)>;
using ComplexBallFunction = std::function<Complex(const BallPoint&)>;

/// A function of the geodesic radius. decay_hint is an exponent c with
/// |phi(rho)| = O(e^{c rho}); it must stay below 4(nu - m) - 2n.
struct RadialFunction {
    std::function<double(double)> evaluator;
    double decay_hint = 0.0;

    double operator()(double rho) const { return evaluator(rho); }
};

/// Angular resolution of the tensor grids on the ball.
struct BallGrid {
    int angular = 64;      // uniform nodes per circle
    int polar = 16;        // Gauss-Legendre nodes for the S^3 latitude (n = 2)
    double rho_max = 12.0; // geodesic cutoff; 1 - |w|^2 stays above the boundary guard
    double route_tol = 1e-6;

    void validate() const {
        if (angular < 4 || polar < 1) {
            throw DomainError("BallGrid: need at least 4 angular and 1 polar node");
        }
        if (!(rho_max > 0.0) || rho_max > 13.0) {
            throw DomainError("BallGrid: rho_max must lie in (0, 13]");
        }
        if (!(route_tol > 0.0)) {
            throw DomainError("BallGrid: route_tol must be positive");
        }
    }
};

namespace detail {

// Calls visit(w, weight) over a tensor grid of the ball of C^n (n = 1, 2) in
// geodesic polar coordinates w = tanh(rho) zeta, weight including the
// invariant density sinh^{2n-1} cosh and the surface element of zeta.
template <class Visit>
void for_each_ball_node(int n, const QuadratureSpec& q, const BallGrid& grid, Visit&& visit) {
    q.validate();
    grid.validate();
    if (n != 1 && n != 2) {
        throw DomainError("ball tensor grid: only n = 1 and n = 2 are supported; use Monte Carlo for n >= 3");
    }
    const GaussLegendre rule(q.points_per_panel);
    const double width = grid.rho_max / q.panels;
    const int N = grid.angular;
    const double dtheta = 2.0 * std::numbers::pi / N;

    std::vector<double> chi_nodes;
    std::vector<double> chi_weights;
    if (n == 2) {
        const GaussLegendre polar(grid.polar);
        const double half = 0.25 * std::numbers::pi;
        for (std::size_t i = 0; i < polar.size(); ++i) {
            const double chi = half + half * polar.nodes()[i];
            chi_nodes.push_back(chi);
            chi_weights.push_back(half * polar.weights()[i] * std::sin(chi) * std::cos(chi));
        }
    }

    for (int panel = 0; panel < q.panels; ++panel) {
        const double mid = (panel + 0.5) * width;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double rho = mid + 0.5 * width * rule.nodes()[i];
            const double wr = 0.5 * width * rule.weights()[i] * geodesic_sphere_density(n, rho);
            const double r = std::tanh(rho);
            if (n == 1) {
                for (int k = 0; k < N; ++k) {
                    visit(rho, BallPoint({std::polar(r, k * dtheta)}), wr * dtheta);
                }
                continue;
            }
            for (std::size_t c = 0; c < chi_nodes.size(); ++c) {
                const double r1 = r * std::cos(chi_nodes[c]);
                const double r2 = r * std::sin(chi_nodes[c]);
                const double wc = wr * chi_weights[c] * dtheta * dtheta;
                for (int k1 = 0; k1 < N; ++k1) {
                    for (int k2 = 0; k2 < N; ++k2) {
                        visit(rho, BallPoint({std::polar(r1, k1 * dtheta), std::polar(r2, k2 * dtheta)}), wc);
                    }
                }
            }
        }
    }
}

inline void check_decay_hint(const Params& p, const RadialFunction& phi) {
    const double limit = 4.0 * (p.nu - p.m) - 2.0 * p.n;
    if (!(phi.decay_hint < limit)) {
        std::ostringstream os;
        os << "apply_berezin: symbol growth exponent " << phi.decay_hint << " is not below 4(nu - m) - 2n = "
           << limit;
        throw DomainError(os.str());
    }
}

} // namespace detail

/// Berezin transform of a radial symbol at the origin:
/// |S^{2n-1}| int_0^inf B_m(rho) phi(rho) sinh^{2n-1} rho cosh rho drho.
inline Estimate<double> apply_berezin_radial(const Params& p, const RadialFunction& phi, const QuadratureSpec& q) {
    p.validate();
    detail::check_decay_hint(p, phi);
    const double area = sphere_area(p.n);
    auto integrand = [&](double rho) {
        const double v = phi(rho);
        if (v == 0.0) return 0.0;
        return area * berezin_kernel_radial(p, rho) * v * geodesic_sphere_density(p.n, rho);
    };
    return integrate_semi_infinite(integrand, q);
}

/// Values of the two quadrature routes for the transform at z.
struct RouteResult {
    double direct = 0.0;   // int B_m(z, w) phi(w) dg(w)
    double pullback = 0.0; // int B_m(0, w) phi(phi_z(w)) dg(w)
    double difference = 0.0;
};

inline RouteResult apply_berezin_routes(const Params& p, const BallFunction& phi, const BallPoint& z,
                                        const QuadratureSpec& q, const BallGrid& grid = {}) {
    p.validate();
    detail::require_dim(p, z, "apply_berezin_at");
    const double kzz = reproducing_kernel(p, z, z).real();
    double direct = 0.0;
    double pullback = 0.0;
    double last_rho = -1.0;
    double b0 = 0.0;
    detail::for_each_ball_node(p.n, q, grid, [&](double rho, const BallPoint& w, double weight) {
        if (rho != last_rho) {
            b0 = berezin_kernel_radial(p, rho);
            last_rho = rho;
        }
        direct += weight * std::norm(reproducing_kernel(p, z, w)) / kzz * phi(w);
        pullback += weight * b0 * phi(transvection(z, w));
    });
    return {direct, pullback, std::abs(direct - pullback)};
}

/// Berezin transform of phi at z. Both routes are evaluated; a disagreement
/// above grid.route_tol (relative to max(1, |value|)) raises RouteMismatchError.
inline Estimate<double> apply_berezin_at(const Params& p, const BallFunction& phi, const BallPoint& z,
                                         const QuadratureSpec& q, const BallGrid& grid = {}) {
    const RouteResult r = apply_berezin_routes(p, phi, z, q, grid);
    if (!(r.difference <= grid.route_tol * std::max(1.0, std::abs(r.pullback)))) {
        std::ostringstream os;
        os << "apply_berezin_at: routes disagree (direct " << r.direct << ", pullback " << r.pullback << ")";
        throw RouteMismatchError(os.str());
    }
    return {r.pullback, r.difference, 0};
}

/// Monte Carlo estimate of the transform at z for any n: w is drawn from the
/// probability density B_m(0, w) dg(w) and phi is averaged over phi_z(w).
/// abs_err is the sample standard error.
inline Estimate<double> apply_berezin_monte_carlo(const Params& p, const BallFunction& phi, const BallPoint& z,
                                                  std::size_t samples, std::uint64_t seed = 20240917,
                                                  double rho_max = 12.0) {
    p.validate();
    detail::require_dim(p, z, "apply_berezin_monte_carlo");
    if (samples < 2) {
        throw DomainError("apply_berezin_monte_carlo: need at least two samples");
    }
    constexpr std::size_t kCells = 8192;
    const double h = rho_max / kCells;
    std::vector<double> cdf(kCells + 1, 0.0);
    double prev = 0.0;
    for (std::size_t i = 1; i <= kCells; ++i) {
        const double rho = i * h;
        const double d = berezin_kernel_radial(p, rho) * geodesic_sphere_density(p.n, rho);
        cdf[i] = cdf[i - 1] + 0.5 * h * (prev + d);
        prev = d;
    }
    for (double& c : cdf) c /= cdf.back();

    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double mean = 0.0;
    double m2 = 0.0;
    std::vector<Complex> dir(static_cast<std::size_t>(p.n));
    for (std::size_t s = 0; s < samples; ++s) {
        const double u = uni(gen);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t hi = std::min<std::size_t>(kCells, std::max<std::size_t>(1, it - cdf.begin()));
        const double frac = (u - cdf[hi - 1]) / std::max(cdf[hi] - cdf[hi - 1], 1e-300);
        const double rho = (hi - 1 + std::clamp(frac, 0.0, 1.0)) * h;
        double norm = 0.0;
        for (Complex& c : dir) {
            c = Complex(gauss(gen), gauss(gen));
            norm += std::norm(c);
        }
        const double scale = std::tanh(rho) / std::sqrt(norm);
        for (Complex& c : dir) c *= scale;
        const double v = phi(transvection(z, BallPoint(dir)));
        const double delta = v - mean;
        mean += delta / static_cast<double>(s + 1);
        m2 += delta * (v - mean);
    }
    const double var = m2 / static_cast<double>(samples - 1);
    return {mean, std::sqrt(var / static_cast<double>(samples)), samples};
}

/// psi_{p,q} at n = 1: (1 - |z|^2)^{nu-m} P_{m-q}^{(p+q, 2(nu-m)-1)}(1 - 2|z|^2) z^p conj(z)^q.
/// z^p conj(z)^q is harmonic only when p q = 0, so one of p, q must vanish.
struct Eigenfunction1D {
    int p = 0;
    int q = 0;
    Params params{1, 2.0, 0};

    void validate() const {
        params.validate();
        if (params.n != 1) {
            throw DomainError("Eigenfunction1D: only n = 1 is supported");
        }
        if (p < 0 || q < 0) {
            throw DomainError("Eigenfunction1D: p and q must be non-negative");
        }
        if (q > params.m) {
            throw DomainError("Eigenfunction1D: q <= m violated");
        }
        if (p != 0 && q != 0) {
            throw DomainError("Eigenfunction1D: p q = 0 required (z^p conj(z)^q is not harmonic otherwise)");
        }
    }
};

inline Complex eigenfunction_value(const Eigenfunction1D& e, const BallPoint& z) {
    e.validate();
    if (z.dim() != 1) {
        throw DomainError("eigenfunction_value: point must lie in the unit disc");
    }
    const Params& pr = e.params;
    const double r2 = z.norm_sq();
    const double radial = std::pow(z.defect(), pr.nu - pr.m) *
                          jacobi_poly(pr.m - e.q, e.p + e.q, 2.0 * (pr.nu - pr.m) - 1.0, 1.0 - 2.0 * r2);
    Complex mono = 1.0;
    for (int k = 0; k < e.p; ++k) mono *= z[0];
    for (int k = 0; k < e.q; ++k) mono *= std::conj(z[0]);
    return radial * mono;
}

/// int |psi_{p,q}|^2 (1 - |z|^2)^{-2} dV
///   = pi Gamma(1 + m + p) Gamma(2nu - m - q) / ((2(nu - m) - 1) (m - q)! Gamma(2nu - m + p)).
inline double eigenfunction_norm_sq_closed(const Eigenfunction1D& e) {
    e.validate();
    const double nu = e.params.nu;
    const int m = e.params.m;
    return std::numbers::pi / (2.0 * (nu - m) - 1.0) *
           std::exp(log_gamma(1.0 + m + e.p) + log_gamma(2.0 * nu - m - e.q) - log_gamma(m - e.q + 1.0) -
                    log_gamma(2.0 * nu - m + e.p));
}

/// <psi_1, psi_2> = int psi_1 conj(psi_2) (1 - |z|^2)^{-2} dV by polar quadrature.
inline Complex l2_inner_n1(const Eigenfunction1D& e1, const Eigenfunction1D& e2, const QuadratureSpec& q,
                           const BallGrid& grid = {}) {
    e1.validate();
    e2.validate();
    Complex sum = 0.0;
    detail::for_each_ball_node(1, q, grid, [&](double, const BallPoint& w, double weight) {
        sum += weight * eigenfunction_value(e1, w) * std::conj(eigenfunction_value(e2, w));
    });
    return sum;
}

namespace detail {

// Gradient and Hessian in the real coordinates (x_1, y_1, ..., x_n, y_n)
// by central differences of step h.
struct RealDerivatives {
    std::vector<Complex> grad;
    std::vector<Complex> hess; // row-major 2n x 2n
};

inline BallPoint offset_point(const BallPoint& z, const std::array<int, 2>& idx, const std::array<double, 2>& amt) {
    std::vector<Complex> c(z.coords().begin(), z.coords().end());
    for (int t = 0; t < 2; ++t) {
        if (idx[t] < 0) continue;
        const auto k = static_cast<std::size_t>(idx[t] / 2);
        c[k] += (idx[t] % 2 == 0) ? Complex(amt[t], 0.0) : Complex(0.0, amt[t]);
    }
    return BallPoint(std::move(c));
}

inline RealDerivatives central_differences(const ComplexBallFunction& f, const BallPoint& z, double h) {
    const int d = 2 * z.dim();
    RealDerivatives out{std::vector<Complex>(d), std::vector<Complex>(static_cast<std::size_t>(d * d))};
    const Complex f0 = f(z);
    for (int r = 0; r < d; ++r) {
        const Complex fp = f(offset_point(z, {r, -1}, {h, 0.0}));
        const Complex fm = f(offset_point(z, {r, -1}, {-h, 0.0}));
        out.grad[r] = (fp - fm) / (2.0 * h);
        out.hess[r * d + r] = (fp - 2.0 * f0 + fm) / (h * h);
        for (int s = 0; s < r; ++s) {
            const Complex fpp = f(offset_point(z, {r, s}, {h, h}));
            const Complex fpm = f(offset_point(z, {r, s}, {h, -h}));
            const Complex fmp = f(offset_point(z, {r, s}, {-h, h}));
            const Complex fmm = f(offset_point(z, {r, s}, {-h, -h}));
            const Complex v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            out.hess[r * d + s] = v;
            out.hess[s * d + r] = v;
        }
    }
    return out;
}

} // namespace detail

/// H_nu f(z) = -4(1 - |z|^2) { sum (delta_ij - z_i conj(z_j)) d_i dbar_j f
///             + nu sum (z_j d_j f - conj(z_j) dbar_j f) + nu^2 f } + 4 nu^2 f,
/// with Wirtinger derivatives from central differences at steps h and 2h
/// combined by one Richardson step.
inline Complex magnetic_operator_apply(const Params& p, const ComplexBallFunction& f, const BallPoint& z,
                                       double step = 1e-3) {
    p.validate();
    detail::require_dim(p, z, "magnetic_operator_apply");
    if (!(step >= 1e-6) || !(step <= 1e-1)) {
        throw DomainError("magnetic_operator_apply: step must lie in [1e-6, 0.1] (cancellation or truncation)");
    }
    if (std::sqrt(z.norm_sq()) + 2.0 * std::numbers::sqrt2 * step >= 1.0 - 1e-6) {
        throw DomainError("magnetic_operator_apply: difference stencil leaves the ball");
    }
    const detail::RealDerivatives fine = detail::central_differences(f, z, step);
    const detail::RealDerivatives coarse = detail::central_differences(f, z, 2.0 * step);
    const int n = z.dim();
    const int d = 2 * n;
    auto grad = [&](int r) { return (4.0 * fine.grad[r] - coarse.grad[r]) / 3.0; };
    auto hess = [&](int r, int s) { return (4.0 * fine.hess[r * d + s] - coarse.hess[r * d + s]) / 3.0; };
    const Complex I(0.0, 1.0);

    Complex second = 0.0;
    Complex first = 0.0;
    for (int i = 0; i < n; ++i) {
        const int xi = 2 * i;
        const int yi = 2 * i + 1;
        const Complex di = 0.5 * (grad(xi) - I * grad(yi));
        const Complex dbari = 0.5 * (grad(xi) + I * grad(yi));
        first += z[i] * di - std::conj(z[i]) * dbari;
        for (int j = 0; j < n; ++j) {
            const int xj = 2 * j;
            const int yj = 2 * j + 1;
            const Complex mixed = 0.25 * (hess(xi, xj) + hess(yi, yj) + I * (hess(xi, yj) - hess(yi, xj)));
            const Complex coef = (i == j ? 1.0 : 0.0) - z[i] * std::conj(z[j]);
            second += coef * mixed;
        }
    }
    const double nu = p.nu;
    const Complex f0 = f(z);
    return -4.0 * z.defect() * (second + nu * first + nu * nu * f0) + 4.0 * nu * nu * f0;
}

/// int K_m(z, w) psi(w) (1 - |w|^2)^{-2} dV(w) at n = 1, with the kernel of
/// level p.m (which may differ from the level of psi).
inline Complex reproducing_integral(const Params& p, const Eigenfunction1D& e, const BallPoint& z,
                                    const QuadratureSpec& q, const BallGrid& grid = {}) {
    p.validate();
    if (p.n != 1) {
        throw DomainError("reproducing_integral: only n = 1 is supported");
    }
    e.validate();
    Complex sum = 0.0;
    detail::for_each_ball_node(1, q, grid, [&](double, const BallPoint& w, double weight) {
        sum += weight * reproducing_kernel(p, z, w) * eigenfunction_value(e, w);
    });
    return sum;
}

/// Relative error |int K psi - psi(z)| / |psi(z)|; absolute when psi(z) = 0.
inline double reproducing_check(const Params& p, const Eigenfunction1D& e, const BallPoint& z,
                                const QuadratureSpec& q, const BallGrid& grid = {}) {
    const Complex lhs = reproducing_integral(p, e, z, q, grid);
    const Complex rhs = eigenfunction_value(e, z);
    const double err = std::abs(lhs - rhs);
    return std::abs(rhs) > 0.0 ? err / std::abs(rhs) : err;
}

/// B_m at geodesic distance d from the spectral side:
/// int_0^inf Psi(d; lambda) f_m(lambda) dlambda by the trapezoidal rule.
inline Estimate<double> kernel_from_spectral_radial(const Params& p, double d, const QuadratureSpec& q,
                                                    double step = 0.1) {
    p.validate();
    q.validate();
    auto integrand = [&](double lam) {
        if (lam == 0.0) return 0.0;
        return spectral_kernel_psi_radial(p.n, d, lam) * multiplier_f(p, lam);
    };
    return integrate_even_trapezoid(integrand, step, q.tol);
}

inline Estimate<double> kernel_from_spectral(const Params& p, const BallPoint& z, const BallPoint& w,
                                             const QuadratureSpec& q, double step = 0.1) {
    detail::require_dim(p, z, "kernel_from_spectral");
    detail::require_dim(p, w, "kernel_from_spectral");
    return kernel_from_spectral_radial(p, geodesic_distance(z, w), q, step);
}

} // namespace berezin
