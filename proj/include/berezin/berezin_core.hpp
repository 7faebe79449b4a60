#pragma once

// Landau levels, reproducing kernels K_m, Berezin kernels B_m and the
// closed-form spectral multiplier f_m of the generalized Berezin transform.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "berezin/ball_geometry.hpp"
#include "berezin/errors.hpp"
#include "berezin/fourier_jacobi.hpp"
#include "berezin/quadrature.hpp"
#include "berezin/special_functions.hpp"

namespace berezin {

/// Dimension n, magnetic strength nu and Landau level m.
struct Params {
    int n = 1;
    double nu = 1.0;
    int m = 0;

    void validate() const {
        if (n < 1) {
            throw DomainError("Params: n >= 1 violated (n = " + std::to_string(n) + ")");
        }
        if (!std::isfinite(nu) || !(nu > 0.5 * n)) {
            std::ostringstream os;
            os << "Params: nu > n/2 violated (nu = " << nu << ", n = " << n << ")";
            throw DomainError(os.str());
        }
        if (m < 0) {
            throw DomainError("Params: m >= 0 violated (m = " + std::to_string(m) + ")");
        }
        if (!(m < nu - 0.5 * n)) {
            std::ostringstream os;
            os << "Params: m < nu - n/2 violated (m = " << m << ", nu - n/2 = " << nu - 0.5 * n << ")";
            throw DomainError(os.str());
        }
    }

    /// Jacobi parameters (n - 1, 2(nu - m) - n) of the kernel polynomials.
    double jacobi_alpha() const { return n - 1.0; }
    double jacobi_beta() const { return 2.0 * (nu - m) - n; }
};

/// eps_m = 4 nu (2m + n) - 4 m (m + n)
inline double eigenvalue(const Params& p) {
    p.validate();
    return 4.0 * p.nu * (2.0 * p.m + p.n) - 4.0 * p.m * (p.m + p.n);
}

/// gamma_m = (2(nu - m) - n) Gamma(2 nu - m) / (pi^n Gamma(2 nu - m - n + 1))
inline double gamma_coeff(const Params& p) {
    p.validate();
    const double nu = p.nu;
    const int m = p.m;
    const int n = p.n;
    return (2.0 * (nu - m) - n) *
           std::exp(log_gamma(2.0 * nu - m) - n * std::log(std::numbers::pi) - log_gamma(2.0 * nu - m - n + 1.0));
}

namespace detail {

// P_m^{(n-1, 2(nu-m)-n)}(2 s - 1) with s = sech^2 d
inline double kernel_poly(const Params& p, double sech_sq) {
    return jacobi_poly(p.m, p.jacobi_alpha(), p.jacobi_beta(), 2.0 * sech_sq - 1.0);
}

// m! Gamma(n) / Gamma(n + m)
inline double diagonal_ratio(const Params& p) {
    return std::exp(log_gamma(p.m + 1.0) + log_gamma(static_cast<double>(p.n)) - log_gamma(static_cast<double>(p.n + p.m)));
}

inline void require_dim(const Params& p, const BallPoint& z, const char* where) {
    if (z.dim() != p.n) {
        throw DomainError(std::string(where) + ": point dimension differs from n");
    }
}

} // namespace detail

/// K_m(z, w) = gamma_m phase^nu cosh^{-2(nu-m)} d P_m(1 - 2 tanh^2 d),
/// phase = (1 - conj<z,w>) / (1 - <z,w>).
inline Complex reproducing_kernel(const Params& p, const BallPoint& z, const BallPoint& w) {
    p.validate();
    detail::require_dim(p, z, "reproducing_kernel");
    detail::require_dim(p, w, "reproducing_kernel");
    const Complex q = 1.0 - inner(z, w);
    const double s = sech_sq_distance(z, w);
    const double modulus = gamma_coeff(p) * std::pow(s, p.nu - p.m) * detail::kernel_poly(p, s);
    return modulus * std::polar(1.0, -2.0 * p.nu * std::arg(q));
}

/// B_m as a function of the geodesic distance:
/// (m! Gamma(n) / Gamma(n + m)) gamma_m cosh^{-4(nu-m)} rho P_m(1 - 2 tanh^2 rho)^2.
inline double berezin_kernel_radial(const Params& p, double rho) {
    p.validate();
    const double c = std::cosh(rho);
    const double s = 1.0 / (c * c);
    const double P = detail::kernel_poly(p, s);
    return detail::diagonal_ratio(p) * gamma_coeff(p) * std::pow(s, 2.0 * (p.nu - p.m)) * P * P;
}

/// B_m(z, w) = |K_m(z, w)|^2 / K_m(z, z).
inline double berezin_kernel(const Params& p, const BallPoint& z, const BallPoint& w) {
    const double kzz = reproducing_kernel(p, z, z).real();
    return std::norm(reproducing_kernel(p, z, w)) / kzz;
}

/// h(rho) = 4 pi^{n+1} m! Gamma(n)^2 / Gamma(n + m) gamma_m cosh^{-4(nu-m)} rho P_m(1 - 2 tanh^2 rho)^2,
/// the radial profile whose Fourier-Jacobi transform gives the multiplier.
inline double radial_profile_h(const Params& p, double rho) {
    p.validate();
    const double c = std::cosh(rho);
    const double s = 1.0 / (c * c);
    const double P = detail::kernel_poly(p, s);
    const double log_pre = std::log(4.0) + (p.n + 1.0) * std::log(std::numbers::pi) + log_gamma(p.m + 1.0) +
                           2.0 * log_gamma(static_cast<double>(p.n)) - log_gamma(static_cast<double>(p.n + p.m));
    return std::exp(log_pre) * gamma_coeff(p) * std::pow(s, 2.0 * (p.nu - p.m)) * P * P;
}

namespace detail {

// A_j Gamma(n)^2 / Gamma(2 nu - m)^2 from Pochhammer products:
// 2^{-j} sum_p C(m,p) C(m,j-p) (g)_p (g)_{j-p} / ((n)_p (n)_{j-p}), g = 2 nu - m.
inline long double scaled_coeff_A_unit(const Params& p, int j) {
    const int m = p.m;
    const long double g = 2.0L * static_cast<long double>(p.nu) - m;
    const long double n = p.n;
    auto ratio = [&](int k) {
        long double r = 1.0L;
        for (int i = 0; i < k; ++i) r *= (g + i) / (n + i);
        return r;
    };
    auto binom = [](int top, int k) {
        long double r = 1.0L;
        for (int i = 0; i < k; ++i) r = r * (top - i) / (i + 1);
        return r;
    };
    long double sum = 0.0L;
    for (int q = std::max(0, j - m); q <= std::min(m, j); ++q) {
        sum += binom(m, q) * binom(m, j - q) * ratio(q) * ratio(j - q);
    }
    return std::ldexp(sum, -j);
}

// A_j / Gamma(2 nu - m)^2
inline double scaled_coeff_A(const Params& p, int j) {
    return static_cast<double>(scaled_coeff_A_unit(p, j)) * std::exp(-2.0 * log_gamma(static_cast<double>(p.n)));
}

} // namespace detail

/// A_j = 2^{-j} sum_p C(m,p) C(m,j-p) Gamma(2nu-m+p) Gamma(2nu-m+j-p) / (Gamma(n+p) Gamma(n+j-p)),
/// p from max(0, j - m) to min(m, j).
inline double multiplier_coeff_A(const Params& p, int j) {
    p.validate();
    if (j < 0 || j > 2 * p.m) {
        throw DomainError("multiplier_coeff_A: j must lie in 0..2m");
    }
    return detail::scaled_coeff_A(p, j) * std::exp(2.0 * log_gamma(2.0 * p.nu - p.m));
}

/// Gamma(n+m)^2 / (m!^2 Gamma(2nu-m)^2) sum_j (-1)^j A_j (2x / (1+x))^j,
/// which equals P_m^{(n-1, 2(nu-m)-n)}((1-x)/(1+x))^2.
inline double jacobi_square_expansion(const Params& p, double x) {
    p.validate();
    if (!(x >= 0.0)) {
        throw DomainError("jacobi_square_expansion: x must be non-negative");
    }
    const long double y = 2.0L * x / (1.0L + x);
    long double sum = 0.0L;
    long double yj = 1.0L;
    for (int j = 0; j <= 2 * p.m; ++j) {
        sum += ((j % 2 == 0) ? 1.0L : -1.0L) * detail::scaled_coeff_A_unit(p, j) * yj;
        yj *= y;
    }
    // Gamma(n + m) / (m! Gamma(n)) = (n)_m / m!
    long double pre = 1.0L;
    for (int i = 0; i < p.m; ++i) pre *= static_cast<long double>(p.n + i) / (i + 1);
    return static_cast<double>(pre * pre * sum);
}

/// I_{n,j}(lambda) = B(n + j, 2(nu-m) - (n - i lambda)/2)
///   * 3F2((n + i lambda)/2, n + j, (n + i lambda)/2; (n + i lambda)/2 + 2(nu-m) + j, n; 1).
inline SeriesResult I_integral_closed(const Params& p, int j, double lambda, const SeriesOptions& opt = {}) {
    p.validate();
    if (j < 0 || j > 2 * p.m) {
        throw DomainError("I_integral_closed: j must lie in 0..2m");
    }
    const double n = p.n;
    const double k = 2.0 * (p.nu - p.m);
    const Complex a(0.5 * n, 0.5 * lambda);
    const Complex beta = beta_fn(n + j, k - std::conj(a));
    const SeriesResult f = hyp_3f2_unit(a, n + j, a, a + k + static_cast<double>(j), n, opt);
    return {beta * f.value, f.terms_used, std::abs(beta) * f.tail_bound};
}

/// The multiplier as a complex number before the realness check:
/// f = C sum_j (-2)^j A_j I_{n,j}(lambda),
/// C = (2(nu-m) - n) Gamma(n+m) / (m! Gamma(2nu-n-m+1) Gamma(2nu-m)).
inline SeriesResult multiplier_f_detailed(const Params& p, double lambda, const SeriesOptions& opt = {}) {
    p.validate();
    const double nu = p.nu;
    const int m = p.m;
    const int n = p.n;
    // C * Gamma(2nu - m)^2, paired with the scaled A_j
    const double pre = (2.0 * (nu - m) - n) * std::exp(log_gamma(static_cast<double>(n + m)) + log_gamma(2.0 * nu - m) -
                                                       log_gamma(m + 1.0) - log_gamma(2.0 * nu - n - m + 1.0));
    Complex sum = 0.0;
    double err = 0.0;
    std::size_t terms = 0;
    for (int j = 0; j <= 2 * m; ++j) {
        const double w = std::ldexp(1.0, j) * ((j % 2 == 0) ? 1.0 : -1.0) * detail::scaled_coeff_A(p, j);
        const SeriesResult I = I_integral_closed(p, j, lambda, opt);
        sum += w * I.value;
        err += std::abs(w) * I.tail_bound;
        terms += I.terms_used;
    }
    return {pre * sum, terms, std::abs(pre) * err};
}

namespace detail {

inline double checked_real(const SeriesResult& r, double lambda) {
    const double re = r.value.real();
    const double im = r.value.imag();
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw ConvergenceError("multiplier_f: non-finite value");
    }
    if (std::abs(im) >= 1e-10 * std::max(1.0, std::abs(re))) {
        std::ostringstream os;
        os << "multiplier_f: imaginary residue " << im << " at lambda = " << lambda;
        throw RealnessError(os.str());
    }
    return re;
}

} // namespace detail

/// Real multiplier f_m(lambda). A relative imaginary residue of 1e-10 or more
/// raises RealnessError.
inline double multiplier_f(const Params& p, double lambda, const SeriesOptions& opt = {}) {
    return detail::checked_real(multiplier_f_detailed(p, lambda, opt), lambda);
}

namespace detail {

inline void require_peetre_domain(int n, double nu) {
    if (n < 1) throw DomainError("multiplier_f0_peetre: n >= 1 violated");
    if (!(nu > 0.5 * n)) throw DomainError("multiplier_f0_peetre: nu > n/2 violated");
}

} // namespace detail

/// |Gamma(2nu - (n - i lambda)/2)|^2 / (Gamma(2nu - n) Gamma(2nu)), the m = 0 multiplier.
inline double multiplier_f0_peetre(int n, double nu, double lambda) {
    detail::require_peetre_domain(n, nu);
    return std::exp(detail::log_abs_gamma_sq(2.0 * nu - 0.5 * n, 0.5 * lambda) - log_gamma(2.0 * nu - n) -
                    log_gamma(2.0 * nu));
}

/// The same multiplier written with alpha = 2nu - n - 1:
/// |Gamma(alpha + 1 + n/2 + i lambda/2)|^2 / (Gamma(alpha + 1) Gamma(alpha + n + 1)).
inline double multiplier_f0_peetre_alpha(int n, double nu, double lambda) {
    detail::require_peetre_domain(n, nu);
    const double alpha = 2.0 * nu - n - 1.0;
    return std::exp(detail::log_abs_gamma_sq(alpha + 1.0 + 0.5 * n, 0.5 * lambda) - log_gamma(alpha + 1.0) -
                    log_gamma(alpha + n + 1.0));
}

/// Psi(d; lambda) = |Gamma((n + i lambda)/2)|^4 / (4 pi^{n+1} Gamma(n) |Gamma(i lambda)|^2)
///                  * 2F1((n + i lambda)/2, (n - i lambda)/2; n; -sinh^2 d).
inline double spectral_kernel_psi_radial(int n, double d, double lambda) {
    if (n < 1) throw DomainError("spectral_kernel_psi: n >= 1 violated");
    if (lambda == 0.0) throw PoleError("spectral_kernel_psi: pole at lambda = 0");
    if (!(lambda > 0.0)) throw DomainError("spectral_kernel_psi: lambda must be positive");
    const double log_pre = 2.0 * detail::log_abs_gamma_sq(0.5 * n, 0.5 * lambda) - std::log(4.0) -
                           (n + 1.0) * std::log(std::numbers::pi) - log_gamma(static_cast<double>(n)) +
                           detail::log_inv_abs_gamma_imag_sq(lambda);
    const Complex phi = jacobi_function(JacobiParams{n - 1.0, 0.0, lambda}, d);
    return std::exp(log_pre) * phi.real();
}

inline double spectral_kernel_psi(int n, const BallPoint& z, const BallPoint& w, double lambda) {
    if (z.dim() != n || w.dim() != n) {
        throw DomainError("spectral_kernel_psi: point dimension differs from n");
    }
    return spectral_kernel_psi_radial(n, geodesic_distance(z, w), lambda);
}

/// Sampled multiplier with per-sample error estimates.
struct MultiplierTable {
    std::vector<double> lambdas;
    std::vector<double> values;
    std::vector<double> abs_err;
};

inline MultiplierTable tabulate_multiplier(const Params& p, const std::vector<double>& lambdas,
                                           const SeriesOptions& opt = {}) {
    MultiplierTable t;
    t.lambdas = lambdas;
    t.values.reserve(lambdas.size());
    t.abs_err.reserve(lambdas.size());
    for (double lam : lambdas) {
        const SeriesResult r = multiplier_f_detailed(p, lam, opt);
        t.values.push_back(detail::checked_real(r, lam));
        t.abs_err.push_back(r.tail_bound);
    }
    return t;
}

/// 2 pi 2^{2n} Gamma(n)^2, the normalization turning the transform of h into f.
inline double multiplier_normalization(int n) {
    return 2.0 * std::numbers::pi * std::exp(2.0 * n * std::numbers::ln2 + 2.0 * log_gamma(static_cast<double>(n)));
}

/// f_m(lambda) by quadrature: the Fourier-Jacobi transform of h with
/// (alpha, beta) = (n - 1, 0), divided by 2 pi 2^{2n} Gamma(n)^2.
inline Estimate<double> multiplier_f_quadrature(const Params& p, double lambda, const QuadratureSpec& q) {
    p.validate();
    const Estimate<double> g =
        forward_transform([&](double t) { return radial_profile_h(p, t); }, p.n - 1.0, 0.0, lambda, q);
    const double norm = multiplier_normalization(p.n);
    return {g.value / norm, g.abs_err / norm, g.evaluations};
}

} // namespace berezin
