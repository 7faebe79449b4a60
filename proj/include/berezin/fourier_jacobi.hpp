#pragma once

// Jacobi functions phi_lambda^{(alpha,beta)}, the weight Delta_{alpha,beta},
// the Harish-Chandra c-function and the Fourier-Jacobi transform pair
//   g(lambda) = int_0^inf h(t) phi_lambda(t) Delta(t) dt
//   h(t)      = (2 pi)^{-1} int_0^inf g(lambda) phi_lambda(t) |c(lambda)|^{-2} dlambda.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "berezin/errors.hpp"
#include "berezin/quadrature.hpp"
#include "berezin/special_functions.hpp"

namespace berezin {

struct JacobiParams {
    double alpha = 0.0;
    double beta = 0.0;
    double lambda = 0.0;

    void validate() const {
        if (!(alpha > -1.0)) {
            throw DomainError("JacobiParams: alpha must exceed -1");
        }
        if (!(std::abs(beta) <= alpha + 1.0)) {
            throw DomainError("JacobiParams: |beta| must not exceed alpha + 1");
        }
        if (!std::isfinite(lambda)) {
            throw DomainError("JacobiParams: lambda must be finite");
        }
    }

    double rho() const { return alpha + beta + 1.0; }
};

/// phi_lambda^{(alpha,beta)}(t) = 2F1((rho + i lambda)/2, (rho - i lambda)/2; alpha + 1; -sinh^2 t).
/// Even in t and lambda; real for real lambda up to rounding.
inline Complex jacobi_function(const JacobiParams& p, double t, const SeriesOptions& opt = {}) {
    p.validate();
    const double lam = std::abs(p.lambda);
    const double sh = std::sinh(std::abs(t));
    const Complex a(0.5 * p.rho(), 0.5 * lam);
    const Complex b(0.5 * p.rho(), -0.5 * lam);
    return gauss_2f1(a, b, p.alpha + 1.0, -sh * sh, opt).value;
}

/// Delta_{alpha,beta}(t) = (2 sinh|t|)^{2 alpha + 1} (2 cosh|t|)^{2 beta + 1}.
inline double weight_delta(double alpha, double beta, double t) {
    const double at = std::abs(t);
    return std::pow(2.0 * std::sinh(at), 2.0 * alpha + 1.0) * std::pow(2.0 * std::cosh(at), 2.0 * beta + 1.0);
}

/// c(lambda) = 2^{rho - i lambda} Gamma(alpha + 1) Gamma(i lambda)
///             / (Gamma((rho + i lambda)/2) Gamma((alpha - beta + 1 + i lambda)/2)).
inline Complex c_function(double alpha, double beta, double lambda) {
    if (lambda == 0.0) {
        throw PoleError("c_function: pole at lambda = 0");
    }
    const double rho = alpha + beta + 1.0;
    const Complex il(0.0, lambda);
    const Complex logc = (rho - il) * std::numbers::ln2 + log_gamma(alpha + 1.0) + log_gamma(il) -
                         log_gamma(0.5 * (rho + il)) - log_gamma(0.5 * (alpha - beta + 1.0 + il));
    return std::exp(logc);
}

namespace detail {

// log |Gamma(x + i y)|^2, with the x = 0 case folded into the caller.
inline double log_abs_gamma_sq(double x, double y) { return 2.0 * log_gamma(Complex(x, y)).real(); }

// log(lambda sinh(pi lambda) / pi) = -log |Gamma(i lambda)|^2, lambda > 0
inline double log_inv_abs_gamma_imag_sq(double lambda) {
    const double pl = std::numbers::pi * lambda;
    return std::log(lambda) + pl + std::log1p(-std::exp(-2.0 * pl)) - std::numbers::ln2 - std::log(std::numbers::pi);
}

} // namespace detail

/// Plancherel density |c(lambda)|^{-2}; finite at lambda = 0, where it
/// vanishes unless one of the lower Gamma arguments has zero real part.
inline double c_function_inv_sq(double alpha, double beta, double lambda) {
    const double lam = std::abs(lambda);
    const double rho = alpha + beta + 1.0;
    const double sigma = alpha - beta + 1.0;
    const double base = -2.0 * rho * std::numbers::ln2 - 2.0 * log_gamma(alpha + 1.0);
    // |Gamma(i l / 2)|^2 / |Gamma(i l)|^2 = 4 cosh(pi l / 2)
    const bool rho_zero = rho == 0.0;
    const bool sigma_zero = sigma == 0.0;
    if (rho_zero || sigma_zero) {
        const double other = rho_zero ? sigma : rho;
        return std::exp(base + std::log(4.0 * std::cosh(0.5 * std::numbers::pi * lam)) +
                        detail::log_abs_gamma_sq(0.5 * other, 0.5 * lam));
    }
    if (lam == 0.0) {
        return 0.0;
    }
    return std::exp(base + detail::log_abs_gamma_sq(0.5 * rho, 0.5 * lam) +
                    detail::log_abs_gamma_sq(0.5 * sigma, 0.5 * lam) + detail::log_inv_abs_gamma_imag_sq(lam));
}

/// g(lambda) = int_0^inf h(t) Re phi_lambda(t) Delta(t) dt.
template <class H>
Estimate<double> forward_transform(H&& h, double alpha, double beta, double lambda, const QuadratureSpec& q) {
    const JacobiParams jp{alpha, beta, lambda};
    jp.validate();
    auto integrand = [&](double t) {
        const double ht = h(t);
        if (ht == 0.0) return 0.0;
        return ht * jacobi_function(jp, t).real() * weight_delta(alpha, beta, t);
    };
    return integrate_semi_infinite(integrand, q);
}

/// h(t) from samples g(lambda_k) on the uniform grid lambda_k = k * step,
/// k = 0..K, by the trapezoidal rule. The tail |g phi |c|^{-2}| at the last
/// node must be below tol times its peak.
inline Estimate<double> inverse_transform(const std::vector<double>& lambdas, const std::vector<double>& g,
                                          double alpha, double beta, double t, double tol = 1e-10) {
    JacobiParams jp{alpha, beta, 0.0};
    jp.validate();
    if (lambdas.size() != g.size() || lambdas.size() < 3) {
        throw DomainError("inverse_transform: need at least 3 samples with matching lengths");
    }
    if (lambdas.front() != 0.0) {
        throw DomainError("inverse_transform: the grid must start at lambda = 0");
    }
    const double step = lambdas[1] - lambdas[0];
    if (!(step > 0.0)) {
        throw DomainError("inverse_transform: grid must be increasing");
    }
    for (std::size_t k = 1; k < lambdas.size(); ++k) {
        if (std::abs(lambdas[k] - static_cast<double>(k) * step) > 1e-9 * step * static_cast<double>(k)) {
            throw DomainError("inverse_transform: grid must be uniform");
        }
    }
    double sum = 0.0;
    double even_sum = 0.0;
    double peak = 0.0;
    double last = 0.0;
    const std::size_t K = lambdas.size() - 1;
    for (std::size_t k = 0; k <= K; ++k) {
        jp.lambda = lambdas[k];
        const double v = g[k] * jacobi_function(jp, t).real() * c_function_inv_sq(alpha, beta, lambdas[k]);
        const double w = (k == 0 || k == K) ? 0.5 : 1.0;
        sum += w * v;
        if (k % 2 == 0) even_sum += ((k == 0 || k == K) ? 0.5 : 1.0) * v;
        peak = std::max(peak, std::abs(v));
        last = std::abs(v);
    }
    if (last > tol * peak) {
        throw ConvergenceError("inverse_transform: g |c|^{-2} has not decayed at the end of the grid");
    }
    const double scale = 1.0 / (2.0 * std::numbers::pi);
    const double value = scale * step * sum;
    const double coarse = scale * 2.0 * step * even_sum;
    return {value, K % 2 == 0 ? std::abs(value - coarse) : 0.0, K + 1};
}

/// h(t) for a multiplier given as a callable; the lambda range grows until
/// the integrand decays.
template <class G>
Estimate<double> inverse_transform(G&& g, double alpha, double beta, double t, double step, double tol = 1e-10,
                                   double Lambda_max = 400.0) {
    JacobiParams jp{alpha, beta, 0.0};
    jp.validate();
    auto integrand = [&](double lam) {
        const double gl = g(lam);
        if (gl == 0.0) return 0.0;
        JacobiParams at = jp;
        at.lambda = lam;
        return gl * jacobi_function(at, t).real() * c_function_inv_sq(alpha, beta, lam);
    };
    Estimate<double> e = integrate_even_trapezoid(integrand, step, tol, 20.0, Lambda_max);
    const double scale = 1.0 / (2.0 * std::numbers::pi);
    return {scale * e.value, scale * e.abs_err, e.evaluations};
}

} // namespace berezin
