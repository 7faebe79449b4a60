#pragma once

// Reference implementations for the tests. Each one avoids the code path it
// checks: plain long double series, explicit finite sums, integral
// representations and finite differences.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "berezin/berezin.hpp"

namespace oracle {

using berezin::BallPoint;
using berezin::Complex;
using LComplex = std::complex<long double>;

/// Partial sum of sum_k prod (a_i)_k / prod (b_j)_k x^k / k!, k < N.
inline Complex hyp_partial(const std::vector<Complex>& a, const std::vector<Complex>& b, double x, std::size_t N) {
    LComplex term = 1.0L;
    LComplex sum = 0.0L;
    for (std::size_t k = 0; k < N; ++k) {
        sum += term;
        const long double kk = static_cast<long double>(k);
        for (const Complex& ai : a) term *= LComplex(ai) + kk;
        for (const Complex& bj : b) term /= LComplex(bj) + kk;
        term *= static_cast<long double>(x) / (kk + 1.0L);
    }
    return Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
}

/// Limit of partial sums S_N whose tail decays like N^{-s}, from S_N and S_{2N}.
inline Complex richardson_tail(const std::vector<Complex>& a, const std::vector<Complex>& b, std::size_t N, double s) {
    const Complex s1 = hyp_partial(a, b, 1.0, N);
    const Complex s2 = hyp_partial(a, b, 1.0, 2 * N);
    const double w = std::pow(2.0, s);
    return (w * s2 - s1) / (w - 1.0);
}

/// P_m^{(a,b)}(x) = sum_k C(m+a, m-k) C(m+b, k) ((x-1)/2)^k ((x+1)/2)^{m-k}.
inline double jacobi_explicit(int m, double a, double b, double x) {
    auto binom = [](long double top, int k) {
        long double r = 1.0L;
        for (int i = 0; i < k; ++i) r *= (top - i) / (i + 1.0L);
        return r;
    };
    const long double lo = 0.5L * (static_cast<long double>(x) - 1.0L);
    const long double hi = 0.5L * (static_cast<long double>(x) + 1.0L);
    long double s = 0.0L;
    for (int k = 0; k <= m; ++k) {
        s += binom(m + static_cast<long double>(a), m - k) * binom(m + static_cast<long double>(b), k) *
             std::pow(lo, k) * std::pow(hi, m - k);
    }
    return static_cast<double>(s);
}

/// Euler integral for 2F1(a, b; c; x), real parameters with c > b > 0 and x < 1:
/// Gamma(c)/(Gamma(b)Gamma(c-b)) int_0^1 t^{b-1}(1-t)^{c-b-1}(1-xt)^{-a} dt.
inline double euler_2f1(double a, double b, double c, double x) {
    auto f = [&](double t, double tc) {
        return std::exp((b - 1.0) * std::log(t) + (c - b - 1.0) * std::log(tc) - a * std::log1p(-x * t));
    };
    const double I = berezin::integrate_unit_tanh_sinh(f, 1e-14).value;
    return I * std::exp(std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b));
}

/// Legendre function P_s(cosh u) = pi^{-1} int_0^pi (cosh u + sinh u cos theta)^s dtheta.
inline Complex legendre_laplace(Complex s, double u) {
    berezin::QuadratureSpec q;
    q.tol = 1e-13;
    auto re = [&](double th) { return std::pow(Complex(std::cosh(u) + std::sinh(u) * std::cos(th)), s).real(); };
    auto im = [&](double th) { return std::pow(Complex(std::cosh(u) + std::sinh(u) * std::cos(th)), s).imag(); };
    const double r = berezin::integrate(re, 0.0, std::numbers::pi, q).value;
    const double i = berezin::integrate(im, 0.0, std::numbers::pi, q).value;
    return Complex(r, i) / std::numbers::pi;
}

/// Real 2n x 2n Jacobian determinant of map at w by central differences.
inline double jacobian_fd(const std::function<BallPoint(const BallPoint&)>& map, const BallPoint& w,
                          double h = 1e-5) {
    const int n = w.dim();
    const int d = 2 * n;
    std::vector<double> J(static_cast<std::size_t>(d * d));
    for (int c = 0; c < d; ++c) {
        std::vector<Complex> plus(w.coords().begin(), w.coords().end());
        std::vector<Complex> minus = plus;
        const Complex e = (c % 2 == 0) ? Complex(h, 0.0) : Complex(0.0, h);
        plus[c / 2] += e;
        minus[c / 2] -= e;
        const BallPoint fp = map(BallPoint(plus));
        const BallPoint fm = map(BallPoint(minus));
        for (int r = 0; r < n; ++r) {
            const Complex dv = (fp[r] - fm[r]) / (2.0 * h);
            J[(2 * r) * d + c] = dv.real();
            J[(2 * r + 1) * d + c] = dv.imag();
        }
    }
    double det = 1.0;
    for (int k = 0; k < d; ++k) {
        int piv = k;
        for (int r = k + 1; r < d; ++r) {
            if (std::abs(J[r * d + k]) > std::abs(J[piv * d + k])) piv = r;
        }
        if (piv != k) {
            for (int c = 0; c < d; ++c) std::swap(J[k * d + c], J[piv * d + c]);
            det = -det;
        }
        det *= J[k * d + k];
        if (J[k * d + k] == 0.0) return 0.0;
        for (int r = k + 1; r < d; ++r) {
            const double f = J[r * d + k] / J[k * d + k];
            for (int c = k; c < d; ++c) J[r * d + c] -= f * J[k * d + c];
        }
    }
    return det;
}

/// Uniform point of the ball of radius r_max in C^n.
inline BallPoint random_point(int n, double r_max, std::mt19937_64& gen) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Complex> c(static_cast<std::size_t>(n));
    double norm = 0.0;
    for (Complex& x : c) {
        x = Complex(g(gen), g(gen));
        norm += std::norm(x);
    }
    const double r = r_max * std::pow(u(gen), 1.0 / (2.0 * n));
    for (Complex& x : c) x *= r / std::sqrt(norm);
    return BallPoint(std::move(c));
}

inline double rel_err(double computed, double reference) {
    return std::abs(computed - reference) / std::max(std::abs(reference), 1e-300);
}

inline double rel_err(Complex computed, Complex reference) {
    return std::abs(computed - reference) / std::max(std::abs(reference), 1e-300);
}

} // namespace oracle
