#pragma once

// Gamma, Beta, Pochhammer, Jacobi polynomials and the hypergeometric series
// 2F1 (real argument x <= 1) and 3F2 (unit argument) in double precision.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "berezin/errors.hpp"

namespace berezin {

using Complex = std::complex<double>;

/// Value of a summed series together with an estimate of its absolute error.
struct SeriesResult {
    Complex value{1.0, 0.0};
    std::size_t terms_used = 1;
    double tail_bound = 0.0;
};

struct SeriesOptions {
    double tol = 1e-12; // absolute, scaled by max(1, |sum|)
    std::size_t max_terms = 4'000'000;
    // 3F2(1): when an upper parameter exceeds a lower one by a small
    // non-negative integer, use the exact finite sum of Gauss values.
    bool reduce_integer_shift = true;
};

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kPi = std::numbers::pi;

inline bool is_nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

inline double distance_to_integer(Complex z) {
    return std::abs(z - Complex(std::round(z.real()), 0.0));
}

// log(sin w), stable when |Im w| is large. The imaginary part is only defined
// modulo 2*pi.
inline Complex log_sin(Complex w) {
    if (std::abs(w.imag()) < 1.0) {
        return std::log(std::sin(w));
    }
    if (w.imag() < 0.0) {
        return std::conj(log_sin(std::conj(w)));
    }
    // sin w = (i/2) e^{-iw} (1 - e^{2iw}),  |e^{2iw}| < e^{-2}
    const Complex i(0.0, 1.0);
    return -i * w + std::log(Complex(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * i * w));
}

// Lanczos approximation (g = 7, 9 terms), valid for Re(z) >= 0.5.
inline Complex log_gamma_lanczos(Complex z) {
    static constexpr std::array<double, 9> p = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1.0;
    Complex x = p[0];
    for (std::size_t i = 1; i < p.size(); ++i) {
        x += p[i] / (z + static_cast<double>(i));
    }
    const Complex t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Stirling series, used for |z| >= 10 and Re(z) >= 0.5.
inline Complex log_gamma_stirling(Complex z) {
    // B_{2k} / (2k (2k-1)) for k = 1..10
    static constexpr std::array<double, 10> c = {
        1.0 / 12.0,          -1.0 / 360.0,          1.0 / 1260.0,
        -1.0 / 1680.0,       1.0 / 1188.0,          -691.0 / 360360.0,
        1.0 / 156.0,         -3617.0 / 122400.0,    43867.0 / 244188.0,
        -174611.0 / 125400.0};
    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    Complex corr = 0.0;
    Complex pw = inv;
    for (double ck : c) {
        corr += ck * pw;
        pw *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + corr;
}

} // namespace detail

/// log Gamma(z). The imaginary part is reduced to (-pi, pi], so the result is
/// the principal logarithm of Gamma(z) and exp(log_gamma(z)) == Gamma(z).
inline Complex log_gamma(Complex z) {
    if (detail::is_nonpositive_integer(z)) {
        throw PoleError("log_gamma: pole at non-positive integer " + std::to_string(z.real()));
    }
    Complex r;
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        r = std::log(detail::kPi) - detail::log_sin(detail::kPi * z) - log_gamma(1.0 - z);
    } else if (std::abs(z) >= 10.0) {
        r = detail::log_gamma_stirling(z);
    } else {
        r = detail::log_gamma_lanczos(z);
    }
    return {r.real(), std::remainder(r.imag(), 2.0 * detail::kPi)};
}

/// log|Gamma(x)| for real x.
inline double log_gamma(double x) { return log_gamma(Complex(x, 0.0)).real(); }

inline Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

inline double gamma(double x) {
    if (detail::is_nonpositive_integer(Complex(x, 0.0))) {
        throw PoleError("gamma: pole at non-positive integer " + std::to_string(x));
    }
    return std::tgamma(x);
}

/// 1/Gamma(z); zero at the poles of Gamma.
inline Complex reciprocal_gamma(Complex z) {
    if (detail::is_nonpositive_integer(z)) {
        return 0.0;
    }
    return std::exp(-log_gamma(z));
}

/// prod Gamma(num_i) / prod Gamma(den_j), evaluated through log-gamma sums.
/// A pole in the denominator makes the product zero.
inline Complex gamma_product(std::initializer_list<Complex> num, std::initializer_list<Complex> den) {
    Complex acc = 0.0;
    for (Complex d : den) {
        if (detail::is_nonpositive_integer(d)) {
            return 0.0;
        }
        acc -= log_gamma(d);
    }
    for (Complex n : num) {
        acc += log_gamma(n);
    }
    return std::exp(acc);
}

/// Rising factorial (a)_k.
inline Complex pochhammer(Complex a, std::size_t k) {
    Complex r = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
        r *= a + static_cast<double>(j);
    }
    return r;
}

inline Complex beta_fn(Complex a, Complex b) {
    if (detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b) ||
        detail::is_nonpositive_integer(a + b)) {
        throw PoleError("beta_fn: argument at a pole of Gamma");
    }
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

/// Jacobi polynomial P_m^{(alpha,beta)}(x) by the three-term recurrence.
inline double jacobi_poly(int m, double alpha, double beta, double x) {
    if (m < 0) {
        throw DomainError("jacobi_poly: negative degree");
    }
    if (!(alpha > -1.0)) {
        throw DomainError("jacobi_poly: alpha must exceed -1");
    }
    if (m == 0) {
        return 1.0;
    }
    const double ab = alpha + beta;
    double p0 = 1.0;
    double p1 = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0;
    for (int k = 2; k <= m; ++k) {
        const double s = 2.0 * k + ab;
        const double lead = 2.0 * k * (k + ab) * (s - 2.0);
        if (lead == 0.0) {
            // alpha + beta at a degenerate negative integer: use the explicit
            // hypergeometric sum instead.
            double term = 1.0;
            double sum = 1.0;
            const double y = (1.0 - x) / 2.0;
            for (int j = 0; j < m; ++j) {
                term *= (j - m) * (m + ab + 1.0 + j) / ((alpha + 1.0 + j) * (j + 1.0)) * y;
                sum += term;
            }
            double scale = 1.0;
            for (int j = 1; j <= m; ++j) {
                scale *= (alpha + j) / j;
            }
            return scale * sum;
        }
        const double p2 =
            ((s - 1.0) * (s * (s - 2.0) * x + alpha * alpha - beta * beta) * p1 -
             2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s * p0) /
            lead;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

namespace detail {

// Direct 2F1 series at real z with |z| < 1. Stops once a geometric majorant
// of the remaining terms is below tolerance.
inline SeriesResult series_2f1(Complex a, Complex b, Complex c, double z, const SeriesOptions& opt) {
    Complex term = 1.0;
    Complex sum = 0.0;
    double abs_sum = 0.0;
    for (std::size_t k = 0;; ++k) {
        sum += term;
        abs_sum += std::abs(term);
        const double kd = static_cast<double>(k);
        const Complex next = term * ((a + kd) * (b + kd)) / ((c + kd) * (kd + 1.0)) * z;
        const double roundoff = 4.0 * kEps * abs_sum;
        if (next == 0.0) {
            return {sum, k + 1, roundoff};
        }
        const double j = kd + 1.0;
        if (c.real() + j > 0.0) {
            const double r = std::abs(z) * (1.0 + std::abs(a - 1.0) / (j + 1.0)) *
                             (1.0 + std::abs(b - c) / (c.real() + j));
            if (r < 1.0) {
                const double tail = std::abs(next) / (1.0 - r);
                if (tail <= opt.tol * std::max(1.0, std::abs(sum))) {
                    return {sum, k + 1, tail + roundoff};
                }
            }
        }
        if (k + 1 >= opt.max_terms) {
            throw ConvergenceError("2F1 series: term limit reached");
        }
        term = next;
    }
}

// Average of f over a circle of radius delta around the base point; exact for
// analytic f up to terms of order delta^K. Used to step around removable
// singularities of connection formulas.
template <class F>
SeriesResult circle_average(F&& f, double delta) {
    constexpr int K = 32;
    Complex full = 0.0;
    Complex half = 0.0;
    double tail = 0.0;
    std::size_t terms = 0;
    for (int k = 0; k < K; ++k) {
        const Complex shift = std::polar(delta, 2.0 * kPi * k / K);
        const SeriesResult r = f(shift);
        full += r.value;
        if (k % 2 == 0) {
            half += r.value;
        }
        tail = std::max(tail, r.tail_bound);
        terms += r.terms_used;
    }
    full /= static_cast<double>(K);
    half /= static_cast<double>(K / 2);
    return {full, terms, tail + std::abs(full - half)};
}

// 2F1 for x < -1 through the connection formula in 1/(1-x).
inline SeriesResult connection_2f1_inf(Complex a, Complex b, Complex c, double x, const SeriesOptions& opt) {
    if (distance_to_integer(b - a) < 0.05) {
        return circle_average(
            [&](Complex db) { return connection_2f1_inf(a, b + db, c, x, opt); }, 0.1);
    }
    const double w = 1.0 / (1.0 - x);
    const double log1mx = std::log1p(-x);
    const Complex c1 = gamma_product({c, b - a}, {b, c - a}) * std::exp(-a * log1mx);
    const Complex c2 = gamma_product({c, a - b}, {a, c - b}) * std::exp(-b * log1mx);
    const SeriesResult s1 = series_2f1(a, c - b, a - b + 1.0, w, opt);
    const SeriesResult s2 = series_2f1(b, c - a, b - a + 1.0, w, opt);
    const Complex v1 = c1 * s1.value;
    const Complex v2 = c2 * s2.value;
    const double err = std::abs(c1) * s1.tail_bound + std::abs(c2) * s2.tail_bound +
                       16.0 * kEps * (std::abs(v1) + std::abs(v2));
    return {v1 + v2, s1.terms_used + s2.terms_used, err};
}

// 2F1 for 1/2 < x < 1 through the connection formula in 1-x.
inline SeriesResult connection_2f1_one(Complex a, Complex b, Complex c, double x, const SeriesOptions& opt) {
    const Complex e = c - a - b;
    if (distance_to_integer(e) < 0.05) {
        return circle_average(
            [&](Complex da) { return connection_2f1_one(a + da, b, c, x, opt); }, 0.1);
    }
    const double y = 1.0 - x;
    const Complex c1 = gamma_product({c, e}, {c - a, c - b});
    const Complex c2 = gamma_product({c, -e}, {a, b}) * std::exp(e * std::log(y));
    const SeriesResult s1 = series_2f1(a, b, 1.0 - e, y, opt);
    const SeriesResult s2 = series_2f1(c - a, c - b, 1.0 + e, y, opt);
    const Complex v1 = c1 * s1.value;
    const Complex v2 = c2 * s2.value;
    const double err = std::abs(c1) * s1.tail_bound + std::abs(c2) * s2.tail_bound +
                       16.0 * kEps * (std::abs(v1) + std::abs(v2));
    return {v1 + v2, s1.terms_used + s2.terms_used, err};
}

} // namespace detail

/// Gauss hypergeometric function 2F1(a, b; c; x) for real x <= 1.
///
/// 0 <= x <= 1/2 is summed directly; -1 <= x < 0 goes through the Pfaff
/// transformation to x/(x-1) in (0, 1/2]; x < -1 and 1/2 < x < 1 use the
/// connection formulas in 1/(1-x) and 1-x. x = 1 is Gauss's closed form.
inline SeriesResult gauss_2f1(Complex a, Complex b, Complex c, double x, const SeriesOptions& opt = {}) {
    if (detail::is_nonpositive_integer(c)) {
        throw PoleError("gauss_2f1: c is a non-positive integer");
    }
    if (!(x <= 1.0)) {
        throw DomainError("gauss_2f1: argument must satisfy x <= 1");
    }
    const bool terminating = detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b);
    if (x == 1.0) {
        const Complex e = c - a - b;
        if (terminating && e.real() <= 0.0) {
            return detail::series_2f1(a, b, c, x, opt);
        }
        if (e.real() <= 0.0) {
            throw DivergenceError("gauss_2f1: Re(c - a - b) <= 0 at x = 1");
        }
        const Complex v = gamma_product({c, e}, {c - a, c - b});
        return {v, 1, 64.0 * detail::kEps * std::abs(v)};
    }
    if (terminating || (x >= 0.0 && x <= 0.5)) {
        return detail::series_2f1(a, b, c, x, opt);
    }
    if (x < -1.0) {
        return detail::connection_2f1_inf(a, b, c, x, opt);
    }
    if (x < 0.0) {
        const double z = x / (x - 1.0);
        const Complex pre = std::exp(-a * std::log1p(-x));
        const SeriesResult s = detail::series_2f1(a, c - b, c, z, opt);
        return {pre * s.value, s.terms_used, std::abs(pre) * s.tail_bound};
    }
    return detail::connection_2f1_one(a, b, c, x, opt);
}

namespace detail {

// Coefficients e_k of the asymptotic expansion of the 3F2(1) tail:
//   sum_{k >= N} t_k  ~  t_N * N * sum_k e_k N^{-k}.
// Derived from R(N) = 1 + r(N) R(N+1) with the term ratio
//   r(N) = prod(N + a_i) / ((N + 1) prod(N + b_j)).
inline std::vector<Complex> tail_expansion_3f2(const std::array<Complex, 3>& a,
                                               const std::array<Complex, 2>& b, std::size_t K) {
    // g(x) = prod(1 + a_i x) / prod(1 + b_j x) as a truncated power series.
    std::vector<Complex> g(K + 2, 0.0);
    g[0] = 1.0;
    auto mul_linear = [&](Complex coef) {
        for (std::size_t i = g.size() - 1; i >= 1; --i) {
            g[i] += coef * g[i - 1];
        }
    };
    auto div_linear = [&](Complex coef) {
        for (std::size_t i = 1; i < g.size(); ++i) {
            g[i] -= coef * g[i - 1];
        }
    };
    for (Complex ai : a) mul_linear(ai);
    for (Complex bj : b) div_linear(bj);

    const Complex s = b[0] + b[1] - a[0] - a[1] - a[2];
    std::vector<Complex> e(K + 2, 0.0);
    // [x^k] F(x / (1 + x)) for F(y) = sum e_i y^i
    auto composed = [&](std::size_t k) {
        if (k == 0) return e[0];
        Complex tot = 0.0;
        double binom = 1.0; // C(k-1, k-i) as i runs down from k
        for (std::size_t i = k; i >= 1; --i) {
            const double sign = ((k - i) % 2 == 0) ? 1.0 : -1.0;
            tot += sign * binom * e[i];
            // C(k-1, k-i+1) = C(k-1, k-i) * (i-1) / (k-i+1)
            binom = binom * static_cast<double>(i - 1) / static_cast<double>(k - i + 1);
        }
        return tot;
    };
    for (std::size_t k = 0; k < K; ++k) {
        e[k] = 0.0;
        e[k + 1] = 0.0;
        Complex res = 0.0;
        for (std::size_t l = 0; l <= k + 1; ++l) {
            res += g[l] * composed(k + 1 - l);
        }
        e[k] = ((k == 0 ? 1.0 : 0.0) + res) / (s + static_cast<double>(k));
    }
    e.resize(K);
    return e;
}

// 3F2(b + k, A, B; b, D; 1) for an integer k >= 0 as a finite sum:
//   (b + k)_i / (b)_i = sum_r C(k, r) i!/(i - r)! (b + r)_{k - r} / (b)_k
// turns the series into k + 1 Gauss sums 2F1(A + r, B + r; D + r; 1).
inline std::optional<SeriesResult> integer_shift_3f2(const std::array<Complex, 3>& a,
                                                     const std::array<Complex, 2>& b, Complex s) {
    constexpr int kMaxShift = 64;
    int best = kMaxShift + 1;
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const Complex d = a[i] - b[j];
            const double k = std::round(d.real());
            if (d.imag() == 0.0 && d.real() == k && k >= 0.0 && k < best) {
                best = static_cast<int>(k);
                bi = i;
                bj = j;
            }
        }
    }
    if (best > kMaxShift) return std::nullopt;

    const int k = best;
    const Complex bb = b[bj];
    const Complex D = b[1 - bj];
    std::array<Complex, 2> rest{};
    for (std::size_t i = 0, r = 0; i < 3; ++i) {
        if (i != bi) rest[r++] = a[i];
    }
    const Complex A = rest[0];
    const Complex B = rest[1];

    const Complex pre = std::exp(log_gamma(D)) * reciprocal_gamma(D - A) * reciprocal_gamma(D - B);
    const Complex bk = pochhammer(bb, static_cast<std::size_t>(k));
    Complex sum = 0.0;
    double abs_sum = 0.0;
    double binom = 1.0;
    for (int r = 0; r <= k; ++r) {
        const Complex term = binom * pochhammer(bb + static_cast<double>(r), static_cast<std::size_t>(k - r)) / bk *
                             pochhammer(A, static_cast<std::size_t>(r)) *
                             pochhammer(B, static_cast<std::size_t>(r)) *
                             std::exp(log_gamma(s + static_cast<double>(k - r)));
        sum += term;
        abs_sum += std::abs(term);
        binom = binom * (k - r) / (r + 1.0);
    }
    const Complex value = pre * sum;
    return SeriesResult{value, static_cast<std::size_t>(k + 1), 64.0 * kEps * std::abs(pre) * abs_sum};
}

} // namespace detail

/// 3F2(a1, a2, a3; b1, b2; 1).
///
/// Unit-argument series converge only algebraically (terms ~ k^{-1-s} with
/// s = b1 + b2 - a1 - a2 - a3), so the partial sum is completed with an
/// asymptotic expansion of the tail in 1/N; tail_bound is the size of the
/// last retained correction plus accumulated rounding.
inline SeriesResult hyp_3f2_unit(Complex a1, Complex a2, Complex a3, Complex b1, Complex b2,
                                 const SeriesOptions& opt = {}) {
    if (detail::is_nonpositive_integer(b1) || detail::is_nonpositive_integer(b2)) {
        throw PoleError("hyp_3f2_unit: lower parameter is a non-positive integer");
    }
    const std::array<Complex, 3> a = {a1, a2, a3};
    const std::array<Complex, 2> b = {b1, b2};

    auto ratio = [&](double k) {
        return (k + a1) * (k + a2) * (k + a3) / ((k + 1.0) * (k + b1) * (k + b2));
    };

    if (std::any_of(a.begin(), a.end(), detail::is_nonpositive_integer)) {
        Complex t = 1.0;
        Complex sum = 0.0;
        double abs_sum = 0.0;
        std::size_t k = 0;
        for (; t != 0.0; ++k) {
            sum += t;
            abs_sum += std::abs(t);
            t *= ratio(static_cast<double>(k));
        }
        return {sum, k, 4.0 * detail::kEps * abs_sum};
    }

    const Complex s = b1 + b2 - a1 - a2 - a3;
    if (s.real() <= 0.0) {
        throw DivergenceError("hyp_3f2_unit: Re(b1 + b2 - a1 - a2 - a3) <= 0");
    }
    if (opt.reduce_integer_shift) {
        if (auto r = detail::integer_shift_3f2(a, b, s)) {
            return *r;
        }
    }

    double scale = 1.0;
    for (Complex z : a) scale = std::max(scale, std::abs(z));
    for (Complex z : b) scale = std::max(scale, std::abs(z));

    constexpr std::size_t kTailTerms = 30;
    const std::vector<Complex> e = detail::tail_expansion_3f2(a, b, kTailTerms);

    std::size_t N = std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(16.0 * scale)));
    Complex t = 1.0;
    Complex sum = 0.0;
    double abs_sum = 0.0;
    std::size_t k = 0;
    for (;;) {
        for (; k < N; ++k) {
            sum += t;
            abs_sum += std::abs(t);
            t *= ratio(static_cast<double>(k));
        }
        // asymptotic tail with optimal truncation
        const double Nd = static_cast<double>(N);
        Complex series = 0.0;
        double last = std::numeric_limits<double>::infinity();
        double pw = 1.0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            const Complex term = e[i] * pw;
            const double mag = std::abs(term);
            if (mag > last) break;
            series += term;
            last = mag;
            if (mag <= detail::kEps * std::abs(series)) break;
            pw /= Nd;
        }
        const Complex tail = t * Nd * series;
        const double trunc = std::abs(t) * Nd * last;
        const double roundoff = 4.0 * detail::kEps * (abs_sum + std::abs(tail));
        const Complex total = sum + tail;
        if (trunc <= opt.tol * std::max(1.0, std::abs(total))) {
            return {total, N, trunc + roundoff};
        }
        if (2 * N > opt.max_terms) {
            throw ConvergenceError("hyp_3f2_unit: tail expansion did not reach tolerance");
        }
        N *= 2;
    }
}

} // namespace berezin
