#pragma once

// Composite Gauss-Legendre quadrature on finite and truncated semi-infinite
// intervals, plus the uniform trapezoidal rule used for spectral integrals.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "berezin/errors.hpp"

namespace berezin {

/// Scheme parameters shared by every 1-D integral of the library.
struct QuadratureSpec {
    double truncation_T = 12.0; // initial upper limit replacing infinity
    int panels = 24;
    int points_per_panel = 16;
    double tol = 1e-10;

    void validate() const {
        if (!(truncation_T > 0.0) || panels <= 0 || points_per_panel <= 0 || !(tol > 0.0)) {
            throw DomainError("QuadratureSpec: all fields must be positive");
        }
    }
};

/// Quadrature value with the difference between the last two refinements.
template <class T = double>
struct Estimate {
    T value{};
    double abs_err = 0.0;
    std::size_t evaluations = 0;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
class GaussLegendre {
public:
    explicit GaussLegendre(int n) : nodes_(static_cast<std::size_t>(n)), weights_(static_cast<std::size_t>(n)) {
        if (n <= 0) {
            throw DomainError("GaussLegendre: need at least one node");
        }
        const int half = (n + 1) / 2;
        for (int i = 0; i < half; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes_[static_cast<std::size_t>(i)] = -x;
            nodes_[static_cast<std::size_t>(n - 1 - i)] = x;
            weights_[static_cast<std::size_t>(i)] = w;
            weights_[static_cast<std::size_t>(n - 1 - i)] = w;
        }
    }

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return nodes_.size(); }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

namespace detail {

template <class F>
using integrand_t = std::decay_t<std::invoke_result_t<F&, double>>;

template <class T>
struct PanelSum {
    T value{};
    double l1 = 0.0;       // sum of |w f|
    double peak = 0.0;     // max |f| over all nodes
    double last_peak = 0.0; // max |f| over the nodes of the final panel
    std::size_t evaluations = 0;
};

// Composite rule; panels are accumulated left to right so results do not
// depend on evaluation order.
template <class F>
auto composite(F& f, double a, double b, int panels, const GaussLegendre& rule) {
    using T = integrand_t<F>;
    PanelSum<T> out;
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double mid = lo + 0.5 * width;
        T panel{};
        double panel_peak = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double w = 0.5 * width * rule.weights()[i];
            const T fx = f(mid + 0.5 * width * rule.nodes()[i]);
            panel += w * fx;
            const double mag = std::abs(fx);
            out.l1 += w * mag;
            panel_peak = std::max(panel_peak, mag);
        }
        out.value += panel;
        out.peak = std::max(out.peak, panel_peak);
        if (p == panels - 1) out.last_peak = panel_peak;
        out.evaluations += rule.size();
    }
    return out;
}

} // namespace detail

/// Integral of f over [a, b], doubling the panel count until two successive
/// values agree within tol relative to the L1 size of the integrand.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& q, int max_doublings = 10) {
    using T = detail::integrand_t<F>;
    q.validate();
    const GaussLegendre rule(q.points_per_panel);
    int panels = q.panels;
    auto prev = detail::composite(f, a, b, panels, rule);
    std::size_t evals = prev.evaluations;
    for (int d = 0; d < max_doublings; ++d) {
        panels *= 2;
        auto next = detail::composite(f, a, b, panels, rule);
        evals += next.evaluations;
        const double diff = std::abs(next.value - prev.value);
        if (diff <= q.tol * std::max(next.l1, 1e-300) || next.l1 == 0.0) {
            return Estimate<T>{next.value, diff, evals};
        }
        prev = next;
    }
    throw ConvergenceError("integrate: no convergence after panel doubling");
}

/// Integral of f over [0, infinity). The upper limit starts at
/// q.truncation_T and grows by half until |f| over the last panel is below
/// tol times the peak of |f|; a ConvergenceError is raised past T_max.
template <class F>
auto integrate_semi_infinite(F&& f, const QuadratureSpec& q, double T_max = 60.0) {
    using T = detail::integrand_t<F>;
    q.validate();
    const GaussLegendre rule(q.points_per_panel);
    const double width = q.truncation_T / q.panels;
    double upper = q.truncation_T;
    for (;;) {
        const int panels = std::max(1, static_cast<int>(std::ceil(upper / width)));
        auto probe = detail::composite(f, 0.0, upper, panels, rule);
        if (probe.last_peak <= q.tol * probe.peak || probe.peak == 0.0) {
            QuadratureSpec refined = q;
            refined.panels = panels;
            auto est = integrate(f, 0.0, upper, refined);
            est.evaluations += probe.evaluations;
            return Estimate<T>{est.value, est.abs_err, est.evaluations};
        }
        if (upper >= T_max) {
            throw ConvergenceError("integrate_semi_infinite: integrand has not decayed at T = " +
                                   std::to_string(upper));
        }
        upper = std::min(T_max, 1.5 * upper);
    }
}

/// Uniform trapezoidal rule on [0, Lambda] for an even, smooth integrand.
/// Lambda grows from Lambda0 in steps of Lambda0 until max |f| over the last
/// 16 nodes is below tol times the running peak of |f|. The error estimate
/// compares against the same rule at twice the step.
template <class F>
Estimate<double> integrate_even_trapezoid(F&& f, double step, double tol, double Lambda0 = 20.0,
                                          double Lambda_max = 400.0) {
    if (!(step > 0.0) || !(tol > 0.0) || !(Lambda0 > 0.0)) {
        throw DomainError("integrate_even_trapezoid: step, tol and Lambda0 must be positive");
    }
    constexpr std::size_t kWindow = 16;
    const std::size_t block =
        std::max<std::size_t>(2 * kWindow, 2 * static_cast<std::size_t>(std::ceil(Lambda0 / (2.0 * step))));
    const double f0 = f(0.0);
    double sum = 0.5 * f0;
    double even_sum = 0.5 * f0;
    double peak = std::abs(f0);
    std::size_t evals = 1;
    std::size_t k = 1;
    for (std::size_t last = block;; last += block) {
        double fk = 0.0;
        double window = 0.0;
        for (; k <= last; ++k) {
            fk = f(static_cast<double>(k) * step);
            ++evals;
            sum += fk;
            if (k % 2 == 0) even_sum += fk;
            peak = std::max(peak, std::abs(fk));
            if (k + kWindow > last) window = std::max(window, std::abs(fk));
        }
        if (window <= tol * peak) {
            const double value = step * (sum - 0.5 * fk);
            const double coarse = 2.0 * step * (even_sum - 0.5 * fk);
            return {value, std::abs(value - coarse), evals};
        }
        if (static_cast<double>(last) * step >= Lambda_max) {
            throw ConvergenceError("integrate_even_trapezoid: integrand has not decayed at " +
                                   std::to_string(static_cast<double>(last) * step));
        }
    }
}

/// Tanh-sinh rule on [0, 1] for integrands with algebraic endpoint
/// singularities. f is called as f(t, 1 - t) with both arguments accurate
/// near the endpoints. The step is halved until two levels agree within tol
/// relative to the integral's L1 size.
template <class F>
auto integrate_unit_tanh_sinh(F&& f, double tol = 1e-12, int max_levels = 12) {
    using T = std::decay_t<std::invoke_result_t<F&, double, double>>;
    if (!(tol > 0.0)) {
        throw DomainError("integrate_unit_tanh_sinh: tol must be positive");
    }
    constexpr double s_max = 6.0;
    const double half_pi = 0.5 * std::numbers::pi;
    std::size_t evals = 0;
    auto node = [&](double s, T& acc, double& l1) {
        const double u = half_pi * std::sinh(s);
        const double t = 1.0 / (1.0 + std::exp(-2.0 * u));
        const double tc = 1.0 / (1.0 + std::exp(2.0 * u));
        const double cu = std::cosh(u);
        const double w = half_pi * std::cosh(s) / (2.0 * cu * cu);
        if (w == 0.0 || t == 0.0 || tc == 0.0) return;
        const T v = f(t, tc);
        ++evals;
        acc += w * v;
        l1 += w * std::abs(v);
    };
    double h = 0.5;
    T sum{};
    double l1 = 0.0;
    node(0.0, sum, l1);
    for (int j = 1; j * h <= s_max; ++j) {
        node(j * h, sum, l1);
        node(-j * h, sum, l1);
    }
    T prev = h * sum;
    for (int level = 1; level <= max_levels; ++level) {
        h *= 0.5;
        // new nodes are the odd multiples of h
        for (int j = 1; j * h <= s_max; j += 2) {
            node(j * h, sum, l1);
            node(-j * h, sum, l1);
        }
        const T cur = h * sum;
        const double diff = std::abs(cur - prev);
        if (diff <= tol * std::max(h * l1, 1e-300)) {
            return Estimate<T>{cur, diff, evals};
        }
        prev = cur;
    }
    throw ConvergenceError("integrate_unit_tanh_sinh: no convergence after step halving");
}

} // namespace berezin
