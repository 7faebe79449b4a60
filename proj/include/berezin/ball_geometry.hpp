#pragma once

// Points of the open unit ball in C^n, its automorphisms, the Bergman
// geodesic distance and the invariant measure.

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "berezin/errors.hpp"
#include "berezin/special_functions.hpp"

namespace berezin {

/// Points with 1 - |z|^2 below this are rejected.
inline constexpr double kBoundaryGuard = 1e-12;

/// A point of the open unit ball of C^n, n >= 1.
class BallPoint {
public:
    explicit BallPoint(std::vector<Complex> coords) : coords_(std::move(coords)) {
        if (coords_.empty()) {
            throw DomainError("BallPoint: dimension must be at least 1");
        }
        double s = 0.0;
        for (const Complex& c : coords_) {
            s += std::norm(c);
        }
        norm_sq_ = s;
        if (!(1.0 - s >= kBoundaryGuard)) {
            throw DomainError("BallPoint: point is outside the ball or within 1e-12 of its boundary");
        }
    }

    BallPoint(std::initializer_list<Complex> coords) : BallPoint(std::vector<Complex>(coords)) {}

    static BallPoint origin(int n) {
        if (n < 1) throw DomainError("BallPoint: dimension must be at least 1");
        return BallPoint(std::vector<Complex>(static_cast<std::size_t>(n), 0.0));
    }

    /// The point (tanh(rho), 0, ..., 0), at geodesic distance rho from 0.
    static BallPoint on_axis(int n, double rho) {
        std::vector<Complex> c(static_cast<std::size_t>(n), 0.0);
        c.at(0) = std::tanh(rho);
        return BallPoint(std::move(c));
    }

    int dim() const { return static_cast<int>(coords_.size()); }
    const Complex& operator[](std::size_t k) const { return coords_[k]; }
    std::span<const Complex> coords() const { return coords_; }

    double norm_sq() const { return norm_sq_; }
    double defect() const { return 1.0 - norm_sq_; } // 1 - |z|^2

private:
    std::vector<Complex> coords_;
    double norm_sq_ = 0.0;
};

/// Image of a point under an automorphism with the real Jacobian determinant
/// of the map at that point.
struct AutomorphismResult {
    BallPoint image;
    double jacobian_ratio;
};

namespace detail {

inline void require_same_dim(const BallPoint& z, const BallPoint& w, const char* where) {
    if (z.dim() != w.dim()) {
        throw DomainError(std::string(where) + ": dimension mismatch");
    }
}

} // namespace detail

/// <z, w> = sum z_k conj(w_k)
inline Complex inner(const BallPoint& z, const BallPoint& w) {
    detail::require_same_dim(z, w, "inner");
    Complex s = 0.0;
    for (int k = 0; k < z.dim(); ++k) {
        s += z[k] * std::conj(w[k]);
    }
    return s;
}

/// The involution phi_a(z) = (a - P_a z - s Q_a z) / (1 - <z, a>),
/// s = sqrt(1 - |a|^2); phi_a swaps 0 and a.
inline BallPoint moebius_involution(const BallPoint& a, const BallPoint& z) {
    detail::require_same_dim(a, z, "moebius_involution");
    const int n = a.dim();
    const Complex za = inner(z, a);
    const double aa = a.norm_sq();
    const double s = std::sqrt(a.defect());
    const Complex denom = 1.0 - za;
    std::vector<Complex> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const Complex proj = aa > 0.0 ? za / aa * a[k] : Complex(0.0);
        out[static_cast<std::size_t>(k)] = (a[k] - proj - s * (z[k] - proj)) / denom;
    }
    return BallPoint(std::move(out));
}

/// The transvection phi_z(w) = (A_z w + z) / (1 + <w, z>) with
/// A_z = sqrt(1 - |z|^2) I + z z^* / (1 + sqrt(1 - |z|^2)); phi_z(0) = z.
inline BallPoint transvection(const BallPoint& z, const BallPoint& w) {
    detail::require_same_dim(z, w, "transvection");
    const int n = z.dim();
    const double s = std::sqrt(z.defect());
    const Complex wz = inner(w, z); // z^* w
    const Complex denom = 1.0 + wz;
    std::vector<Complex> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        out[static_cast<std::size_t>(k)] = (s * w[k] + z[k] * wz / (1.0 + s) + z[k]) / denom;
    }
    return BallPoint(std::move(out));
}

/// phi_z^{-1}(xi) = phi_{-z}(xi)
inline BallPoint transvection_inverse(const BallPoint& z, const BallPoint& xi) {
    std::vector<Complex> minus(z.coords().begin(), z.coords().end());
    for (Complex& c : minus) c = -c;
    return transvection(BallPoint(std::move(minus)), xi);
}

/// cosh^2 d(z, w) = |1 - <z, w>|^2 / ((1 - |z|^2)(1 - |w|^2))
inline double cosh_sq_distance(const BallPoint& z, const BallPoint& w) {
    const double num = std::norm(1.0 - inner(z, w));
    return std::max(1.0, num / (z.defect() * w.defect()));
}

/// 1 / cosh^2 d(z, w); avoids the division by a tiny defect product.
inline double sech_sq_distance(const BallPoint& z, const BallPoint& w) {
    const double num = std::norm(1.0 - inner(z, w));
    return std::min(1.0, z.defect() * w.defect() / num);
}

inline double geodesic_distance(const BallPoint& z, const BallPoint& w) {
    return std::acosh(std::sqrt(cosh_sq_distance(z, w)));
}

/// Density of the invariant measure against Lebesgue measure, without the
/// n!/pi^n factor: (1 - |z|^2)^{-(n+1)}.
inline double measure_weight(const BallPoint& z) {
    return std::pow(z.defect(), -(z.dim() + 1.0));
}

/// n!/pi^n, the normalization of dg = (n!/pi^n)(1 - |z|^2)^{-(n+1)} dV.
inline double invariant_measure_constant(int n) {
    return std::exp(log_gamma(n + 1.0) - n * std::log(std::numbers::pi));
}

/// Area 2 pi^n / Gamma(n) of the unit sphere S^{2n-1}.
inline double sphere_area(int n) {
    return 2.0 * std::exp(n * std::log(std::numbers::pi) - log_gamma(static_cast<double>(n)));
}

/// Density of (1 - |w|^2)^{-(n+1)} dV(w) in geodesic polar coordinates
/// w = tanh(rho) zeta, per unit surface measure of zeta:
/// sinh^{2n-1}(rho) cosh(rho).
inline double geodesic_sphere_density(int n, double rho) {
    return std::pow(std::sinh(rho), 2 * n - 1) * std::cosh(rho);
}

/// ((1 - |a|^2) / |1 - <a, xi>|^2)^{n+1}: the real Jacobian |Dw|/|Dxi| of
/// xi = phi_a(w) for the involution, and of w = phi_a^{-1}(xi) for the
/// transvection.
inline double jacobian_closed_form(const BallPoint& a, const BallPoint& xi) {
    detail::require_same_dim(a, xi, "jacobian_closed_form");
    return std::pow(a.defect() / std::norm(1.0 - inner(a, xi)), a.dim() + 1.0);
}

/// phi_a(w) with the real Jacobian determinant of phi_a at w.
inline AutomorphismResult moebius_with_jacobian(const BallPoint& a, const BallPoint& w) {
    return {moebius_involution(a, w), jacobian_closed_form(a, w)};
}

/// phi_z(w) with the real Jacobian determinant of phi_z at w.
inline AutomorphismResult transvection_with_jacobian(const BallPoint& z, const BallPoint& w) {
    const double jac = std::pow(z.defect() / std::norm(1.0 + inner(w, z)), z.dim() + 1.0);
    return {transvection(z, w), jac};
}

} // namespace berezin
