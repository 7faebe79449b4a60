#pragma once

// Verification harness behind the berezin_cli tool: builds CSV reports that
// compare computed values against references and maps failures to exit codes.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "berezin/berezin.hpp"

namespace berezin::cli {

enum class Command {
    verify_multiplier,
    verify_peetre,
    verify_identities,
    verify_geometry,
    verify_eigen,
    tabulate_multiplier,
    tabulate_kernel,
    apply,
};

inline constexpr std::array<std::pair<std::string_view, Command>, 8> kCommands{{
    {"verify-multiplier", Command::verify_multiplier},
    {"verify-peetre", Command::verify_peetre},
    {"verify-identities", Command::verify_identities},
    {"verify-geometry", Command::verify_geometry},
    {"verify-eigen", Command::verify_eigen},
    {"tabulate-multiplier", Command::tabulate_multiplier},
    {"tabulate-kernel", Command::tabulate_kernel},
    {"apply", Command::apply},
}};

inline Command parse_command(std::string_view name) {
    for (const auto& [key, cmd] : kCommands) {
        if (key == name) return cmd;
    }
    throw DomainError("unknown command '" + std::string(name) + "'");
}

inline std::string_view command_name(Command c) {
    for (const auto& [key, cmd] : kCommands) {
        if (cmd == c) return key;
    }
    return "?";
}

enum class Symbol { one, spherical, gaussian };

inline Symbol parse_symbol(std::string_view s) {
    if (s == "one") return Symbol::one;
    if (s == "spherical") return Symbol::spherical;
    if (s == "gaussian") return Symbol::gaussian;
    throw DomainError("unknown symbol '" + std::string(s) + "' (expected one, spherical or gaussian)");
}

struct RunConfig {
    Command command = Command::verify_multiplier;
    Params params{1, 2.0, 0};
    std::vector<double> lambda_grid{0.1, 0.5, 1.0, 2.0, 5.0};
    QuadratureSpec quad{};
    std::optional<double> tol; // per-command default when empty
    std::string output_path;   // stdout when empty

    int draws = 50;
    std::uint64_t seed = 20240917;
    std::vector<double> distances{0.0, 0.25, 0.5, 1.0, 1.5, 2.0};
    std::vector<double> point; // re, im pairs; origin when empty
    Symbol symbol = Symbol::one;
    std::size_t mc_samples = 200000;

    void validate() const {
        if (lambda_grid.empty()) throw DomainError("lambda grid must not be empty");
        for (double l : lambda_grid) {
            if (!std::isfinite(l) || l < 0.0) throw DomainError("lambda grid values must be finite and >= 0");
        }
        if (tol && !(*tol > 0.0)) throw DomainError("tol must be positive");
        if (draws < 1) throw DomainError("draws must be at least 1");
        if (distances.empty()) throw DomainError("distance grid must not be empty");
        for (double d : distances) {
            if (!std::isfinite(d) || d < 0.0) throw DomainError("distances must be finite and >= 0");
        }
        if (point.size() % 2 != 0) throw DomainError("point needs re,im pairs");
        quad.validate();
    }
};

struct ReportRow {
    std::string inputs;
    double lambda = 0.0;
    double computed = 0.0;
    double reference = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    bool pass = false;
};

struct Report {
    bool lambda_schema = false;
    std::vector<ReportRow> rows;

    bool all_pass() const {
        return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
    }
};

inline constexpr double kRelFloor = 1e-300;

/// rel_err = abs_err / max(|reference|, 1e-300). A row passes when
/// rel_err <= tol, or abs_err <= tol for a zero reference.
inline ReportRow make_row(std::string inputs, double computed, double reference, double tol,
                          std::optional<double> abs_err = std::nullopt) {
    ReportRow r;
    r.inputs = std::move(inputs);
    r.computed = computed;
    r.reference = reference;
    r.abs_err = abs_err ? *abs_err : std::abs(computed - reference);
    r.rel_err = r.abs_err / std::max(std::abs(reference), kRelFloor);
    r.pass = std::isfinite(r.abs_err) && (reference == 0.0 ? r.abs_err <= tol : r.rel_err <= tol);
    return r;
}

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline std::string to_csv(const Report& rep) {
    std::ostringstream os;
    if (rep.lambda_schema) {
        os << "lambda,f_numeric,f_closed,abs_err,rel_err,status\n";
    } else {
        os << "inputs,computed,reference,abs_err,rel_err,status\n";
    }
    for (const ReportRow& r : rep.rows) {
        os << (rep.lambda_schema ? fmt17(r.lambda) : r.inputs) << ',' << fmt17(r.computed) << ','
           << fmt17(r.reference) << ',' << fmt17(r.abs_err) << ',' << fmt17(r.rel_err) << ','
           << (r.pass ? "pass" : "fail") << '\n';
    }
    return os.str();
}

namespace detail {

inline std::string params_key(const Params& p) {
    return "n=" + std::to_string(p.n) + ";nu=" + fmt_short(p.nu) + ";m=" + std::to_string(p.m);
}

// Uniform point of the ball of C^n with |z| <= r_max.
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

inline double point_distance(const BallPoint& a, const BallPoint& b) {
    double s = 0.0;
    for (int k = 0; k < a.dim(); ++k) s += std::norm(a[k] - b[k]);
    return std::sqrt(s);
}

// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(std::vector<double> a, int d) {
    double det = 1.0;
    for (int c = 0; c < d; ++c) {
        int piv = c;
        for (int r = c + 1; r < d; ++r) {
            if (std::abs(a[r * d + c]) > std::abs(a[piv * d + c])) piv = r;
        }
        if (a[piv * d + c] == 0.0) return 0.0;
        if (piv != c) {
            for (int k = 0; k < d; ++k) std::swap(a[c * d + k], a[piv * d + k]);
            det = -det;
        }
        det *= a[c * d + c];
        for (int r = c + 1; r < d; ++r) {
            const double f = a[r * d + c] / a[c * d + c];
            for (int k = c; k < d; ++k) a[r * d + k] -= f * a[c * d + k];
        }
    }
    return det;
}

// Real Jacobian determinant of a self-map of the ball at x by central
// differences in the 2n real coordinates.
template <class Map>
double jacobian_fd(Map&& map, const BallPoint& x, double h = 1e-5) {
    const int n = x.dim();
    const int d = 2 * n;
    std::vector<double> J(static_cast<std::size_t>(d * d));
    for (int c = 0; c < d; ++c) {
        std::vector<Complex> plus(x.coords().begin(), x.coords().end());
        std::vector<Complex> minus = plus;
        const Complex e = (c % 2 == 0) ? Complex(h, 0.0) : Complex(0.0, h);
        plus[static_cast<std::size_t>(c / 2)] += e;
        minus[static_cast<std::size_t>(c / 2)] -= e;
        const BallPoint fp = map(BallPoint(plus));
        const BallPoint fm = map(BallPoint(minus));
        for (int r = 0; r < d; ++r) {
            const Complex diff = fp[static_cast<std::size_t>(r / 2)] - fm[static_cast<std::size_t>(r / 2)];
            J[r * d + c] = ((r % 2 == 0) ? diff.real() : diff.imag()) / (2.0 * h);
        }
    }
    return std::abs(determinant(std::move(J), d));
}

inline double row_tol(const RunConfig& cfg, double fallback) { return cfg.tol ? *cfg.tol : fallback; }

inline Report run_verify_multiplier(const RunConfig& cfg) {
    Report rep{true, {}};
    for (double lam : cfg.lambda_grid) {
        const double numeric = multiplier_f_quadrature(cfg.params, lam, cfg.quad).value;
        const double closed = multiplier_f(cfg.params, lam);
        ReportRow r = make_row(params_key(cfg.params), numeric, closed, row_tol(cfg, 1e-6));
        r.lambda = lam;
        rep.rows.push_back(r);
    }
    return rep;
}

inline Report run_tabulate_multiplier(const RunConfig& cfg) {
    Report rep{true, {}};
    cfg.params.validate();
    for (double lam : cfg.lambda_grid) {
        const JacobiParams jp{cfg.params.n - 1.0, 0.0, lam};
        const RadialFunction phi{[&](double rho) { return jacobi_function(jp, rho).real(); }, 0.0};
        const double numeric = apply_berezin_radial(cfg.params, phi, cfg.quad).value;
        const double closed = multiplier_f(cfg.params, lam);
        ReportRow r = make_row(params_key(cfg.params), numeric, closed, row_tol(cfg, 1e-5));
        r.lambda = lam;
        rep.rows.push_back(r);
    }
    return rep;
}

inline Report run_verify_peetre(const RunConfig& cfg) {
    if (cfg.params.m != 0) {
        throw DomainError("verify-peetre requires m = 0");
    }
    Report rep{true, {}};
    for (double lam : cfg.lambda_grid) {
        const double chain = multiplier_f(cfg.params, lam);
        const double peetre = multiplier_f0_peetre(cfg.params.n, cfg.params.nu, lam);
        ReportRow r = make_row(params_key(cfg.params), chain, peetre, row_tol(cfg, 1e-10));
        r.lambda = lam;
        rep.rows.push_back(r);
    }
    return rep;
}

inline Report run_tabulate_kernel(const RunConfig& cfg) {
    Report rep{false, {}};
    for (double d : cfg.distances) {
        const double spectral = kernel_from_spectral_radial(cfg.params, d, cfg.quad).value;
        const double direct = berezin_kernel_radial(cfg.params, d);
        rep.rows.push_back(make_row(params_key(cfg.params) + ";d=" + fmt_short(d), spectral, direct,
                                    row_tol(cfg, 1e-3)));
    }
    return rep;
}

} // namespace detail

/// Gauss summation, Euler integral, the Beta-type integral with a 2F1
/// value, the Beta integral of a 2F1 giving a 3F2, and the 3F2 collapse,
/// each over cfg.draws random admissible parameter sets.
inline Report run_verify_identities(const RunConfig& cfg) {
    
    Report rep{false, {}};
    const double tol = detail::row_tol(cfg, 1e-8);
    std::mt19937_64 gen(cfg.seed);
    auto U = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
    SeriesOptions plain;
    plain.reduce_integer_shift = false;

    for (int k = 0; k < cfg.draws; ++k) {
        const double a = U(-0.8, 2.0);
        const double b = U(-0.8, 2.0);
        const double c = std::max(a + b + U(0.5, 2.5), 0.2);
        const Complex closed = gauss_2f1(a, b, c, 1.0).value;
        const Complex summed = hyp_3f2_unit(a, b, 1.5, c, 1.5, plain).value;
        rep.rows.push_back(make_row("identity=gauss;a=" + fmt_short(a) + ";b=" + fmt_short(b) + ";c=" + fmt_short(c),
                                    closed.real(), summed.real(), tol, std::abs(closed - summed)));
    }
    for (int k = 0; k < cfg.draws; ++k) {
        const double a = U(-1.0, 2.0);
        const double b = U(0.3, 2.0);
        const double c = b + U(0.3, 2.0);
        const double x = U(-0.95, 0.95);
        const Estimate<double> integral = integrate_unit_tanh_sinh(
            [&](double t, double tc) { return std::pow(t, b - 1.0) * std::pow(tc, c - b - 1.0) * std::pow(1.0 - x * t, -a); },
            1e-13);
        const double euler = integral.value / beta_fn(b, c - b).real();
        const Complex f = gauss_2f1(a, b, c, x).value;
        rep.rows.push_back(make_row("identity=euler;a=" + fmt_short(a) + ";b=" + fmt_short(b) + ";c=" + fmt_short(c) +
                                        ";x=" + fmt_short(x),
                                    f.real(), euler, tol, std::abs(f - euler)));
    }
    for (int k = 0; k < cfg.draws; ++k) {
        // int_0^inf x^{l0-1} (1+x)^a (1+alpha x)^b dx = B(l0, -(a+b)-l0) 2F1(-b, l0; -(a+b); 1-alpha)
        const double l0 = U(0.3, 3.0);
        const double delta = U(0.3, 2.0);
        const double b = U(-2.0, 0.5);
        const double a = -(l0 + delta) - b;
        const double alpha = U(0.2, 3.0);
        const Estimate<double> integral = integrate_unit_tanh_sinh(
            [&](double t, double tc) {
                return std::pow(t, l0 - 1.0) * std::pow(tc, -l0 - 1.0 - a - b) * std::pow(tc + alpha * t, b);
            },
            1e-13);
        const Complex closed = beta_fn(l0, -(a + b) - l0) * gauss_2f1(-b, l0, -(a + b), 1.0 - alpha).value;
        rep.rows.push_back(make_row("identity=beta_type;l0=" + fmt_short(l0) + ";a=" + fmt_short(a) +
                                        ";b=" + fmt_short(b) + ";alpha=" + fmt_short(alpha),
                                    closed.real(), integral.value, tol, std::abs(closed - integral.value)));
    }
    for (int k = 0; k < cfg.draws; ++k) {
        // int_0^1 u^{a-1} (1-u)^{b-1} 2F1(al, be; ga; u) du = B(a, b) 3F2(al, be, a; ga, a+b; 1)
        const double a = U(0.3, 2.0);
        const double b = U(0.3, 2.0);
        const double al = U(-0.5, 1.5);
        const double be = U(-0.5, 1.5);
        const double ga = std::max(al + be + U(0.3, 2.0), 0.3);
        const Estimate<double> integral = integrate_unit_tanh_sinh(
            [&](double u, double uc) {
                return std::pow(u, a - 1.0) * std::pow(uc, b - 1.0) * gauss_2f1(al, be, ga, u).value.real();
            },
            1e-12);
        const Complex closed = beta_fn(a, b) * hyp_3f2_unit(al, be, a, ga, a + b).value;
        rep.rows.push_back(make_row("identity=beta_3f2;a=" + fmt_short(a) + ";b=" + fmt_short(b) +
                                        ";alpha=" + fmt_short(al) + ";beta=" + fmt_short(be) +
                                        ";gamma=" + fmt_short(ga),
                                    closed.real(), integral.value, tol, std::abs(closed - integral.value)));
    }
    for (int k = 0; k < cfg.draws; ++k) {
        const Complex a1(U(0.2, 2.0), U(-3.0, 3.0));
        const Complex a2 = std::conj(a1) + U(-0.5, 0.5);
        const Complex e(U(0.5, 3.0), U(-1.0, 1.0));
        const Complex c = a1 + a2 + Complex(U(0.5, 2.5), 0.0);
        const Complex lhs = hyp_3f2_unit(a1, a2, e, c, e, plain).value;
        const Complex rhs = gauss_2f1(a1, a2, c, 1.0).value;
        rep.rows.push_back(make_row("identity=collapse;a1=" + fmt_short(a1.real()) + "+" + fmt_short(a1.imag()) +
                                        "i;e=" + fmt_short(e.real()) + "+" + fmt_short(e.imag()) + "i",
                                    std::abs(lhs), std::abs(rhs), tol, std::abs(lhs - rhs)));
    }
    return rep;
}

/// Involution, the inner-product identity, distance invariance, Jacobians
/// against finite differences and the change-of-variables measure identity.
inline Report run_verify_geometry(const RunConfig& cfg) {
    
    Report rep{false, {}};
    const double tol = detail::row_tol(cfg, 1e-12);
    const double fd_tol = detail::row_tol(cfg, 1e-5);
    const double measure_tol = detail::row_tol(cfg, 1e-10);
    std::mt19937_64 gen(cfg.seed);
    for (int k = 0; k < cfg.draws; ++k) {
        const int n = 1 + k % 3;
        const std::string key = "n=" + std::to_string(n) + ";draw=" + std::to_string(k);
        const BallPoint a = detail::random_point(n, 0.9, gen);
        const BallPoint z = detail::random_point(n, 0.9, gen);
        const BallPoint w = detail::random_point(n, 0.9, gen);

        const BallPoint back = moebius_involution(a, moebius_involution(a, z));
        rep.rows.push_back(make_row("check=involution;" + key, detail::point_distance(back, z), 0.0, tol));

        const BallPoint fz = moebius_involution(a, z);
        const BallPoint fw = moebius_involution(a, w);
        const Complex lhs = 1.0 - inner(fz, fw);
        const Complex rhs = (1.0 - inner(a, a)) * (1.0 - inner(z, w)) / ((1.0 - inner(z, a)) * (1.0 - inner(a, w)));
        rep.rows.push_back(make_row("check=inner_identity;" + key, std::abs(lhs), std::abs(rhs), tol, std::abs(lhs - rhs)));

        const double d = geodesic_distance(z, w);
        rep.rows.push_back(make_row("check=distance_moebius;" + key, geodesic_distance(fz, fw), d, tol));
        rep.rows.push_back(make_row("check=distance_transvection;" + key,
                                    geodesic_distance(transvection(a, z), transvection(a, w)), d, tol));

        const BallPoint xi = w;
        const BallPoint pre = transvection_inverse(z, xi);
        rep.rows.push_back(make_row("check=measure;" + key, measure_weight(pre) * jacobian_closed_form(z, xi),
                                    measure_weight(xi), measure_tol));

        if (n <= 2) {
            const double j_moebius = detail::jacobian_fd([&](const BallPoint& x) { return moebius_involution(a, x); }, xi);
            rep.rows.push_back(make_row("check=jacobian_moebius;" + key, j_moebius, jacobian_closed_form(a, xi), fd_tol));
            const double j_trans = detail::jacobian_fd([&](const BallPoint& x) { return transvection(a, x); }, xi);
            rep.rows.push_back(make_row("check=jacobian_transvection;" + key, j_trans,
                                        transvection_with_jacobian(a, xi).jacobian_ratio, fd_tol));
        }
    }
    return rep;
}

/// Eigen-equation, norms, reproducing property and orthogonality of the
/// n = 1 Landau-level eigenfunctions.
inline Report run_verify_eigen(const RunConfig& cfg) {
    const Params& p = cfg.params;
    p.validate();
    if (p.n != 1) {
        throw DomainError("verify-eigen requires n = 1");
    }
    Report rep{false, {}};
    std::mt19937_64 gen(cfg.seed);
    const std::string pk = detail::params_key(p);

    std::vector<Eigenfunction1D> funcs;
    for (int q = 0; q <= std::min(p.m, 2); ++q) {
        for (int pp = 0; pp <= 2; ++pp) {
            if (pp * q == 0) funcs.push_back({pp, q, p});
        }
    }
    auto fkey = [&](const Eigenfunction1D& e) {
        return pk + ";p=" + std::to_string(e.p) + ";q=" + std::to_string(e.q);
    };

    const double eps = eigenvalue(p);
    for (const Eigenfunction1D& e : funcs) {
        const ComplexBallFunction psi = [&](const BallPoint& x) { return eigenfunction_value(e, x); };
        for (int k = 0; k < cfg.draws; ++k) {
            const BallPoint z = detail::random_point(1, 0.9, gen);
            const Complex lhs = magnetic_operator_apply(p, psi, z);
            const Complex rhs = eps * psi(z);
            rep.rows.push_back(make_row("check=eigen;" + fkey(e) + ";draw=" + std::to_string(k), std::abs(lhs),
                                        std::abs(rhs), detail::row_tol(cfg, 1e-4), std::abs(lhs - rhs)));
        }
        const double nq = l2_inner_n1(e, e, cfg.quad).real();
        rep.rows.push_back(make_row("check=norm;" + fkey(e), nq, eigenfunction_norm_sq_closed(e),
                                    detail::row_tol(cfg, 1e-6)));
        for (int k = 0; k < 3; ++k) {
            const BallPoint z = detail::random_point(1, 0.7, gen);
            const Complex lhs = reproducing_integral(p, e, z, cfg.quad);
            const Complex rhs = eigenfunction_value(e, z);
            rep.rows.push_back(make_row("check=reproducing;" + fkey(e) + ";draw=" + std::to_string(k), std::abs(lhs),
                                        std::abs(rhs), detail::row_tol(cfg, 1e-4), std::abs(lhs - rhs)));
        }
    }

    // orthogonality across all admissible levels m' <= min(m_max, 2)
    std::vector<Eigenfunction1D> all;
    for (int mm = 0; mm <= 2 && mm < p.nu - 0.5; ++mm) {
        const Params pm{1, p.nu, mm};
        for (int q = 0; q <= mm; ++q) {
            for (int pp = 0; pp <= 2; ++pp) {
                if (pp * q == 0) all.push_back({pp, q, pm});
            }
        }
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const double ni = eigenfunction_norm_sq_closed(all[i]);
            const double nj = eigenfunction_norm_sq_closed(all[j]);
            const double ip = std::abs(l2_inner_n1(all[i], all[j], cfg.quad)) / std::sqrt(ni * nj);
            rep.rows.push_back(make_row("check=orthogonality;m1=" + std::to_string(all[i].params.m) + ";p1=" +
                                            std::to_string(all[i].p) + ";q1=" + std::to_string(all[i].q) +
                                            ";m2=" + std::to_string(all[j].params.m) + ";p2=" +
                                            std::to_string(all[j].p) + ";q2=" + std::to_string(all[j].q),
                                        ip, 0.0, detail::row_tol(cfg, 1e-6)));
        }
    }
    return rep;
}

/// Berezin transform of a built-in symbol at cfg.point.
inline Report run_apply(const RunConfig& cfg) {
    const Params& p = cfg.params;
    p.validate();
    std::vector<Complex> coords(static_cast<std::size_t>(p.n), 0.0);
    if (!cfg.point.empty()) {
        if (cfg.point.size() != 2 * static_cast<std::size_t>(p.n)) {
            throw DomainError("point must have 2n components (re,im pairs)");
        }
        for (int k = 0; k < p.n; ++k) coords[k] = Complex(cfg.point[2 * k], cfg.point[2 * k + 1]);
    }
    const BallPoint z(coords);
    std::string zkey = ";z=";
    for (std::size_t k = 0; k < cfg.point.size(); ++k) zkey += (k ? " " : "") + fmt_short(cfg.point[k]);
    if (cfg.point.empty()) zkey += "0";
    const std::string base = detail::params_key(p) + zkey;
    const double tol = detail::row_tol(cfg, 1e-5);
    const bool grid = p.n <= 2;

    Report rep{false, {}};
    auto evaluate = [&](const BallFunction& phi, const std::string& key, std::optional<double> reference) {
        if (grid) {
            BallGrid g;
            if (p.n == 2) g.angular = 24;
            const RouteResult r = apply_berezin_routes(p, phi, z, cfg.quad, g);
            rep.rows.push_back(make_row(key + ";route=pullback", r.pullback, reference ? *reference : r.direct, tol));
            return;
        }
        const Estimate<double> mc = apply_berezin_monte_carlo(p, phi, z, cfg.mc_samples, cfg.seed);
        double ref = 0.0;
        double err = mc.abs_err;
        if (reference) {
            ref = *reference;
        } else {
            const Estimate<double> other = apply_berezin_monte_carlo(p, phi, z, cfg.mc_samples, cfg.seed + 1);
            ref = other.value;
            err = std::hypot(mc.abs_err, other.abs_err);
        }
        const double mc_tol = std::max(tol, 5.0 * err / std::max(std::abs(ref), 1e-300));
        rep.rows.push_back(make_row(key + ";route=monte_carlo", mc.value, ref, mc_tol));
    };

    switch (cfg.symbol) {
    case Symbol::one:
        evaluate([](const BallPoint&) { return 1.0; }, base + ";symbol=one", 1.0);
        break;
    case Symbol::gaussian:
        evaluate([](const BallPoint& w) { return std::exp(-4.0 * w.norm_sq()); }, base + ";symbol=gaussian",
                 std::nullopt);
        break;
    case Symbol::spherical:
        for (double lam : cfg.lambda_grid) {
            const JacobiParams jp{p.n - 1.0, 0.0, lam};
            evaluate([&](const BallPoint& w) { return jacobi_function(jp, geodesic_distance(z, w)).real(); },
                     base + ";symbol=spherical;lambda=" + fmt_short(lam), multiplier_f(p, lam));
        }
        break;
    }
    return rep;
}

inline Report build_report(const RunConfig& cfg) {
    cfg.validate();
    switch (cfg.command) {
    case Command::verify_multiplier:
        return detail::run_verify_multiplier(cfg);
    case Command::verify_peetre:
        return detail::run_verify_peetre(cfg);
    case Command::verify_identities:
        return run_verify_identities(cfg);
    case Command::verify_geometry:
        return run_verify_geometry(cfg);
    case Command::verify_eigen:
        return run_verify_eigen(cfg);
    case Command::tabulate_multiplier:
        return detail::run_tabulate_multiplier(cfg);
    case Command::tabulate_kernel:
        return detail::run_tabulate_kernel(cfg);
    case Command::apply:
        return run_apply(cfg);
    }
    throw DomainError("unhandled command");
}

inline constexpr int kExitOk = 0;
inline constexpr int kExitToleranceFailure = 1;
inline constexpr int kExitInvalidParameters = 2;
inline constexpr int kExitNumericFailure = 3;

/// Runs cfg, writes the CSV to cfg.output_path (or out) and returns the exit
/// status: 0 all rows pass, 1 some row fails, 2 invalid parameters,
/// 3 numeric non-convergence.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Report rep;
    try {
        rep = build_report(cfg);
    } catch (const DomainError& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return kExitInvalidParameters;
    } catch (const Error& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitNumericFailure;
    }
    const std::string csv = to_csv(rep);
    if (cfg.output_path.empty()) {
        out << csv;
    } else {
        std::ofstream f(cfg.output_path, std::ios::binary);
        if (!f) {
            err << "cannot open output file " << cfg.output_path << '\n';
            return kExitInvalidParameters;
        }
        f << csv;
    }
    const auto failed = std::count_if(rep.rows.begin(), rep.rows.end(), [](const ReportRow& r) { return !r.pass; });
    if (failed > 0) {
        err << command_name(cfg.command) << ": " << failed << " of " << rep.rows.size() << " rows outside tolerance\n";
        return kExitToleranceFailure;
    }
    return kExitOk;
}

} // namespace berezin::cli
