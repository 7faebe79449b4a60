// Prints f_m(lambda) for one parameter set next to its quadrature value.

#include <cstdio>

#include "berezin/berezin.hpp"

int main() {
    using namespace berezin;
    const Params p{2, 3.0, 1};
    const QuadratureSpec q;
    std::printf("eps_m = %g, gamma_m = %.12g\n", eigenvalue(p), gamma_coeff(p));
    std::printf("%8s %22s %22s\n", "lambda", "closed form", "quadrature");
    for (double lam = 0.0; lam <= 6.0; lam += 0.5) {
        const double closed = multiplier_f(p, lam);
        const double quad = multiplier_f_quadrature(p, lam, q).value;
        std::printf("%8.2f %22.15f %22.15f\n", lam, closed, quad);
    }
    const BallPoint z({Complex(0.3, -0.2), Complex(0.1, 0.4)});
    const BallPoint w({Complex(-0.1, 0.0), Complex(0.2, 0.2)});
    std::printf("B_m(z,w) = %.12g, from the spectral side %.12g\n", berezin_kernel(p, z, w),
                kernel_from_spectral(p, z, w, q).value);
}
