#ifndef QSLIT_FRESNEL_HPP
#define QSLIT_FRESNEL_HPP

namespace qslit {

struct FresnelPair {
    double c;
    double s;
};

// Fresnel integrals in the normalization
//   C(u) = int_0^u cos(pi w^2 / 2) dw,   S(u) = int_0^u sin(pi w^2 / 2) dw.
// Odd in u (bit-exact: the kernel evaluates |u| and restores the sign), finite for
// every finite input, absolute error <= 1e-12 over the whole real line.
double fresnel_c(double u);
double fresnel_s(double u);
FresnelPair fresnel_cs(double u);

// Two-term large-argument forms
//   C(u) ~ 1/2 + sin(pi u^2/2)/(pi u),   S(u) ~ 1/2 - cos(pi u^2/2)/(pi u)
// extended oddly to u < 0. Throws ValidityError for |u| < 1.
FresnelPair fresnel_asymptotic(double u);

// Independent check path: adaptive Gauss-Kronrod quadrature of the defining
// integrals, split at the phase zeros w = sqrt(2k) so every panel spans at most
// half an oscillation. tol is an absolute error budget in [1e-15, 1e-6]; throws
// std::domain_error outside that range, ConvergenceError if the budget cannot
// be certified. Used by tests; never called by the closed-form evaluation path.
FresnelPair fresnel_oracle(double u, double tol);

// Boundary between the power-series and auxiliary-series branches of the kernel
// (exposed so tests can probe the seam).
inline constexpr double fresnel_series_cutoff = 5.0;

} // namespace qslit

#endif
