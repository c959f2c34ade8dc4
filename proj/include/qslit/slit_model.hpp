#ifndef QSLIT_SLIT_MODEL_HPP
#define QSLIT_SLIT_MODEL_HPP

#include <complex>
#include <utility>
#include <vector>

#include "qslit/propagator.hpp"

namespace qslit {

// Aperture plane with one slit of half-width a centered at the axis
// (center_b = 0) or a symmetric pair of slits centered at +-center_b
// (center_b > half_width_a, so the openings do not overlap). The source sits
// a distance D before the plane, the screen a distance L after it; wavelength
// is the longitudinal de Broglie wavelength of the beam.
struct SlitGeometry {
    double half_width_a;
    double center_b;
    double dist_slit_screen_L;
    double dist_source_slit_D;
    double wavelength;

    bool operator==(const SlitGeometry&) const = default;
};

// Throws std::domain_error on invalid values. Positivity always; the
// non-overlap condition center_b > half_width_a only when center_b != 0.
void validate(const SlitGeometry& g);

struct DimensionlessParams {
    double nf_a;  // Fresnel number of the half-width, 2 a^2 / (lambda L)
    double nf_b;  // 2 b^2 / (lambda L)
    double nf;    // 2 a b / (lambda L) = sqrt(nf_a nf_b)
    double eta;   // 1 + L/D
    double gamma; // L/D
    double beta;  // b/a
};

DimensionlessParams derive_params(const SlitGeometry& g);

// Canonical geometry (a = 1, L = 1) reproducing the given dimensionless
// parameters; beta = 0 means a single centered slit.
SlitGeometry geometry_from_dimensionless(double nf_a, double eta, double beta);

// Times of flight source->slit (T) and slit->screen (tau) implied by the
// geometry and the physical scale, via lambda = 2 pi hbar / (m v_z) and
// v_z = D/T = L/tau.
struct SlitKinematics {
    double T;
    double tau;
};
SlitKinematics kinematics_for(const SlitGeometry& g, const KinematicScale& scale);

// Scaled Fresnel arguments of the slit-edge integrals.
//   alpha_single(x, s)   = sqrt(nf_a eta) (s - x/(a eta)),      s = +-1
//   alpha_pm(x, side)    = { sqrt(nf_a eta) (side*beta + 1 - x/(a eta)),
//                            sqrt(nf_a eta) (side*beta - 1 - x/(a eta)) }
// side = +1 is the slit at +b, side = -1 the slit at -b.
double alpha_single(double x, int sign, const DimensionlessParams& p, double a);
std::pair<double, double> alpha_pm(double x, const DimensionlessParams& p,
                                   double a, int side);

// Same alpha_pm evaluated straight from the physical definition
//   sqrt((T+tau)/(pi hbar T tau / m)) (b +- a) - x sqrt(T / ((T+tau) pi hbar tau / m));
// kept as a second route so tests can pin the dimensionless reduction.
std::pair<double, double> alpha_pm_physical(double x, const SlitGeometry& g,
                                            const KinematicScale& scale, int side);

// Exact single-slit amplitude at screen coordinate x for the slit centered at
// side * center_b:
//   A(x) = -i e^{i pi x^2 / (lambda (L+D))} / sqrt(2 lambda (L+D))
//          * [C(a+) - C(a-) + i (S(a+) - S(a-))].
std::complex<double> amplitude_one_slit(double x, const SlitGeometry& g, int side);

// Same amplitude by adaptive quadrature of the defining aperture integral
//   A(x) = int_{sb-a}^{sb+a} K_tau(x,w) K_T(w,0) dw,
// evaluated without the Fresnel kernel. Slow; used for oracle checks.
std::complex<double> amplitude_oracle(double x, const SlitGeometry& g, int side,
                                      double rel_tol);

// |A|^2 for the single centered slit (center_b must be 0); probability density
// per unit screen length.
double probability_one_slit(double x, const SlitGeometry& g);

struct TwoSlitChannels {
    double p_total; // |A1 + A2|^2
    double p1;      // |A1|^2
    double p2;      // |A2|^2
    double i12;     // 2 Re(A1 conj A2)
};

// Exact two-slit decomposition (center_b > half_width_a required); densities
// per unit screen length.
TwoSlitChannels probability_two_slit(double x, const SlitGeometry& g);

enum class CurveNormalization {
    figure_units, // density * lambda (L+D): the relative-population scale
    raw_density   // per unit screen length
};

struct IntensityCurve {
    std::vector<double> x_over_a;
    std::vector<double> p_total;
    std::vector<double> p1;
    std::vector<double> p2;
    std::vector<double> i12;
    DimensionlessParams params;
    CurveNormalization normalization;
    bool two_slit;
};

// Evaluate the exact curve on a uniform grid of x/a. The OpenMP build
// parallelizes over grid points; every point is computed independently, so the
// result is identical for any thread count. scan_curve_serial is the plain
// loop kept as the reference implementation.
IntensityCurve scan_curve(const SlitGeometry& g, double x_min_over_a,
                          double x_max_over_a, int n_points,
                          CurveNormalization norm);
IntensityCurve scan_curve_serial(const SlitGeometry& g, double x_min_over_a,
                                 double x_max_over_a, int n_points,
                                 CurveNormalization norm);

} // namespace qslit

#endif
