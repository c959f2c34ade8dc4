#ifndef QSLIT_PROPAGATOR_HPP
#define QSLIT_PROPAGATOR_HPP

#include <array>
#include <complex>

namespace qslit {

struct SlitGeometry; // slit_model.hpp

// Physical scale of the problem. Everything downstream depends on mass and
// Planck's constant only through m/hbar, so that is all that is carried.
struct KinematicScale {
    double m_over_hbar; // > 0, units 1 / (length^2 / time)
};

void validate(const KinematicScale& scale);

// Free-particle kernel
//   K0(x',t'; x,t) = sqrt(m / (2 pi hbar dt)) e^{-i pi/4} e^{i m (x'-x)^2 / (2 hbar dt)}
// with dt = t' - t > 0. The branch of the inverse square root of 2 i pi hbar
// dt / m is fixed to exp(-i pi/4) / sqrt(2 pi hbar dt / m) (principal root).
std::complex<double> free_propagator_1d(double x_to, double t_to, double x_from,
                                        double t_from,
                                        const KinematicScale& scale);

// |K0|^2 = m / (2 pi hbar dt), independent of the endpoints.
double free_propagator_modulus_sq(double dt, const KinematicScale& scale);

// n-fold time-sliced kernel, reduced slice by slice through the Gaussian
// convolution identity with complex variance i hbar dt / m. Equals the
// closed-form kernel for every n; the point of keeping the recursion is that
// tests can compare the two independent floating-point routes.
std::complex<double> time_sliced_propagator(int n_slices, double x_to,
                                            double x_from, double total_time,
                                            const KinematicScale& scale);

// Product form in d dimensions (d = 1, 2, 3): one factor of the 1d kernel per
// Cartesian axis.
std::complex<double> free_propagator_nd(int dim, const std::array<double, 3>& r_to,
                                        const std::array<double, 3>& r_from,
                                        double dt, const KinematicScale& scale);

// Width of the convolution of two centered Gaussians: sqrt(s1^2 + s2^2).
double convolve_gaussians(double sigma1, double sigma2);

// Kernel from a point source through the slit aperture to the screen,
// evaluated in closed form (it equals the single-slit amplitude; defined in
// slit_model.cpp). The value is fixed by the geometry; the scale argument is
// validated for consistency with it.
std::complex<double> slit_propagator(double x, const SlitGeometry& g,
                                     const KinematicScale& scale);

} // namespace qslit

#endif
