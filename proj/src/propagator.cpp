#include "qslit/propagator.hpp"

#include <cmath>
#include <stdexcept>

#include "qslit/errors.hpp"

namespace qslit {

namespace {

void check_dt(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::domain_error("propagator: time step must be positive and finite");
}

// exp(-x^2 / (2 Sigma)) / sqrt(2 pi Sigma) for complex variance Sigma with
// Re(Sigma) >= 0; principal square root.
std::complex<double> complex_gaussian(double x, std::complex<double> sigma_sq) {
    const std::complex<double> two_pi_sigma = 2.0 * M_PI * sigma_sq;
    return std::exp(-x * x / (2.0 * sigma_sq)) / std::sqrt(two_pi_sigma);
}

} // namespace

void validate(const KinematicScale& scale) {
    if (!(scale.m_over_hbar > 0.0) || !std::isfinite(scale.m_over_hbar))
        throw std::domain_error("KinematicScale: m/hbar must be positive and finite");
}

std::complex<double> free_propagator_1d(double x_to, double t_to, double x_from,
                                        double t_from,
                                        const KinematicScale& scale) {
    validate(scale);
    const double dt = t_to - t_from;
    check_dt(dt);
    const double dx = x_to - x_from;
    const double spread = dt / scale.m_over_hbar; // hbar dt / m
    const double mod = 1.0 / std::sqrt(2.0 * M_PI * spread);
    const double phase = dx * dx / (2.0 * spread) - 0.25 * M_PI;
    return std::polar(mod, phase);
}

double free_propagator_modulus_sq(double dt, const KinematicScale& scale) {
    validate(scale);
    check_dt(dt);
    return scale.m_over_hbar / (2.0 * M_PI * dt);
}

std::complex<double> time_sliced_propagator(int n_slices, double x_to,
                                            double x_from, double total_time,
                                            const KinematicScale& scale) {
    validate(scale);
    check_dt(total_time);
    if (n_slices < 1 || n_slices > 100000)
        throw std::domain_error("time_sliced_propagator: slice count out of range");
    const double slice = total_time / n_slices;
    // Each slice contributes a Gaussian of complex variance i hbar dt / m; the
    // convolution identity adds variances.
    const std::complex<double> per_slice{0.0, slice / scale.m_over_hbar};
    std::complex<double> sigma_sq{0.0, 0.0};
    for (int k = 0; k < n_slices; ++k) sigma_sq += per_slice;
    return complex_gaussian(x_to - x_from, sigma_sq);
}

std::complex<double> free_propagator_nd(int dim, const std::array<double, 3>& r_to,
                                        const std::array<double, 3>& r_from,
                                        double dt, const KinematicScale& scale) {
    if (dim < 1 || dim > 3)
        throw std::domain_error("free_propagator_nd: dim must be 1, 2, or 3");
    std::complex<double> out{1.0, 0.0};
    for (int axis = 0; axis < dim; ++axis)
        out *= free_propagator_1d(r_to[axis], dt, r_from[axis], 0.0, scale);
    return out;
}

double convolve_gaussians(double sigma1, double sigma2) {
    if (!(sigma1 >= 0.0) || !(sigma2 >= 0.0) || !std::isfinite(sigma1) ||
        !std::isfinite(sigma2))
        throw std::domain_error("convolve_gaussians: widths must be nonnegative and finite");
    return std::hypot(sigma1, sigma2);
}

} // namespace qslit
