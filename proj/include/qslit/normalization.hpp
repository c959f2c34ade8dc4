#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qslit/propagator.hpp"
#include "qslit/slit_model.hpp"

namespace qslit {

// Complex wavefunction sampled on a uniform grid.
struct WaveState {
    std::vector<double> x;
    std::vector<std::complex<double>> psi;

    double step() const;
    void validate() const;
};

// Minimum-uncertainty Gaussian centered at x = 0, grid-normalized so that
// state_norm_sq() == 1 exactly. The grid must cover at least +-6 sigma and
// resolve sigma with h <= sigma/2, else ResolutionError.
WaveState gaussian_packet(double sigma, double x_min, double x_max,
                          std::size_t n);

// Trapezoid integral of |psi|^2 over the grid.
double state_norm_sq(const WaveState& state);

// Closed-form free evolution of gaussian_packet's continuum limit.
std::complex<double> evolved_gaussian(double x, double sigma, double t,
                                      const KinematicScale& scale);
double evolved_width_sq(double sigma, double t, const KinematicScale& scale);

// Free evolution by direct kernel quadrature onto the same grid.
// dt small enough that the kernel width falls below the grid step is treated
// as the identity. A norm drift above 0.1% means the grid cannot represent
// the evolved state and raises ResolutionError.
WaveState evolve_free(const WaveState& state, double dt,
                      const KinematicScale& scale);
WaveState evolve_free_serial(const WaveState& state, double dt,
                             const KinematicScale& scale);

// Copy with psi zeroed outside [lo, hi].
WaveState restrict_support(const WaveState& state, double lo, double hi);

struct ConditionalOptions {
    double max_phase_step = 0.5;      // bound on h * |d(phase)/dx0|
    std::size_t min_samples = 513;
    std::size_t max_samples = 40000000;
};

// Screen density conditioned on passing a slit of half-width a centered at 0:
// a source packet of width sigma evolves to the slit plane (closed form),
// is truncated to the opening, propagates to the screen by quadrature, and
// the result is divided by the passage probability. Densities are per unit
// screen length; the full-line integral is 1 by unitarity.
class ConditionalEvaluator {
  public:
    ConditionalEvaluator(double sigma, const SlitGeometry& geometry,
                         ConditionalOptions options = {});

    double operator()(double x) const;
    double passage_probability() const { return passage_; }
    double half_width() const { return geometry_.half_width_a; }
    double slit_wave_width() const;  // |phi_T| width at the slit plane

  private:
    std::complex<double> screen_amplitude(double x) const;

    SlitGeometry geometry_;
    ConditionalOptions options_;
    double sigma_;
    double kappa_;
    double width_sq_;                 // |phi_T|^2 variance at the slit
    double passage_;
    std::complex<double> decay_;      // 1 / (4 sigma^2 z), z = 1 + i kappa
    std::complex<double> prefactor_;  // packet norm x kernel norm
};

double conditional_probability(double x, double sigma, const SlitGeometry& g,
                               const ConditionalOptions& options = {});

// sigma -> 0 limit of the conditional density.
double conditional_probability_limit(double x, const SlitGeometry& g);

// Trapezoid integral of the conditional density over [-a u_max, a u_max],
// evaluated in parallel with a deterministic final summation. n_points covers
// the full symmetric window.
double integrate_conditional(const ConditionalEvaluator& eval, double u_max,
                             std::size_t n_points);
double integrate_conditional_serial(const ConditionalEvaluator& eval,
                                    double u_max, std::size_t n_points);

// Probability mass beyond |x| > a u_max, from the leading edge-diffraction
// decay of the density: the mean far tail is carried by the two slit edges
// and falls off as 1/x^2. The two-argument form is the sigma -> 0 limit; the
// three-argument form weights the edges with the evolved source profile.
// Both require u_max >= 10 eta.
double conditional_tail_estimate(double u_max, const SlitGeometry& g);
double conditional_tail_estimate(double u_max, double sigma,
                                 const SlitGeometry& g);

} // namespace qslit
