#include "qslit/normalization.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qslit/errors.hpp"

namespace qslit {

namespace {

using cplx = std::complex<double>;

void check_positive_time(double dt) {
    if (!std::isfinite(dt) || dt < 0.0)
        throw std::domain_error("evolve_free: dt must be finite and >= 0");
}

} // namespace

double WaveState::step() const {
    if (x.size() < 2)
        throw std::domain_error("WaveState: need at least two grid points");
    return x[1] - x[0];
}

void WaveState::validate() const {
    if (x.size() != psi.size())
        throw std::domain_error("WaveState: grid and values differ in size");
    const double h = step();
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::domain_error("WaveState: grid step must be positive");
    // Tolerance scales with the grid extent, not the local coordinate: a grid
    // built as x0 + k h accumulates ulp-level error proportional to the span,
    // and near a zero crossing the local |x| says nothing about that scale.
    const double extent =
        std::max(std::abs(x.front()), std::abs(x.back())) + h;
    for (std::size_t k = 1; k < x.size(); ++k) {
        const double expected = x[0] + static_cast<double>(k) * h;
        if (std::abs(x[k] - expected) > 1e-9 * extent)
            throw std::domain_error("WaveState: grid is not uniform");
    }
}

WaveState gaussian_packet(double sigma, double x_min, double x_max,
                          std::size_t n) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::domain_error("gaussian_packet: sigma must be positive");
    if (!(x_min < 0.0 && x_max > 0.0))
        throw std::domain_error("gaussian_packet: grid must straddle x = 0");
    if (n < 16) throw std::domain_error("gaussian_packet: n too small");
    if (x_min > -6.0 * sigma || x_max < 6.0 * sigma)
        throw ResolutionError("gaussian_packet: grid must cover +-6 sigma");
    const double h = (x_max - x_min) / static_cast<double>(n - 1);
    if (h > 0.5 * sigma)
        throw ResolutionError("gaussian_packet: step exceeds sigma/2");

    WaveState s;
    s.x.resize(n);
    s.psi.resize(n);
    const double amp = std::pow(2.0 * M_PI * sigma * sigma, -0.25);
    for (std::size_t k = 0; k < n; ++k) {
        s.x[k] = x_min + static_cast<double>(k) * h;
        const double arg = s.x[k] / (2.0 * sigma);
        s.psi[k] = amp * std::exp(-arg * arg);
    }
    const double nrm = state_norm_sq(s);
    if (!(nrm > 0.0))
        throw ResolutionError("gaussian_packet: packet underflows on this grid");
    const double scale = 1.0 / std::sqrt(nrm);
    for (auto& v : s.psi) v *= scale;
    return s;
}

double state_norm_sq(const WaveState& state) {
    state.validate();
    const double h = state.step();
    double sum = 0.0;
    for (const auto& v : state.psi) sum += std::norm(v);
    sum -= 0.5 * (std::norm(state.psi.front()) + std::norm(state.psi.back()));
    return sum * h;
}

std::complex<double> evolved_gaussian(double x, double sigma, double t,
                                      const KinematicScale& scale) {
    validate(scale);
    if (!(sigma > 0.0)) throw std::domain_error("evolved_gaussian: sigma <= 0");
    check_positive_time(t);
    const double kappa = t / (2.0 * scale.m_over_hbar * sigma * sigma);
    const cplx z(1.0, kappa);
    const double amp = std::pow(2.0 * M_PI * sigma * sigma, -0.25);
    return amp / std::sqrt(z) *
           std::exp(-x * x / (4.0 * sigma * sigma * z));
}

double evolved_width_sq(double sigma, double t, const KinematicScale& scale) {
    validate(scale);
    if (!(sigma > 0.0)) throw std::domain_error("evolved_width_sq: sigma <= 0");
    check_positive_time(t);
    const double spread = t / (2.0 * scale.m_over_hbar * sigma);
    return sigma * sigma + spread * spread;
}

namespace {

WaveState evolve_free_impl(const WaveState& state, double dt,
                           const KinematicScale& scale, bool parallel) {
    state.validate();
    validate(scale);
    check_positive_time(dt);
    const double h = state.step();
    if (dt == 0.0) return state;
    const double spread = dt / scale.m_over_hbar; // hbar dt / m
    if (std::sqrt(spread) <= h) return state;     // kernel under grid resolution

    const auto n = state.x.size();
    WaveState out;
    out.x = state.x;
    out.psi.assign(n, cplx{});
    const cplx pref =
        std::polar(h / std::sqrt(2.0 * M_PI * spread), -0.25 * M_PI);
    const double inv2s = 1.0 / (2.0 * spread);

    const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t j = 0; j < nn; ++j) {
        const double xj = state.x[static_cast<std::size_t>(j)];
        cplx acc{};
        for (std::size_t k = 0; k < n; ++k) {
            const double dx = xj - state.x[k];
            acc += std::polar(1.0, dx * dx * inv2s) * state.psi[k];
        }
        const double dx0 = xj - state.x.front();
        const double dx1 = xj - state.x.back();
        acc -= 0.5 * (std::polar(1.0, dx0 * dx0 * inv2s) * state.psi.front() +
                      std::polar(1.0, dx1 * dx1 * inv2s) * state.psi.back());
        out.psi[static_cast<std::size_t>(j)] = pref * acc;
    }

    const double n_in = state_norm_sq(state);
    const double n_out = state_norm_sq(out);
    if (std::abs(n_out - n_in) > 1e-3 * std::max(n_in, 1e-300))
        throw ResolutionError(
            "evolve_free: norm drifted by " + std::to_string(n_out - n_in) +
            "; grid or domain cannot hold the evolved state");
    return out;
}

} // namespace

WaveState evolve_free(const WaveState& state, double dt,
                      const KinematicScale& scale) {
    return evolve_free_impl(state, dt, scale, true);
}

WaveState evolve_free_serial(const WaveState& state, double dt,
                             const KinematicScale& scale) {
    return evolve_free_impl(state, dt, scale, false);
}

WaveState restrict_support(const WaveState& state, double lo, double hi) {
    state.validate();
    if (!(lo < hi))
        throw std::domain_error("restrict_support: need lo < hi");
    WaveState out = state;
    for (std::size_t k = 0; k < out.x.size(); ++k)
        if (out.x[k] < lo || out.x[k] > hi) out.psi[k] = cplx{};
    return out;
}

ConditionalEvaluator::ConditionalEvaluator(double sigma,
                                           const SlitGeometry& geometry,
                                           ConditionalOptions options)
    : geometry_(geometry), options_(options), sigma_(sigma) {
    qslit::validate(geometry_);
    if (geometry_.center_b != 0.0)
        throw std::domain_error(
            "ConditionalEvaluator: needs the single centered slit");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::domain_error("ConditionalEvaluator: sigma must be positive");
    if (!(options_.max_phase_step > 0.0) ||
        options_.min_samples < 9 ||
        options_.max_samples <= options_.min_samples)
        throw std::domain_error("ConditionalEvaluator: bad options");

    const double lam_d = geometry_.wavelength * geometry_.dist_source_slit_D;
    kappa_ = lam_d / (4.0 * M_PI * sigma * sigma);
    const cplx z(1.0, kappa_);
    width_sq_ = sigma * sigma * (1.0 + kappa_ * kappa_);
    decay_ = 1.0 / (4.0 * sigma * sigma * z);

    const double a = geometry_.half_width_a;
    passage_ = std::erf(a / std::sqrt(2.0 * width_sq_));
    if (!(passage_ > 1e-300))
        throw ValidityError(
            "ConditionalEvaluator: passage probability underflows");

    const double lam_l = geometry_.wavelength * geometry_.dist_slit_screen_L;
    prefactor_ = std::pow(2.0 * M_PI * sigma * sigma, -0.25) / std::sqrt(z) *
                 std::polar(1.0 / std::sqrt(lam_l), -0.25 * M_PI);
}

double ConditionalEvaluator::slit_wave_width() const {
    return std::sqrt(width_sq_);
}

std::complex<double> ConditionalEvaluator::screen_amplitude(double x) const {
    const double a = geometry_.half_width_a;
    const double lam_l = geometry_.wavelength * geometry_.dist_slit_screen_L;
    const double kernel_rate = 2.0 * M_PI * (std::abs(x) + a) / lam_l;
    const double packet_rate =
        a * kappa_ / (2.0 * sigma_ * sigma_ * (1.0 + kappa_ * kappa_));
    const double needed =
        2.0 * a * (kernel_rate + packet_rate) / options_.max_phase_step;
    if (needed > static_cast<double>(options_.max_samples))
        throw ResolutionError(
            "ConditionalEvaluator: screen point needs more than max_samples "
            "slit samples");
    std::size_t n = options_.min_samples;
    if (needed + 2.0 > static_cast<double>(n))
        n = static_cast<std::size_t>(needed) + 2;

    const double h = 2.0 * a / static_cast<double>(n - 1);
    const double pi_over_laml = M_PI / lam_l;
    cplx sum{};
    for (std::size_t k = 0; k < n; ++k) {
        const double x0 = -a + static_cast<double>(k) * h;
        const double d = x - x0;
        const cplx e(0.0, pi_over_laml * d * d);
        sum += std::exp(e - x0 * x0 * decay_);
    }
    auto boundary = [&](double x0) {
        const double d = x - x0;
        const cplx f = std::exp(cplx(0.0, pi_over_laml * d * d) -
                                x0 * x0 * decay_);
        const cplx slope = cplx(0.0, -2.0 * pi_over_laml * d) -
                           2.0 * x0 * decay_;
        return std::make_pair(f, f * slope);
    };
    const auto [f_lo, d_lo] = boundary(-a);
    const auto [f_hi, d_hi] = boundary(a);
    sum -= 0.5 * (f_lo + f_hi);
    cplx integral = h * sum - h * h / 12.0 * (d_hi - d_lo);
    return prefactor_ * integral;
}

double ConditionalEvaluator::operator()(double x) const {
    return std::norm(screen_amplitude(x)) / passage_;
}

double conditional_probability(double x, double sigma, const SlitGeometry& g,
                               const ConditionalOptions& options) {
    return ConditionalEvaluator(sigma, g, options)(x);
}

double conditional_probability_limit(double x, const SlitGeometry& g) {
    qslit::validate(g);
    if (g.center_b != 0.0)
        throw std::domain_error(
            "conditional_probability_limit: needs the single centered slit");
    const double lam_d = g.wavelength * g.dist_source_slit_D;
    return probability_one_slit(x, g) * lam_d / (2.0 * g.half_width_a);
}

namespace {

double integrate_conditional_impl(const ConditionalEvaluator& eval,
                                  double u_max, std::size_t n_points,
                                  bool parallel) {
    if (!(u_max > 0.0) || n_points < 9)
        throw std::domain_error("integrate_conditional: bad window");
    const double x_max = u_max * eval.half_width();
    std::vector<double> vals(n_points);
    const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n_points);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t k = 0; k < nn; ++k) {
        const double x =
            -x_max + 2.0 * x_max * static_cast<double>(k) /
                         static_cast<double>(n_points - 1);
        vals[static_cast<std::size_t>(k)] = eval(x);
    }
    double sum = 0.0;
    for (double v : vals) sum += v;
    sum -= 0.5 * (vals.front() + vals.back());
    return sum * 2.0 * x_max / static_cast<double>(n_points - 1);
}

} // namespace

double integrate_conditional(const ConditionalEvaluator& eval, double u_max,
                             std::size_t n_points) {
    return integrate_conditional_impl(eval, u_max, n_points, true);
}

double integrate_conditional_serial(const ConditionalEvaluator& eval,
                                    double u_max, std::size_t n_points) {
    return integrate_conditional_impl(eval, u_max, n_points, false);
}

double conditional_tail_estimate(double u_max, const SlitGeometry& g) {
    const DimensionlessParams p = derive_params(g);
    if (!(u_max >= 10.0 * p.eta))
        throw ValidityError("conditional_tail_estimate: u_max below 10 eta");
    return 1.0 / (M_PI * M_PI * p.nf_a * u_max);
}

double conditional_tail_estimate(double u_max, double sigma,
                                 const SlitGeometry& g) {
    const DimensionlessParams p = derive_params(g);
    if (!(u_max >= 10.0 * p.eta))
        throw ValidityError("conditional_tail_estimate: u_max below 10 eta");
    if (!(sigma > 0.0))
        throw std::domain_error("conditional_tail_estimate: sigma must be > 0");
    const double a = g.half_width_a;
    const double lam_l = g.wavelength * g.dist_slit_screen_L;
    const double lam_d = g.wavelength * g.dist_source_slit_D;
    const double kappa = lam_d / (4.0 * M_PI * sigma * sigma);
    const double st_sq = sigma * sigma * (1.0 + kappa * kappa);
    const double edge_sum = 2.0 * std::exp(-0.5 * a * a / st_sq) /
                            std::sqrt(2.0 * M_PI * st_sq);
    const double passage = std::erf(a / std::sqrt(2.0 * st_sq));
    if (!(passage > 1e-300))
        throw ResolutionError("conditional_tail_estimate: passage underflow");
    return lam_l * edge_sum / (2.0 * M_PI * M_PI * passage * u_max * a);
}

} // namespace qslit
