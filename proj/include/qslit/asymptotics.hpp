#ifndef QSLIT_ASYMPTOTICS_HPP
#define QSLIT_ASYMPTOTICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qslit/slit_model.hpp"

namespace qslit {

// Regime cuts on the slit Fresnel number (single slit) and on nf * eta (slit
// pair). The cut points are artifact decisions, chosen so the shipped figure
// parameter sets classify as described alongside them.
enum class SingleSlitRegime { fraunhofer, intermediate, fresnel };
enum class TwoSlitPhase { mixed, transitional, separated };

const char* to_string(SingleSlitRegime r);
const char* to_string(TwoSlitPhase p);

struct ValidityBand {
    double u_lo; // in units of a; +-infinity for unbounded sides
    double u_hi;
    std::string approximation;
};

struct RegimeThresholds {
    double fraunhofer_max_nf_a = 0.1;
    double fresnel_min_nf_a = 10.0;
    double mixed_max_nf_eta = 0.1;
    double separated_min_nf_eta = 10.0;
    double edge_halfwidth_over_a; // sqrt(lambda L / 2)/a = 1/sqrt(nf_a)
};

struct RegimeReport {
    SingleSlitRegime single_slit;
    std::optional<TwoSlitPhase> two_slit;
    std::vector<ValidityBand> validity_bands;
    RegimeThresholds thresholds;
};

RegimeReport classify(const DimensionlessParams& p, bool two_slit);

// Closed-form limiting curves, all in figure units (density * lambda (L+D)),
// as functions of u = x/a. Outside the declared validity domain they throw
// ValidityError unless enforce_validity is cleared (plotting override).
//
// Small-nf_a single slit, envelope + fringe form; valid for nf_a <= 0.1 and
// |u| > eta (1 + 1/sqrt(nf_a)).
double p1_fraunhofer_envelope(double u, const DimensionlessParams& p,
                              bool enforce_validity = true);
// Far-field reduction of the same; valid for nf_a <= 0.1 and
// |u| >= max(10 eta, eta (1 + 1/sqrt(nf_a))).
double p1_fraunhofer_far(double u, const DimensionlessParams& p,
                         bool enforce_validity = true);
// Large-nf_a single slit inside the geometric image; valid for nf_a >= 10 and
// |u| <= eta - 1/sqrt(nf_a).
double p1_fresnel_inside(double u, const DimensionlessParams& p,
                         bool enforce_validity = true);
// Large-nf_a single slit beyond the image edge; valid for nf_a >= 10 and
// |u| >= eta + 1/sqrt(nf_a).
double p1_fresnel_outside(double u, const DimensionlessParams& p,
                          bool enforce_validity = true);

// Slit pair, far field. The general variant keeps the four-term interference
// form, valid for nf_a <= 0.1 with |u -+ beta eta| > 10 eta on both signs; the
// optical variant is the familiar sinc^2 * cos^2 reduction, requiring
// nf * eta <= 0.1 and |u| > 1/nf_a.
enum class MixedVariant { general, optical };
double p2_mixed(double u, const DimensionlessParams& p,
                MixedVariant variant = MixedVariant::general,
                bool enforce_validity = true);

// Slit pair in the separated phase: the isolated-slit far-field lobe centered
// at sign(u) * beta * eta. Valid for nf*eta >= 10, nf_a <= 0.1 and
// |u| >= 1/nf_a.
double p2_separated(double u, const DimensionlessParams& p,
                    bool enforce_validity = true);

// (max - min) / (max + min) over [u_lo, u_hi] from the curve's p_total
// samples, using interior local extrema when present (mean of maxima vs mean
// of minima) and the raw window extremes otherwise. Throws ResolutionError if
// the window holds fewer than 8 samples.
double fringe_visibility(const IntensityCurve& curve, double u_lo, double u_hi);

} // namespace qslit

#endif
