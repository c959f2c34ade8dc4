#ifndef QSLIT_ANALYSIS_HPP
#define QSLIT_ANALYSIS_HPP

#include <cstddef>
#include <vector>

namespace qslit {

struct Extremum {
    double u;     // refined abscissa
    double value; // sample value at the grid point
};

// Interior local maxima/minima of a sampled curve, with three-point parabolic
// refinement of the abscissa. Plateaus (exact ties) report the first point.
std::vector<Extremum> local_maxima(const std::vector<double>& u,
                                   const std::vector<double>& y);
std::vector<Extremum> local_minima(const std::vector<double>& u,
                                   const std::vector<double>& y);

// Mean distance between consecutive extrema; throws ResolutionError with
// fewer than two entries.
double mean_spacing(const std::vector<Extremum>& extrema);

// Minima of the peak-height sequence: where fringe maxima dip, i.e. the
// envelope minima of a fringed curve.
std::vector<Extremum> envelope_minima(const std::vector<Extremum>& maxima);

} // namespace qslit

#endif
