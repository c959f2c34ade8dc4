#include "qslit/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "qslit/errors.hpp"

namespace qslit {

namespace {

double refine(const std::vector<double>& u, const std::vector<double>& y,
              std::size_t i) {
    const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
    if (denom == 0.0) return u[i];
    const double h = 0.5 * (u[i + 1] - u[i - 1]);
    double shift = 0.5 * (y[i - 1] - y[i + 1]) / denom * h;
    if (!(std::abs(shift) <= h)) shift = 0.0;
    return u[i] + shift;
}

std::vector<Extremum> extrema_impl(const std::vector<double>& u,
                                   const std::vector<double>& y, bool maxima) {
    if (u.size() != y.size())
        throw std::invalid_argument("extrema: grid and values differ in length");
    std::vector<Extremum> out;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        const double l = maxima ? y[i] - y[i - 1] : y[i - 1] - y[i];
        const double r = maxima ? y[i] - y[i + 1] : y[i + 1] - y[i];
        if (l > 0.0 && r > 0.0) out.push_back({refine(u, y, i), y[i]});
    }
    return out;
}

} // namespace

std::vector<Extremum> local_maxima(const std::vector<double>& u,
                                   const std::vector<double>& y) {
    return extrema_impl(u, y, true);
}

std::vector<Extremum> local_minima(const std::vector<double>& u,
                                   const std::vector<double>& y) {
    return extrema_impl(u, y, false);
}

double mean_spacing(const std::vector<Extremum>& extrema) {
    if (extrema.size() < 2)
        throw ResolutionError("mean_spacing: need at least two extrema");
    return (extrema.back().u - extrema.front().u) /
           static_cast<double>(extrema.size() - 1);
}

std::vector<Extremum> envelope_minima(const std::vector<Extremum>& maxima) {
    std::vector<Extremum> out;
    for (std::size_t i = 1; i + 1 < maxima.size(); ++i)
        if (maxima[i].value < maxima[i - 1].value &&
            maxima[i].value < maxima[i + 1].value)
            out.push_back(maxima[i]);
    return out;
}

} // namespace qslit
