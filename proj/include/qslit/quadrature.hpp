#ifndef QSLIT_QUADRATURE_HPP
#define QSLIT_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "qslit/errors.hpp"

namespace qslit {

// Adaptive bisection quadrature built on the embedded Gauss(7)/Kronrod(15)
// pair. Works for real- and complex-valued integrands; the error estimate is
// the norm of the difference between the two rules. This is the independent
// path used by the oracles, so it deliberately shares nothing with the
// series-based special function kernels.

namespace gk15 {
// Standard 15-point Kronrod abscissae (positive half) and weights; the
// embedded 7-point Gauss rule uses the odd-indexed abscissae.
inline constexpr double xgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double wgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
inline constexpr double wg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};
} // namespace gk15

template <typename T>
struct PanelEstimate {
    T value{};
    double error = 0.0;
};

template <typename F>
auto gk15_panel(F&& f, double a, double b)
    -> PanelEstimate<std::decay_t<decltype(f(0.0))>> {
    using T = std::decay_t<decltype(f(0.0))>;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    T fc = f(mid);
    T kron = gk15::wgk[7] * fc;
    T gauss = gk15::wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * gk15::xgk[j];
        T sum = f(mid - dx) + f(mid + dx);
        kron += gk15::wgk[j] * sum;
        if (j % 2 == 1) gauss += gk15::wg[j / 2] * sum;
    }
    PanelEstimate<T> out;
    out.value = half * kron;
    out.error = std::abs(half * (kron - gauss));
    return out;
}

// Integrate f over [a, b] to absolute tolerance abs_tol. Bisects the worst
// panel first; throws ConvergenceError when max_panels subdivisions cannot
// certify the budget.
template <typename F>
auto integrate_adaptive(F&& f, double a, double b, double abs_tol,
                        std::size_t max_panels = 50000)
    -> std::decay_t<decltype(f(0.0))> {
    using T = std::decay_t<decltype(f(0.0))>;
    struct Panel {
        double a, b;
        T value;
        double error;
    };
    std::vector<Panel> panels;
    auto first = gk15_panel(f, a, b);
    panels.push_back({a, b, first.value, first.error});
    double total_err = first.error;
    while (total_err > abs_tol) {
        if (panels.size() >= max_panels)
            throw ConvergenceError(
                "integrate_adaptive: panel budget exhausted before the "
                "requested tolerance was certified");
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].error > panels[worst].error) worst = i;
        Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b)
            throw ConvergenceError(
                "integrate_adaptive: interval no longer bisectable at the "
                "requested tolerance");
        auto left = gk15_panel(f, p.a, mid);
        auto right = gk15_panel(f, mid, p.b);
        total_err += left.error + right.error - p.error;
        panels[worst] = {p.a, mid, left.value, left.error};
        panels.push_back({mid, p.b, right.value, right.error});
    }
    // Sum in ascending interval order for run-to-run determinism.
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    T total{};
    for (const auto& p : panels) total += p.value;
    return total;
}

// Integrate over a fixed partition (one GK15 panel per cell, no adaptivity on
// top); used when the caller already knows the oscillation structure.
template <typename F>
auto integrate_panels(F&& f, const std::vector<double>& breakpoints)
    -> std::decay_t<decltype(f(0.0))> {
    using T = std::decay_t<decltype(f(0.0))>;
    T total{};
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        total += gk15_panel(f, breakpoints[i], breakpoints[i + 1]).value;
    return total;
}

} // namespace qslit

#endif
