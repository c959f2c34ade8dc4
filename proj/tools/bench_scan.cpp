// Times the OpenMP kernels against their serial reference implementations and
// checks the outputs are bit-identical.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include <CLI11.hpp>

#include "qslit/normalization.hpp"
#include "qslit/scenario.hpp"
#include "qslit/slit_model.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double best_of(int repeats, const std::function<void()>& work) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        work();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-12s serial %8.4f s   openmp %8.4f s   speedup %5.2fx   "
                "identical %s\n",
                name, serial, parallel, serial / parallel,
                identical ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP benchmark"};
    int points = 200001;
    int repeats = 3;
    int grid = 2500;
    app.add_option("--points", points, "scan grid size")->capture_default_str();
    app.add_option("--grid", grid, "evolve grid size")->capture_default_str();
    app.add_option("--repeats", repeats, "best-of repetitions")
        ->capture_default_str();
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif

    const qslit::SlitGeometry g =
        qslit::fixture("fig4a").resolved_geometry();
    qslit::IntensityCurve serial_curve, parallel_curve;
    const double t_scan_serial = best_of(repeats, [&] {
        serial_curve = qslit::scan_curve_serial(
            g, -3000.0, 3000.0, points, qslit::CurveNormalization::figure_units);
    });
    const double t_scan_parallel = best_of(repeats, [&] {
        parallel_curve = qslit::scan_curve(
            g, -3000.0, 3000.0, points, qslit::CurveNormalization::figure_units);
    });
    const bool scan_same = serial_curve.p_total == parallel_curve.p_total &&
                           serial_curve.p1 == parallel_curve.p1 &&
                           serial_curve.p2 == parallel_curve.p2 &&
                           serial_curve.i12 == parallel_curve.i12;
    report("scan_curve", t_scan_serial, t_scan_parallel, scan_same);

    const qslit::KinematicScale scale{1.0};
    const qslit::WaveState packet =
        qslit::gaussian_packet(1.0, -40.0, 40.0, static_cast<std::size_t>(grid));
    qslit::WaveState serial_out, parallel_out;
    const double t_ev_serial = best_of(repeats, [&] {
        serial_out = qslit::evolve_free_serial(packet, 4.0, scale);
    });
    const double t_ev_parallel = best_of(repeats, [&] {
        parallel_out = qslit::evolve_free(packet, 4.0, scale);
    });
    report("evolve_free", t_ev_serial, t_ev_parallel,
           serial_out.psi == parallel_out.psi);

    return scan_same && serial_out.psi == parallel_out.psi ? 0 : 1;
}
