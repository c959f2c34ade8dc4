#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qslit/scenario.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

int main(int argc, char** argv) {
    CLI::App app{"electron slit diffraction curves"};
    app.require_subcommand(1);

    auto* scan = app.add_subcommand(
        "scan", "evaluate a scenario and write its artifacts");
    std::string fixture_name;
    std::string config_path;
    std::string out_dir = ".";
    std::vector<std::string> channels;
    bool oracle = false;
    int threads = 0;
    auto* fix_opt = scan->add_option(
        "--fixture", fixture_name, "shipped fixture name (fig3a .. fig4d)");
    auto* cfg_opt =
        scan->add_option("--config", config_path, "scenario config file");
    fix_opt->excludes(cfg_opt);
    cfg_opt->excludes(fix_opt);
    scan->add_option("--out", out_dir, "output directory")
        ->capture_default_str();
    scan->add_option("--channels", channels,
                     "curve CSV channel columns (p_total p1 p2 i12)");
    scan->add_flag("--oracle-check", oracle,
                   "also write the quadrature cross-check");
    scan->add_option("--threads", threads,
                     "OpenMP thread count (0 = library default)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (threads < 0)
            throw std::domain_error("--threads must be >= 0");
        if (threads > 0) {
#ifdef _OPENMP
            omp_set_num_threads(threads);
#endif
        }
        qslit::Scenario s;
        if (!fixture_name.empty())
            s = qslit::fixture(fixture_name);
        else if (!config_path.empty())
            s = qslit::parse_scenario_file(config_path);
        else
            throw std::domain_error("scan needs --fixture or --config");
        if (oracle) s.outputs.oracle_check = true;

        qslit::RunOptions opt;
        opt.channels = channels;
        const auto result = qslit::run_scenario(s, out_dir, opt);
        for (const auto& f : result.written) std::cout << f << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
