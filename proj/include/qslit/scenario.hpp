#pragma once

#include <string>
#include <vector>

#include "qslit/slit_model.hpp"

namespace qslit {

enum class ScenarioMode { one_slit, two_slit };

enum class ScenarioNormalization { figure_units, raw_density, conditional };

struct ScenarioOutputs {
    bool exact = true;
    bool asymptotic = false;
    bool decomposition = false;
    bool regime_report = true;
    bool oracle_check = false;

    bool operator==(const ScenarioOutputs&) const = default;
};

// A fully described run: what to compute, on which geometry, over which grid,
// and which artifacts to write. Geometry comes either as the dimensionless
// triple (nf_a, eta, beta) or as physical lengths, never both.
struct Scenario {
    std::string name;
    ScenarioMode mode = ScenarioMode::one_slit;
    bool dimensionless = true;
    double nf_a = 0.0;
    double eta = 0.0;
    double beta = 0.0;
    SlitGeometry physical{};
    double x_min_over_a = 0.0;
    double x_max_over_a = 0.0;
    int n_points = 0;
    ScenarioOutputs outputs;
    ScenarioNormalization normalization = ScenarioNormalization::figure_units;
    double sigma_over_a = 0.0; // conditional source width

    SlitGeometry resolved_geometry() const;

    bool operator==(const Scenario&) const = default;
};

// Parse a key = value document ('#' starts a comment). Unknown or duplicate
// keys raise ParseError with the line number; violated invariants raise
// ValidityError listing every violation at once.
Scenario parse_scenario(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

// Canonical text form; parse_scenario(emit_scenario(s)) == s.
std::string emit_scenario(const Scenario& s);

// Re-check a hand-built Scenario against the same invariants the parser
// enforces.
void validate_scenario(const Scenario& s);

const std::vector<std::string>& fixture_names();
Scenario fixture(const std::string& name);

struct RunOptions {
    // Channel columns for the curve CSV, canonical order enforced; empty means
    // the scenario decides (decomposition -> all four, else p_total only).
    std::vector<std::string> channels;
    double oracle_rel_tol = 1e-10;
};

struct RunResult {
    std::vector<std::string> written; // absolute or out_dir-relative paths
};

// Execute the scenario and write its artifacts under out_dir (created if
// missing): <name>_curve.csv, <name>_asymptotic.csv, <name>_report.json,
// <name>_oracle.json, <name>_plot.gp, as selected by the outputs set.
// Identical bytes for every run and thread count; partial files are removed
// when a step fails.
RunResult run_scenario(const Scenario& s, const std::string& out_dir,
                       const RunOptions& options = {});

} // namespace qslit
