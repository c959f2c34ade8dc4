#include "qslit/scenario.hpp"

#include <algorithm>
#include <cerrno>
#include <climits>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qslit/asymptotics.hpp"
#include "qslit/errors.hpp"
#include "qslit/normalization.hpp"

namespace qslit {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

bool parse_double(const std::string& s, double& out) {
    errno = 0;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end != s.c_str() && *end == '\0' && errno == 0 &&
           std::isfinite(out);
}

bool parse_int(const std::string& s, int& out) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0' || errno != 0) return false;
    if (v < INT_MIN || v > INT_MAX) return false;
    out = static_cast<int>(v);
    return true;
}

const char* to_string(ScenarioMode m) {
    return m == ScenarioMode::one_slit ? "one_slit" : "two_slit";
}

const char* to_string(ScenarioNormalization n) {
    switch (n) {
        case ScenarioNormalization::figure_units: return "figure_units";
        case ScenarioNormalization::raw_density: return "raw_density";
        case ScenarioNormalization::conditional: return "conditional";
    }
    return "?";
}

struct OutputField {
    const char* token;
    bool ScenarioOutputs::*member;
};

constexpr OutputField kOutputFields[] = {
    {"exact", &ScenarioOutputs::exact},
    {"asymptotic", &ScenarioOutputs::asymptotic},
    {"decomposition", &ScenarioOutputs::decomposition},
    {"regime_report", &ScenarioOutputs::regime_report},
    {"oracle_check", &ScenarioOutputs::oracle_check},
};

std::string outputs_to_text(const ScenarioOutputs& o) {
    std::vector<std::string> on;
    for (const auto& f : kOutputFields)
        if (o.*(f.member)) on.push_back(f.token);
    return on.empty() ? "none" : join(on, " ");
}

// Removes every registered path unless disarmed; keeps failed runs from
// leaving partial artifacts behind.
class FileGuard {
  public:
    void add(const fs::path& p) { paths_.push_back(p); }
    void disarm() { armed_ = false; }
    ~FileGuard() {
        if (!armed_) return;
        std::error_code ec;
        for (const auto& p : paths_) fs::remove(p, ec);
    }

  private:
    std::vector<fs::path> paths_;
    bool armed_ = true;
};

} // namespace

SlitGeometry Scenario::resolved_geometry() const {
    return dimensionless ? geometry_from_dimensionless(nf_a, eta, beta)
                         : physical;
}

void validate_scenario(const Scenario& s) {
    std::vector<std::string> bad;
    if (s.name.empty())
        bad.push_back("name must be non-empty");
    else if (s.name.find_first_not_of("abcdefghijklmnopqrstuvwxyz"
                                      "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
                                      "0123456789_.-") != std::string::npos)
        bad.push_back("name may use only letters, digits, '_', '.', '-'");
    if (!(std::isfinite(s.x_min_over_a) && std::isfinite(s.x_max_over_a) &&
          s.x_min_over_a < s.x_max_over_a))
        bad.push_back("grid needs finite x_min_over_a < x_max_over_a");
    if (s.n_points < 9 || s.n_points > 20000001)
        bad.push_back("n_points must lie in [9, 20000001]");
    if (s.dimensionless) {
        if (!(s.nf_a > 0.0) || !std::isfinite(s.nf_a))
            bad.push_back("nf_a must be positive and finite");
        if (!(s.eta > 1.0) || !std::isfinite(s.eta))
            bad.push_back("eta must be > 1");
        if (!std::isfinite(s.beta) || !(s.beta == 0.0 || s.beta > 1.0))
            bad.push_back("beta must be 0 (single slit) or > 1");
        if (s.mode == ScenarioMode::one_slit && s.beta != 0.0)
            bad.push_back("mode one_slit requires beta = 0");
        if (s.mode == ScenarioMode::two_slit && !(s.beta > 1.0))
            bad.push_back("mode two_slit requires beta > 1");
    } else {
        try {
            validate(s.physical);
        } catch (const std::exception& e) {
            bad.push_back(e.what());
        }
        if (s.mode == ScenarioMode::one_slit && s.physical.center_b != 0.0)
            bad.push_back("mode one_slit requires center_b = 0");
        if (s.mode == ScenarioMode::two_slit &&
            !(s.physical.center_b > s.physical.half_width_a))
            bad.push_back("mode two_slit requires center_b > half_width_a");
    }
    if (s.normalization == ScenarioNormalization::conditional) {
        if (s.mode != ScenarioMode::one_slit)
            bad.push_back("conditional normalization needs mode = one_slit");
        if (!(s.sigma_over_a > 0.0) || !std::isfinite(s.sigma_over_a))
            bad.push_back("conditional normalization needs sigma_over_a > 0");
        if (s.outputs.asymptotic)
            bad.push_back("asymptotic output exists only in figure_units");
    } else {
        if (s.sigma_over_a != 0.0)
            bad.push_back(
                "sigma_over_a is only meaningful with normalization = "
                "conditional");
        if (s.normalization == ScenarioNormalization::raw_density &&
            s.outputs.asymptotic)
            bad.push_back("asymptotic output exists only in figure_units");
    }
    if (s.outputs.decomposition && s.mode != ScenarioMode::two_slit)
        bad.push_back("decomposition output needs mode = two_slit");
    if (!bad.empty())
        throw ValidityError("scenario invalid: " + join(bad, "; "));
}

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    std::set<std::string> seen;
    bool saw_dimless = false;
    bool saw_physical = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw ParseError("line " + std::to_string(lineno) + ": " + msg);
    };
    auto want_double = [&](const std::string& value, const char* key,
                           double& slot) {
        if (!parse_double(value, slot))
            fail(std::string(key) + ": '" + value + "' is not a finite number");
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail("empty key");
        if (value.empty()) fail("empty value for key '" + key + "'");
        if (!seen.insert(key).second) fail("duplicate key '" + key + "'");

        if (key == "name") {
            s.name = value;
        } else if (key == "mode") {
            if (value == "one_slit") s.mode = ScenarioMode::one_slit;
            else if (value == "two_slit") s.mode = ScenarioMode::two_slit;
            else fail("mode must be one_slit or two_slit");
        } else if (key == "nf_a") {
            saw_dimless = true;
            want_double(value, "nf_a", s.nf_a);
        } else if (key == "eta") {
            saw_dimless = true;
            want_double(value, "eta", s.eta);
        } else if (key == "beta") {
            saw_dimless = true;
            want_double(value, "beta", s.beta);
        } else if (key == "half_width_a") {
            saw_physical = true;
            want_double(value, "half_width_a", s.physical.half_width_a);
        } else if (key == "center_b") {
            saw_physical = true;
            want_double(value, "center_b", s.physical.center_b);
        } else if (key == "dist_slit_screen_L") {
            saw_physical = true;
            want_double(value, "dist_slit_screen_L",
                        s.physical.dist_slit_screen_L);
        } else if (key == "dist_source_slit_D") {
            saw_physical = true;
            want_double(value, "dist_source_slit_D",
                        s.physical.dist_source_slit_D);
        } else if (key == "wavelength") {
            saw_physical = true;
            want_double(value, "wavelength", s.physical.wavelength);
        } else if (key == "x_min_over_a") {
            want_double(value, "x_min_over_a", s.x_min_over_a);
        } else if (key == "x_max_over_a") {
            want_double(value, "x_max_over_a", s.x_max_over_a);
        } else if (key == "n_points") {
            if (!parse_int(value, s.n_points))
                fail("n_points: '" + value + "' is not an integer");
        } else if (key == "outputs") {
            s.outputs = ScenarioOutputs{false, false, false, false, false};
            if (value != "none") {
                std::istringstream toks(value);
                std::string tok;
                std::set<std::string> dup;
                while (toks >> tok) {
                    if (!dup.insert(tok).second)
                        fail("duplicate output '" + tok + "'");
                    bool known = false;
                    for (const auto& f : kOutputFields)
                        if (tok == f.token) {
                            s.outputs.*(f.member) = true;
                            known = true;
                        }
                    if (!known) fail("unknown output '" + tok + "'");
                }
            }
        } else if (key == "normalization") {
            if (value == "figure_units")
                s.normalization = ScenarioNormalization::figure_units;
            else if (value == "raw_density")
                s.normalization = ScenarioNormalization::raw_density;
            else if (value == "conditional")
                s.normalization = ScenarioNormalization::conditional;
            else
                fail("normalization must be figure_units, raw_density or "
                     "conditional");
        } else if (key == "sigma_over_a") {
            want_double(value, "sigma_over_a", s.sigma_over_a);
        } else {
            fail("unknown key '" + key + "'");
        }
    }

    s.dimensionless = !saw_physical;
    if (saw_dimless && saw_physical)
        throw ValidityError(
            "scenario invalid: give either the dimensionless triple "
            "(nf_a, eta, beta) or the physical geometry, not both");
    std::vector<std::string> missing;
    if (!seen.count("name")) missing.push_back("name");
    if (!seen.count("mode")) missing.push_back("mode");
    if (!saw_dimless && !saw_physical) {
        missing.push_back("nf_a");
        missing.push_back("eta");
    } else if (saw_dimless) {
        if (!seen.count("nf_a")) missing.push_back("nf_a");
        if (!seen.count("eta")) missing.push_back("eta");
    } else {
        for (const char* k :
             {"half_width_a", "center_b", "dist_slit_screen_L",
              "dist_source_slit_D", "wavelength"})
            if (!seen.count(k)) missing.push_back(k);
    }
    for (const char* k : {"x_min_over_a", "x_max_over_a", "n_points"})
        if (!seen.count(k)) missing.push_back(k);
    if (!missing.empty())
        throw ValidityError("scenario invalid: missing required key(s): " +
                            join(missing, ", "));
    validate_scenario(s);
    return s;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_scenario(buf.str());
}

std::string emit_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "name = " << s.name << '\n';
    out << "mode = " << to_string(s.mode) << '\n';
    if (s.dimensionless) {
        out << "nf_a = " << fmt(s.nf_a) << '\n';
        out << "eta = " << fmt(s.eta) << '\n';
        out << "beta = " << fmt(s.beta) << '\n';
    } else {
        out << "half_width_a = " << fmt(s.physical.half_width_a) << '\n';
        out << "center_b = " << fmt(s.physical.center_b) << '\n';
        out << "dist_slit_screen_L = " << fmt(s.physical.dist_slit_screen_L)
            << '\n';
        out << "dist_source_slit_D = " << fmt(s.physical.dist_source_slit_D)
            << '\n';
        out << "wavelength = " << fmt(s.physical.wavelength) << '\n';
    }
    out << "x_min_over_a = " << fmt(s.x_min_over_a) << '\n';
    out << "x_max_over_a = " << fmt(s.x_max_over_a) << '\n';
    out << "n_points = " << s.n_points << '\n';
    out << "outputs = " << outputs_to_text(s.outputs) << '\n';
    out << "normalization = " << to_string(s.normalization) << '\n';
    if (s.normalization == ScenarioNormalization::conditional)
        out << "sigma_over_a = " << fmt(s.sigma_over_a) << '\n';
    return out.str();
}

namespace {

Scenario make_fixture(const char* name, double nf_a, double beta, double lo,
                      double hi, int n, bool asymptotic, bool decomposition) {
    Scenario s;
    s.name = name;
    s.mode = beta == 0.0 ? ScenarioMode::one_slit : ScenarioMode::two_slit;
    s.dimensionless = true;
    s.nf_a = nf_a;
    s.eta = 2.0;
    s.beta = beta;
    s.x_min_over_a = lo;
    s.x_max_over_a = hi;
    s.n_points = n;
    s.outputs.exact = true;
    s.outputs.asymptotic = asymptotic;
    s.outputs.decomposition = decomposition;
    s.outputs.regime_report = true;
    s.outputs.oracle_check = false;
    s.normalization = ScenarioNormalization::figure_units;
    return s;
}

const std::vector<Scenario>& fixture_table() {
    static const std::vector<Scenario> table = {
        make_fixture("fig3a", 0.01, 0.0, -1200.0, 1200.0, 4801, true, false),
        make_fixture("fig3b", 0.5, 0.0, -40.0, 40.0, 2001, false, false),
        make_fixture("fig3c", 100.0, 0.0, -4.0, 4.0, 4001, true, false),
        make_fixture("fig4a", 0.001, 13.0, -3000.0, 3000.0, 6001, true, true),
        make_fixture("fig4b", 0.015, 13.0, -200.0, 200.0, 4001, false, true),
        make_fixture("fig4c", 0.12, 13.0, -100.0, 100.0, 8001, false, true),
        make_fixture("fig4d", 6.0, 13.0, -30.0, 30.0, 8001, false, true),
    };
    return table;
}

} // namespace

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& s : fixture_table()) v.push_back(s.name);
        return v;
    }();
    return names;
}

Scenario fixture(const std::string& name) {
    for (const auto& s : fixture_table())
        if (s.name == name) return s;
    throw ParseError("unknown fixture '" + name + "'; available: " +
                     join(fixture_names(), ", "));
}

namespace {

std::vector<std::string> decide_channels(const Scenario& s,
                                         const RunOptions& options) {
    static const std::vector<std::string> order = {"p_total", "p1", "p2",
                                                   "i12"};
    if (!options.channels.empty()) {
        std::set<std::string> want;
        for (const auto& c : options.channels) {
            if (std::find(order.begin(), order.end(), c) == order.end())
                throw ValidityError("unknown channel '" + c + "'");
            if (s.normalization == ScenarioNormalization::conditional &&
                c != "p_total")
                throw ValidityError(
                    "conditional runs expose only the p_total channel");
            want.insert(c);
        }
        std::vector<std::string> out;
        for (const auto& o : order)
            if (want.count(o)) out.push_back(o);
        return out;
    }
    if (s.normalization != ScenarioNormalization::conditional &&
        s.outputs.decomposition)
        return order;
    return {"p_total"};
}

const std::vector<double>& channel_column(const IntensityCurve& c,
                                          const std::string& name) {
    if (name == "p_total") return c.p_total;
    if (name == "p1") return c.p1;
    if (name == "p2") return c.p2;
    if (name == "i12") return c.i12;
    throw std::logic_error("channel_column: " + name);
}

void write_curve_csv(const fs::path& path, const IntensityCurve& curve,
                     const std::vector<std::string>& channels) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    f << "x_over_a";
    for (const auto& ch : channels) f << ',' << ch;
    f << '\n';
    for (std::size_t i = 0; i < curve.x_over_a.size(); ++i) {
        f << fmt(curve.x_over_a[i]);
        for (const auto& ch : channels)
            f << ',' << fmt(channel_column(curve, ch)[i]);
        f << '\n';
    }
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

double eval_approximation(const std::string& op, double u,
                          const DimensionlessParams& p) {
    if (op == "p1_fraunhofer_envelope")
        return p1_fraunhofer_envelope(u, p, false);
    if (op == "p1_fraunhofer_far") return p1_fraunhofer_far(u, p, false);
    if (op == "p1_fresnel_inside") return p1_fresnel_inside(u, p, false);
    if (op == "p1_fresnel_outside") return p1_fresnel_outside(u, p, false);
    if (op == "p2_mixed") return p2_mixed(u, p, MixedVariant::general, false);
    if (op == "p2_mixed_optical")
        return p2_mixed(u, p, MixedVariant::optical, false);
    if (op == "p2_separated") return p2_separated(u, p, false);
    throw std::logic_error("eval_approximation: " + op);
}

void write_asymptotic_csv(const fs::path& path, const Scenario& s,
                          const DimensionlessParams& p,
                          const RegimeReport& report) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    f << "x_over_a,p_approx,approximation\n";
    const double step =
        (s.x_max_over_a - s.x_min_over_a) / (s.n_points - 1);
    for (int i = 0; i < s.n_points; ++i) {
        const double u = s.x_min_over_a + step * i;
        const ValidityBand* hit = nullptr;
        for (const auto& band : report.validity_bands)
            if (u >= band.u_lo && u <= band.u_hi) {
                hit = &band;
                break;
            }
        if (hit)
            f << fmt(u) << ',' << fmt(eval_approximation(hit->approximation, u, p))
              << ',' << hit->approximation << '\n';
        else
            f << fmt(u) << ",nan,\n";
    }
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

ojson band_to_json(const ValidityBand& b) {
    ojson j;
    if (std::isinf(b.u_lo)) j["u_lo"] = nullptr;
    else j["u_lo"] = b.u_lo;
    if (std::isinf(b.u_hi)) j["u_hi"] = nullptr;
    else j["u_hi"] = b.u_hi;
    j["approximation"] = b.approximation;
    return j;
}

void write_report_json(const fs::path& path, const Scenario& s,
                       const SlitGeometry& g, const DimensionlessParams& p,
                       const RegimeReport& report) {
    ojson j;
    ojson sc;
    sc["name"] = s.name;
    sc["mode"] = to_string(s.mode);
    sc["dimensionless"] = s.dimensionless;
    if (s.dimensionless) {
        sc["nf_a"] = s.nf_a;
        sc["eta"] = s.eta;
        sc["beta"] = s.beta;
    }
    sc["grid"] = {{"x_min_over_a", s.x_min_over_a},
                  {"x_max_over_a", s.x_max_over_a},
                  {"n_points", s.n_points}};
    {
        std::vector<std::string> on;
        for (const auto& fdef : kOutputFields)
            if (s.outputs.*(fdef.member)) on.push_back(fdef.token);
        sc["outputs"] = on;
    }
    sc["normalization"] = to_string(s.normalization);
    if (s.normalization == ScenarioNormalization::conditional)
        sc["sigma_over_a"] = s.sigma_over_a;
    j["scenario"] = sc;
    j["geometry"] = {{"half_width_a", g.half_width_a},
                     {"center_b", g.center_b},
                     {"dist_slit_screen_L", g.dist_slit_screen_L},
                     {"dist_source_slit_D", g.dist_source_slit_D},
                     {"wavelength", g.wavelength}};
    j["dimensionless"] = {{"nf_a", p.nf_a}, {"nf_b", p.nf_b}, {"nf", p.nf},
                          {"eta", p.eta},   {"gamma", p.gamma},
                          {"beta", p.beta}};
    ojson reg;
    reg["single_slit"] = to_string(report.single_slit);
    if (report.two_slit) reg["two_slit"] = to_string(*report.two_slit);
    else reg["two_slit"] = nullptr;
    reg["thresholds"] = {
        {"fraunhofer_max_nf_a", report.thresholds.fraunhofer_max_nf_a},
        {"fresnel_min_nf_a", report.thresholds.fresnel_min_nf_a},
        {"mixed_max_nf_eta", report.thresholds.mixed_max_nf_eta},
        {"separated_min_nf_eta", report.thresholds.separated_min_nf_eta},
        {"edge_halfwidth_over_a", report.thresholds.edge_halfwidth_over_a}};
    ojson bands = ojson::array();
    for (const auto& b : report.validity_bands) bands.push_back(band_to_json(b));
    reg["validity_bands"] = bands;
    j["regime"] = reg;

    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    f << j.dump(2) << '\n';
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

void write_oracle_json(const fs::path& path, const Scenario& s,
                       const SlitGeometry& g, double rel_tol) {
    ojson j;
    j["name"] = s.name;
    j["rel_tol"] = rel_tol;
    std::vector<int> sides;
    if (s.mode == ScenarioMode::one_slit) sides = {+1};
    else sides = {+1, -1};
    ojson probes = ojson::array();
    double worst = 0.0;
    for (int k = 0; k < 7; ++k) {
        const double frac = (k + 0.5) / 7.0;
        const double u =
            s.x_min_over_a + frac * (s.x_max_over_a - s.x_min_over_a);
        const double x = u * g.half_width_a;
        for (int side : sides) {
            const std::complex<double> closed = amplitude_one_slit(x, g, side);
            const std::complex<double> oracle =
                amplitude_oracle(x, g, side, rel_tol);
            const double rel = std::abs(closed - oracle) / std::abs(oracle);
            worst = std::max(worst, rel);
            ojson row;
            row["x_over_a"] = u;
            row["side"] = side;
            row["closed_re"] = closed.real();
            row["closed_im"] = closed.imag();
            row["oracle_re"] = oracle.real();
            row["oracle_im"] = oracle.imag();
            row["rel_deviation"] = rel;
            probes.push_back(row);
        }
    }
    j["probes"] = probes;
    j["max_rel_deviation"] = worst;

    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    f << j.dump(2) << '\n';
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

void write_plot_script(const fs::path& path, const Scenario& s,
                       const std::vector<std::string>& channels) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    f << "# " << s.name << ": intensity curve\n";
    f << "set datafile separator ','\n";
    f << "set datafile missing 'nan'\n";
    f << "set key autotitle columnhead noenhanced\n";
    f << "set xlabel 'x/a'\n";
    const char* ylabel =
        s.normalization == ScenarioNormalization::figure_units
            ? "relative population"
            : (s.normalization == ScenarioNormalization::raw_density
                   ? "probability density"
                   : "conditional density");
    f << "set ylabel '" << ylabel << "'\n";
    f << "plot '" << s.name << "_curve.csv' using 1:2 with lines";
    for (std::size_t c = 1; c < channels.size(); ++c)
        f << ", \\\n     '' using 1:" << c + 2 << " with lines";
    if (s.outputs.asymptotic)
        f << ", \\\n     '" << s.name
          << "_asymptotic.csv' using 1:2 with lines dashtype 2 title "
             "'asymptotic'";
    f << '\n';
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

IntensityCurve conditional_curve(const Scenario& s, const SlitGeometry& g) {
    const double a = g.half_width_a;
    ConditionalEvaluator eval(s.sigma_over_a * a, g);
    IntensityCurve curve;
    curve.params = derive_params(g);
    curve.normalization = CurveNormalization::raw_density;
    curve.two_slit = false;
    const int n = s.n_points;
    curve.x_over_a.resize(n);
    curve.p_total.resize(n);
    curve.p1.assign(n, 0.0);
    curve.p2.assign(n, 0.0);
    curve.i12.assign(n, 0.0);
    const double step = (s.x_max_over_a - s.x_min_over_a) / (n - 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < n; ++i) {
        const double u = s.x_min_over_a + step * i;
        curve.x_over_a[i] = u;
        // per unit u = x/a, so window integrals are dimensionless
        curve.p_total[i] = eval(u * a) * a;
    }
    for (int i = 0; i < n; ++i) curve.p1[i] = curve.p_total[i];
    return curve;
}

} // namespace

RunResult run_scenario(const Scenario& s, const std::string& out_dir,
                       const RunOptions& options) {
    validate_scenario(s);
    if (!(options.oracle_rel_tol > 0.0 && options.oracle_rel_tol < 1.0))
        throw std::domain_error("run_scenario: oracle_rel_tol out of range");
    const SlitGeometry g = s.resolved_geometry();
    const DimensionlessParams p = derive_params(g);
    const auto channels = decide_channels(s, options);

    fs::path dir(out_dir);
    fs::create_directories(dir);
    FileGuard guard;
    RunResult result;
    auto target = [&](const char* suffix) {
        fs::path path = dir / (s.name + suffix);
        guard.add(path);
        return path;
    };

    if (s.outputs.exact) {
        IntensityCurve curve;
        if (s.normalization == ScenarioNormalization::conditional) {
            curve = conditional_curve(s, g);
        } else {
            curve = scan_curve(g, s.x_min_over_a, s.x_max_over_a, s.n_points,
                               s.normalization ==
                                       ScenarioNormalization::figure_units
                                   ? CurveNormalization::figure_units
                                   : CurveNormalization::raw_density);
        }
        const fs::path path = target("_curve.csv");
        write_curve_csv(path, curve, channels);
        result.written.push_back(path.string());
    }

    const bool two = s.mode == ScenarioMode::two_slit;
    if (s.outputs.asymptotic || s.outputs.regime_report) {
        const RegimeReport report = classify(p, two);
        if (s.outputs.asymptotic) {
            const fs::path path = target("_asymptotic.csv");
            write_asymptotic_csv(path, s, p, report);
            result.written.push_back(path.string());
        }
        if (s.outputs.regime_report) {
            const fs::path path = target("_report.json");
            write_report_json(path, s, g, p, report);
            result.written.push_back(path.string());
        }
    }

    if (s.outputs.oracle_check) {
        const fs::path path = target("_oracle.json");
        write_oracle_json(path, s, g, options.oracle_rel_tol);
        result.written.push_back(path.string());
    }

    if (s.outputs.exact) {
        const fs::path path = target("_plot.gp");
        write_plot_script(path, s, channels);
        result.written.push_back(path.string());
    }

    guard.disarm();
    return result;
}

} // namespace qslit
