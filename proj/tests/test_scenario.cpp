// Scenario layer: config parsing/emission, fixture registry, artifact runs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qslit/errors.hpp"
#include "qslit/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qslit;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE_MESSAGE(bool(f), "cannot open " << p.string());
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

// Fresh, empty output directory under the test working directory.
fs::path fresh_dir(const char* leaf) {
    fs::path p = fs::path("scenario_suite_out") / leaf;
    fs::remove_all(p);
    return p;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

TEST_CASE("fixture registry lists the seven reference scans") {
    const std::vector<std::string> expected = {"fig3a", "fig3b", "fig3c",
                                               "fig4a", "fig4b", "fig4c",
                                               "fig4d"};
    CHECK(fixture_names() == expected);
    for (const auto& name : expected) {
        const Scenario s = fixture(name);
        CHECK(s.name == name);
        CHECK(s.dimensionless);
        CHECK(s.eta == 2.0);
        CHECK(s.outputs.exact);
        CHECK(s.outputs.regime_report);
        CHECK_FALSE(s.outputs.oracle_check);
        CHECK(s.normalization == ScenarioNormalization::figure_units);
        CHECK_NOTHROW(validate_scenario(s));
    }
}

TEST_CASE("fixture parameters match the published scan windows") {
    const Scenario a = fixture("fig3a");
    CHECK(a.mode == ScenarioMode::one_slit);
    CHECK(a.nf_a == 0.01);
    CHECK(a.beta == 0.0);
    CHECK(a.x_min_over_a == -1200.0);
    CHECK(a.x_max_over_a == 1200.0);
    CHECK(a.n_points == 4801);
    CHECK(a.outputs.asymptotic);
    CHECK_FALSE(a.outputs.decomposition);

    const Scenario d = fixture("fig4d");
    CHECK(d.mode == ScenarioMode::two_slit);
    CHECK(d.nf_a == 6.0);
    CHECK(d.beta == 13.0);
    CHECK(d.x_min_over_a == -30.0);
    CHECK(d.x_max_over_a == 30.0);
    CHECK(d.n_points == 8001);
    // Deep-Fresnel double slit: the survey carries no asymptotic overlay,
    // but the channel decomposition is on.
    CHECK_FALSE(d.outputs.asymptotic);
    CHECK(d.outputs.decomposition);
}

TEST_CASE("unknown fixture names are rejected with the available list") {
    try {
        fixture("fig9z");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("unknown fixture 'fig9z'") != std::string::npos);
        CHECK(msg.find("fig3b") != std::string::npos);
        CHECK(msg.find("fig4d") != std::string::npos);
    }
}

TEST_CASE("scenario text survives an emit-parse round trip") {
    SUBCASE("every built-in fixture") {
        for (const auto& name : fixture_names()) {
            CAPTURE(name);
            const Scenario s = fixture(name);
            CHECK(parse_scenario(emit_scenario(s)) == s);
        }
    }
    SUBCASE("physical geometry scenario") {
        Scenario s;
        s.name = "lab-23.cfg_run";
        s.mode = ScenarioMode::two_slit;
        s.dimensionless = false;
        s.physical = SlitGeometry{2e-4, 1.3e-3, 2.0, 1.0, 5e-9};
        s.x_min_over_a = -150.0;
        s.x_max_over_a = 150.0;
        s.n_points = 301;
        s.outputs = ScenarioOutputs{true, false, true, true, false};
        s.normalization = ScenarioNormalization::raw_density;
        CHECK(parse_scenario(emit_scenario(s)) == s);
    }
    SUBCASE("conditional scenario keeps the source width") {
        Scenario s;
        s.name = "cond";
        s.mode = ScenarioMode::one_slit;
        s.dimensionless = true;
        s.nf_a = 0.5;
        s.eta = 2.0;
        s.beta = 0.0;
        s.x_min_over_a = -20.0;
        s.x_max_over_a = 20.0;
        s.n_points = 101;
        s.outputs = ScenarioOutputs{true, false, false, false, false};
        s.normalization = ScenarioNormalization::conditional;
        s.sigma_over_a = 0.01;
        const std::string text = emit_scenario(s);
        CHECK(text.find("sigma_over_a = 0.01") != std::string::npos);
        CHECK(parse_scenario(text) == s);
    }
    SUBCASE("all-off output list round-trips as none") {
        Scenario s = fixture("fig3b");
        s.outputs = ScenarioOutputs{false, false, false, false, false};
        const std::string text = emit_scenario(s);
        CHECK(text.find("outputs = none") != std::string::npos);
        CHECK(parse_scenario(text) == s);
    }
}

TEST_CASE("emitted text is in canonical key order") {
    const std::string expected = "name = fig3b\n"
                                 "mode = one_slit\n"
                                 "nf_a = 0.5\n"
                                 "eta = 2\n"
                                 "beta = 0\n"
                                 "x_min_over_a = -40\n"
                                 "x_max_over_a = 40\n"
                                 "n_points = 2001\n"
                                 "outputs = exact regime_report\n"
                                 "normalization = figure_units\n";
    CHECK(emit_scenario(fixture("fig3b")) == expected);
}

TEST_CASE("parser accepts comments, blank lines and flexible spacing") {
    const std::string text = "# survey config\n"
                             "\n"
                             "name=loose\n"
                             "  mode   =   one_slit  # trailing note\n"
                             "nf_a = 0.5\n"
                             "eta = 2\n"
                             "\n"
                             "x_min_over_a = -1   # window\n"
                             "x_max_over_a = 1\n"
                             "n_points = 9\n";
    const Scenario s = parse_scenario(text);
    CHECK(s.name == "loose");
    CHECK(s.mode == ScenarioMode::one_slit);
    CHECK(s.nf_a == 0.5);
    CHECK(s.eta == 2.0);
    CHECK(s.beta == 0.0);   // optional for one_slit
    CHECK(s.dimensionless);
    CHECK(s.n_points == 9);
    // defaults survive when keys are omitted
    CHECK(s.outputs.exact);
    CHECK(s.outputs.regime_report);
    CHECK_FALSE(s.outputs.asymptotic);
    CHECK(s.normalization == ScenarioNormalization::figure_units);
}

TEST_CASE("parser diagnostics carry line numbers") {
    auto parse_error = [](const std::string& text) -> std::string {
        try {
            parse_scenario(text);
        } catch (const ParseError& e) {
            return e.what();
        }
        FAIL("expected ParseError");
        return {};
    };

    SUBCASE("missing equals sign") {
        CHECK(parse_error("name = x\nbogus line\n") ==
              "line 2: expected 'key = value'");
    }
    SUBCASE("empty key") {
        CHECK(parse_error(" = 3\n") == "line 1: empty key");
    }
    SUBCASE("empty value") {
        CHECK(parse_error("name =   \n") ==
              "line 1: empty value for key 'name'");
    }
    SUBCASE("duplicate key") {
        CHECK(parse_error("nf_a = 1\nnf_a = 2\n") ==
              "line 2: duplicate key 'nf_a'");
    }
    SUBCASE("malformed number") {
        CHECK(parse_error("eta = fast\n") ==
              "line 1: eta: 'fast' is not a finite number");
    }
    SUBCASE("non-finite number") {
        CHECK(parse_error("nf_a = inf\n") ==
              "line 1: nf_a: 'inf' is not a finite number");
    }
    SUBCASE("malformed integer") {
        CHECK(parse_error("n_points = 2.5\n") ==
              "line 1: n_points: '2.5' is not an integer");
    }
    SUBCASE("bad mode") {
        CHECK(parse_error("mode = three_slit\n") ==
              "line 1: mode must be one_slit or two_slit");
    }
    SUBCASE("duplicate output token") {
        CHECK(parse_error("outputs = exact exact\n") ==
              "line 1: duplicate output 'exact'");
    }
    SUBCASE("unknown output token") {
        CHECK(parse_error("outputs = exact extras\n") ==
              "line 1: unknown output 'extras'");
    }
    SUBCASE("bad normalization") {
        CHECK(parse_error("normalization = natural\n") ==
              "line 1: normalization must be figure_units, raw_density or "
              "conditional");
    }
    SUBCASE("unknown key") {
        CHECK(parse_error("name = x\nslits = 3\n") ==
              "line 2: unknown key 'slits'");
    }
    SUBCASE("unreadable file") {
        try {
            parse_scenario_file("no/such/dir/scan.cfg");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("cannot open scenario file") !=
                  std::string::npos);
        }
    }
}

TEST_CASE("geometry groups are mutually exclusive and required keys enforced") {
    SUBCASE("both groups present") {
        const std::string text = "name = x\nmode = one_slit\n"
                                 "nf_a = 0.5\neta = 2\n"
                                 "half_width_a = 1e-4\n"
                                 "x_min_over_a = -1\nx_max_over_a = 1\n"
                                 "n_points = 9\n";
        try {
            parse_scenario(text);
            FAIL("expected ValidityError");
        } catch (const ValidityError& e) {
            CHECK(std::string(e.what()).find("not both") != std::string::npos);
        }
    }
    SUBCASE("empty document lists the dimensionless defaults as missing") {
        try {
            parse_scenario("# nothing\n");
            FAIL("expected ValidityError");
        } catch (const ValidityError& e) {
            CHECK(std::string(e.what()) ==
                  "scenario invalid: missing required key(s): name, mode, "
                  "nf_a, eta, x_min_over_a, x_max_over_a, n_points");
        }
    }
    SUBCASE("partial physical geometry lists the rest") {
        const std::string text = "name = x\nmode = one_slit\n"
                                 "half_width_a = 1e-4\nwavelength = 5e-9\n"
                                 "x_min_over_a = -1\nx_max_over_a = 1\n"
                                 "n_points = 9\n";
        try {
            parse_scenario(text);
            FAIL("expected ValidityError");
        } catch (const ValidityError& e) {
            CHECK(std::string(e.what()) ==
                  "scenario invalid: missing required key(s): center_b, "
                  "dist_slit_screen_L, dist_source_slit_D");
        }
    }
}

TEST_CASE("validator aggregates every violation into one message") {
    Scenario s;
    s.name = "bad name!";
    s.mode = ScenarioMode::one_slit;
    s.dimensionless = true;
    s.nf_a = -1.0;
    s.eta = 2.0;
    s.beta = 0.0;
    s.x_min_over_a = -1.0;
    s.x_max_over_a = 1.0;
    s.n_points = 5;
    try {
        validate_scenario(s);
        FAIL("expected ValidityError");
    } catch (const ValidityError& e) {
        const std::string msg = e.what();
        CHECK(msg.rfind("scenario invalid: ", 0) == 0);
        CHECK(msg.find("name may use only letters") != std::string::npos);
        CHECK(msg.find("nf_a must be positive") != std::string::npos);
        CHECK(msg.find("n_points must lie in [9, 20000001]") !=
              std::string::npos);
        CHECK(msg.find("; ") != std::string::npos);
    }

    SUBCASE("mode and beta must agree") {
        Scenario t = fixture("fig3b");
        t.beta = 13.0; // one_slit with a nonzero offset
        CHECK_THROWS_AS(validate_scenario(t), ValidityError);
        t = fixture("fig4c");
        t.beta = 0.0; // two_slit without an offset
        CHECK_THROWS_AS(validate_scenario(t), ValidityError);
    }
    SUBCASE("conditional constraints") {
        Scenario t = fixture("fig4c");
        t.normalization = ScenarioNormalization::conditional;
        t.sigma_over_a = 0.1;
        CHECK_THROWS_AS(validate_scenario(t), ValidityError); // two_slit
        t = fixture("fig3b");
        t.normalization = ScenarioNormalization::conditional;
        t.sigma_over_a = 0.0; // missing width
        CHECK_THROWS_AS(validate_scenario(t), ValidityError);
        t.sigma_over_a = 0.1;
        t.outputs.asymptotic = true; // only defined in figure units
        CHECK_THROWS_AS(validate_scenario(t), ValidityError);
        t.outputs.asymptotic = false;
        CHECK_NOTHROW(validate_scenario(t));
    }
    SUBCASE("stray sigma outside conditional mode") {
        Scenario t = fixture("fig3b");
        t.sigma_over_a = 0.1;
        CHECK_THROWS_AS(validate_scenario(t), ValidityError);
    }
    SUBCASE("decomposition needs two slits") {
        Scenario t = fixture("fig3b");
        t.outputs.decomposition = true;
        CHECK_THROWS_AS(validate_scenario(t), ValidityError);
    }
    SUBCASE("raw density forbids the asymptotic overlay") {
        Scenario t = fixture("fig3a");
        t.normalization = ScenarioNormalization::raw_density;
        CHECK_THROWS_AS(validate_scenario(t), ValidityError);
        t.outputs.asymptotic = false;
        CHECK_NOTHROW(validate_scenario(t));
    }
}

TEST_CASE("run writes curve, report and plot for a single-slit fixture") {
    const Scenario s = fixture("fig3b");
    const fs::path dir = fresh_dir("fig3b_run");
    const RunResult res = run_scenario(s, dir.string(), RunOptions{});

    REQUIRE(res.written.size() == 3);
    CHECK(ends_with(res.written[0], "fig3b_curve.csv"));
    CHECK(ends_with(res.written[1], "fig3b_report.json"));
    CHECK(ends_with(res.written[2], "fig3b_plot.gp"));
    for (const auto& p : res.written) CHECK(fs::exists(p));

    const std::string csv = read_file(dir / "fig3b_curve.csv");
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == static_cast<std::size_t>(s.n_points) + 1);
    CHECK(lines[0] == "x_over_a,p_total");
    CHECK(lines[1].rfind("-40,", 0) == 0);
    CHECK(lines.back().rfind("40,", 0) == 0);
    // center row: u = 0 with a strictly positive density
    const auto mid = split_csv(lines[1 + (s.n_points - 1) / 2]);
    REQUIRE(mid.size() == 2);
    CHECK(mid[0] == "0");
    CHECK(std::stod(mid[1]) > 0.0);

    const std::string gp = read_file(dir / "fig3b_plot.gp");
    CHECK(gp.rfind("# fig3b: intensity curve", 0) == 0);
    CHECK(gp.find("set datafile separator ','") != std::string::npos);
    CHECK(gp.find("'fig3b_curve.csv' using 1:2 with lines") !=
          std::string::npos);
    CHECK(gp.find("relative population") != std::string::npos);
    CHECK(gp.find("_asymptotic.csv") == std::string::npos);

    const json rep = json::parse(read_file(dir / "fig3b_report.json"));
    CHECK(rep.at("scenario").at("name") == "fig3b");
    CHECK(rep.at("scenario").at("mode") == "one_slit");
    CHECK(rep.at("geometry").at("half_width_a") == 1.0);
    CHECK(rep.at("geometry").at("wavelength") == doctest::Approx(4.0));
    CHECK(rep.at("dimensionless").at("nf_a") == doctest::Approx(0.5));
    CHECK(rep.at("dimensionless").at("gamma") == doctest::Approx(1.0));
    CHECK(rep.at("regime").at("single_slit") == "intermediate");
    CHECK(rep.at("regime").at("two_slit").is_null());
    CHECK(rep.at("regime").at("validity_bands").empty());
    CHECK(rep.at("regime").at("thresholds").contains("fraunhofer_max_nf_a"));

    SUBCASE("a second run reproduces the bytes") {
        const fs::path dir2 = fresh_dir("fig3b_run_repeat");
        run_scenario(s, dir2.string(), RunOptions{});
        CHECK(read_file(dir2 / "fig3b_curve.csv") == csv);
        CHECK(read_file(dir2 / "fig3b_report.json") ==
              read_file(dir / "fig3b_report.json"));
    }
}

TEST_CASE("decomposition fixture writes all four channels that sum exactly") {
    const Scenario s = fixture("fig4d");
    const fs::path dir = fresh_dir("fig4d_run");
    const RunResult res = run_scenario(s, dir.string(), RunOptions{});
    REQUIRE(res.written.size() == 3);

    const auto lines = split_lines(read_file(dir / "fig4d_curve.csv"));
    REQUIRE(lines.size() == 8002);
    CHECK(lines[0] == "x_over_a,p_total,p1,p2,i12");
    for (std::size_t idx : {std::size_t(1), std::size_t(2000),
                            std::size_t(4001), std::size_t(8001)}) {
        const auto cells = split_csv(lines[idx]);
        REQUIRE(cells.size() == 5);
        const double p_total = std::stod(cells[1]);
        const double p1 = std::stod(cells[2]);
        const double p2 = std::stod(cells[3]);
        const double i12 = std::stod(cells[4]);
        const double denom = std::max(std::abs(p_total), p1 + p2);
        CHECK(std::abs(p_total - (p1 + p2 + i12)) <= 1e-12 * denom);
        CHECK(p1 >= 0.0);
        CHECK(p2 >= 0.0);
    }

    const std::string gp = read_file(dir / "fig4d_plot.gp");
    CHECK(gp.find("using 1:2") != std::string::npos);
    CHECK(gp.find("using 1:3") != std::string::npos);
    CHECK(gp.find("using 1:4") != std::string::npos);
    CHECK(gp.find("using 1:5") != std::string::npos);
}

TEST_CASE("channel selection is canonicalized and validated") {
    const Scenario s = fixture("fig4d");
    SUBCASE("subset request comes back in canonical order") {
        const fs::path dir = fresh_dir("fig4d_subset");
        RunOptions opt;
        opt.channels = {"i12", "p1"}; // deliberately out of order
        run_scenario(s, dir.string(), opt);
        const auto lines = split_lines(read_file(dir / "fig4d_curve.csv"));
        CHECK(lines[0] == "x_over_a,p1,i12");
    }
    SUBCASE("unknown channel is rejected before any file is written") {
        const fs::path dir = fresh_dir("fig4d_badchan");
        RunOptions opt;
        opt.channels = {"p3"};
        CHECK_THROWS_AS(run_scenario(s, dir.string(), opt), ValidityError);
        CHECK_FALSE(fs::exists(dir));
    }
    SUBCASE("conditional runs expose only p_total") {
        Scenario c = fixture("fig3b");
        c.name = "cond_chan";
        c.normalization = ScenarioNormalization::conditional;
        c.sigma_over_a = 0.1;
        c.x_min_over_a = -1.0;
        c.x_max_over_a = 1.0;
        c.n_points = 9;
        c.outputs = ScenarioOutputs{true, false, false, false, false};
        RunOptions opt;
        opt.channels = {"p1"};
        const fs::path dir = fresh_dir("cond_badchan");
        CHECK_THROWS_AS(run_scenario(c, dir.string(), opt), ValidityError);
        CHECK_FALSE(fs::exists(dir));
    }
}

TEST_CASE("asymptotic overlay csv marks gaps between validity bands") {
    const Scenario s = fixture("fig3a");
    const fs::path dir = fresh_dir("fig3a_run");
    const RunResult res = run_scenario(s, dir.string(), RunOptions{});
    REQUIRE(res.written.size() == 4);
    CHECK(ends_with(res.written[1], "fig3a_asymptotic.csv"));

    const auto lines = split_lines(read_file(dir / "fig3a_asymptotic.csv"));
    REQUIRE(lines.size() == 4802);
    CHECK(lines[0] == "x_over_a,p_approx,approximation");
    // u = -1200 sits deep inside the left envelope band
    {
        const auto cells = split_csv(lines[1]);
        REQUIRE(cells.size() == 3);
        CHECK(cells[0] == "-1200");
        CHECK(cells[2] == "p1_fraunhofer_envelope");
        CHECK(std::isfinite(std::stod(cells[1])));
    }
    // u = 0 (row index 2400) is between the bands: value withheld
    {
        const auto cells = split_csv(lines[1 + 2400]);
        REQUIRE(cells.size() == 3);
        CHECK(cells[0] == "0");
        CHECK(cells[1] == "nan");
        CHECK(cells[2].empty());
    }
    const std::string gp = read_file(dir / "fig3a_plot.gp");
    CHECK(gp.find("'fig3a_asymptotic.csv' using 1:2 with lines dashtype 2") !=
          std::string::npos);
}

TEST_CASE("regime report json records parameters and bands") {
    const Scenario s = fixture("fig4a");
    const fs::path dir = fresh_dir("fig4a_run");
    run_scenario(s, dir.string(), RunOptions{});
    const json rep = json::parse(read_file(dir / "fig4a_report.json"));

    CHECK(rep.at("scenario").at("mode") == "two_slit");
    CHECK(rep.at("scenario").at("nf_a") == doctest::Approx(0.001));
    const auto outputs = rep.at("scenario").at("outputs");
    CHECK(outputs.size() == 4);
    CHECK(outputs[0] == "exact");
    CHECK(outputs[1] == "asymptotic");
    CHECK(outputs[2] == "decomposition");
    CHECK(outputs[3] == "regime_report");

    CHECK(rep.at("geometry").at("wavelength") == doctest::Approx(2000.0));
    CHECK(rep.at("dimensionless").at("nf") == doctest::Approx(0.013));
    CHECK(rep.at("dimensionless").at("nf_b") == doctest::Approx(0.169));
    CHECK(rep.at("regime").at("single_slit") == "fraunhofer");
    CHECK(rep.at("regime").at("two_slit") == "mixed");

    const auto bands = rep.at("regime").at("validity_bands");
    REQUIRE(bands.size() == 3);
    CHECK(bands[0].at("u_lo").is_null()); // open-ended toward -infinity
    CHECK(bands[0].at("u_hi") == doctest::Approx(-46.0));
    CHECK(bands[1].at("u_lo") == doctest::Approx(-6.0));
    CHECK(bands[1].at("u_hi") == doctest::Approx(6.0));
    CHECK(bands[2].at("u_hi").is_null());
    for (const auto& b : bands) CHECK(b.at("approximation") == "p2_mixed");
}

TEST_CASE("oracle check records probe deviations below tolerance") {
    Scenario s = fixture("fig3b");
    s.outputs.oracle_check = true;
    const fs::path dir = fresh_dir("fig3b_oracle");
    const RunResult res = run_scenario(s, dir.string(), RunOptions{});
    REQUIRE(res.written.size() == 4);
    CHECK(ends_with(res.written[2], "fig3b_oracle.json"));

    const json j = json::parse(read_file(dir / "fig3b_oracle.json"));
    CHECK(j.at("name") == "fig3b");
    CHECK(j.at("rel_tol") == doctest::Approx(1e-10));
    const auto probes = j.at("probes");
    REQUIRE(probes.size() == 7); // one slit: a single aperture side
    const double worst = j.at("max_rel_deviation").get<double>();
    CHECK(worst <= 1e-8);
    double seen_worst = 0.0;
    for (const auto& row : probes) {
        CHECK(row.at("side") == 1);
        const double rel = row.at("rel_deviation").get<double>();
        CHECK(rel <= worst * (1 + 1e-12));
        seen_worst = std::max(seen_worst, rel);
        // modulus sanity: closed and oracle amplitudes are both nonzero
        const double cr = row.at("closed_re").get<double>();
        const double ci = row.at("closed_im").get<double>();
        CHECK(std::hypot(cr, ci) > 0.0);
    }
    CHECK(seen_worst == doctest::Approx(worst));
    // first probe lands mid-way through the first of seven window strips
    CHECK(probes[0].at("x_over_a").get<double>() ==
          doctest::Approx(-40.0 + (0.5 / 7.0) * 80.0));

    SUBCASE("oracle tolerance is validated up front") {
        const fs::path dir2 = fresh_dir("fig3b_oracle_badtol");
        RunOptions opt;
        opt.oracle_rel_tol = 0.0;
        CHECK_THROWS_AS(run_scenario(s, dir2.string(), opt),
                        std::domain_error);
        CHECK_FALSE(fs::exists(dir2));
    }
}

TEST_CASE("conditional runs produce a symmetric single channel") {
    Scenario s;
    s.name = "cond_check";
    s.mode = ScenarioMode::one_slit;
    s.dimensionless = true;
    s.nf_a = 0.5;
    s.eta = 2.0;
    s.beta = 0.0;
    s.x_min_over_a = -3.0;
    s.x_max_over_a = 3.0;
    s.n_points = 13;
    s.outputs = ScenarioOutputs{true, false, false, false, false};
    s.normalization = ScenarioNormalization::conditional;
    s.sigma_over_a = 0.1;

    const fs::path dir = fresh_dir("cond_run");
    const RunResult res = run_scenario(s, dir.string(), RunOptions{});
    REQUIRE(res.written.size() == 2); // curve + plot only
    CHECK(ends_with(res.written[0], "cond_check_curve.csv"));
    CHECK(ends_with(res.written[1], "cond_check_plot.gp"));

    const auto lines = split_lines(read_file(dir / "cond_check_curve.csv"));
    REQUIRE(lines.size() == 14);
    CHECK(lines[0] == "x_over_a,p_total");
    std::vector<double> u(13), p(13);
    for (int i = 0; i < 13; ++i) {
        const auto cells = split_csv(lines[1 + i]);
        REQUIRE(cells.size() == 2);
        u[i] = std::stod(cells[0]);
        p[i] = std::stod(cells[1]);
        CHECK(p[i] > 0.0);
    }
    CHECK(u.front() == -3.0);
    CHECK(u.back() == 3.0);
    for (int i = 0; i < 6; ++i) {
        CAPTURE(i);
        CHECK(std::abs(p[i] - p[12 - i]) <= 1e-12 * p[i]);
    }
    const std::string gp = read_file(dir / "cond_check_plot.gp");
    CHECK(gp.find("conditional density") != std::string::npos);
}

TEST_CASE("failed runs leave no output directory behind") {
    SUBCASE("invalid scenario is rejected before any io") {
        Scenario s = fixture("fig3b");
        s.n_points = 3;
        const fs::path dir = fresh_dir("invalid_run");
        CHECK_THROWS_AS(run_scenario(s, dir.string(), RunOptions{}),
                        ValidityError);
        CHECK_FALSE(fs::exists(dir));
    }
    SUBCASE("output path through a regular file fails cleanly") {
        const fs::path base = fresh_dir("blocked");
        fs::create_directories(base);
        const fs::path blocker = base / "blocker";
        std::ofstream(blocker.string()) << "x";
        const fs::path dir = blocker / "sub";
        CHECK_THROWS_AS(
            run_scenario(fixture("fig3b"), dir.string(), RunOptions{}),
            std::exception);
        CHECK_FALSE(fs::exists(dir));
    }
}
