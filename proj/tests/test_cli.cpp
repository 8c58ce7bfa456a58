#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sdmax/config.hpp"
#include "sdmax/io.hpp"

// End-to-end checks of the installed command-line tool. The binary path
// arrives via SDMAX_CLI (set by the test harness), commands run through the
// shell with stdout+stderr captured.

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

fs::path scratch_root() {
    static const fs::path root = [] {
        fs::path p = fs::temp_directory_path() / "sdmax_cli_scratch";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return root;
}

fs::path scratch(const std::string& name) {
    const fs::path p = scratch_root() / name;
    fs::create_directories(p);
    return p;
}

RunResult run_cli(const std::string& args, const std::string& capture_name) {
    const char* bin = std::getenv("SDMAX_CLI");
    REQUIRE_MESSAGE(bin != nullptr, "SDMAX_CLI must point at the CLI binary");
    const fs::path capture = scratch_root() / (capture_name + ".log");
    const std::string cmd =
        "\"" + std::string(bin) + "\" " + args + " > \"" + capture.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    if (fs::exists(capture)) r.output = sdmax::read_text_file(capture);
    return r;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

// Data rows of a context-prefixed CSV (skips "#" lines and the header).
std::vector<std::vector<std::string>> csv_rows(const fs::path& file) {
    std::istringstream in(sdmax::read_text_file(file));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        rows.push_back(split(line, ','));
    }
    return rows;
}

}  // namespace

TEST_CASE("print-defaults emits a parseable canonical config") {
    const RunResult r = run_cli("print-defaults", "defaults");
    CHECK(r.exit_code == 0);
    CHECK(sdmax::parse_config(r.output) == sdmax::default_config());
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("", "nosub").exit_code == 2);                    // missing subcommand
    CHECK(run_cli("transmogrify", "badsub").exit_code == 2);       // unknown subcommand
    CHECK(run_cli("verify --suite entropy", "badsuite").exit_code == 2);
    CHECK(run_cli("--help", "help").exit_code == 0);
}

TEST_CASE("dispersion tables, natural units") {
    const fs::path out = scratch("disp_nat");
    const RunResult r = run_cli("--out " + out.string() + " dispersion", "disp_nat");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("box modes") != std::string::npos);

    const auto rows = csv_rows(out / "dispersion.csv");
    REQUIRE(!rows.empty());
    bool anchor_found = false;
    for (const auto& row : rows) {
        REQUIRE(row.size() == 7);
        const double k_over = std::strtod(row[1].c_str(), nullptr);
        const double omega_re = std::strtod(row[2].c_str(), nullptr);
        const double omega_im = std::strtod(row[3].c_str(), nullptr);
        if (std::abs(k_over - std::sqrt(2.0)) < 1e-15) {
            anchor_found = true;
            CHECK(std::abs(omega_re - 1.0) <= 1e-12);  // omega(sqrt2 k0) = c k0
        }
        if (k_over < 1.0) {
            CHECK(omega_re == 0.0);
            CHECK(omega_im > 0.0);
            CHECK(row[4].empty());  // no group velocity below the cutoff
            CHECK(row[5].empty());
        }
    }
    CHECK(anchor_found);

    // Mode table size must match the box the defaults describe.
    const sdmax::RunConfig def = sdmax::default_config();
    const double dk = 2.0 * std::numbers::pi / def.box_length_cutoffs;
    std::size_t expected = 0;
    for (int n = 1; n <= def.grid_points / 2 - 1; ++n) {
        const double k = n * dk;
        if (k > 1.0 && k <= def.band_cutoffs) expected += 4;  // +-n, two polarizations
    }
    CHECK(csv_rows(out / "modes.csv").size() == expected);
}

TEST_CASE("dispersion in SI units and json format") {
    const fs::path out = scratch("disp_si");
    const RunResult r = run_cli(
        "--out " + out.string() + " --units si --format json dispersion", "disp_si");
    CHECK(r.exit_code == 0);

    const auto doc = nlohmann::json::parse(sdmax::read_text_file(out / "dispersion.json"));
    const double k0 = doc.at("context").at("cutoff_wavenumber").get<double>();
    CHECK(k0 == doctest::Approx(208099692547338.22).epsilon(1e-12));
    CHECK(doc.at("context").at("minimal_length").get<double>() ==
          doctest::Approx(1.0 / k0).epsilon(1e-14));

    bool anchor_found = false;
    for (const auto& row : doc.at("rows")) {
        const double k_over = row.at("k_over_cutoff").get<double>();
        if (std::abs(k_over - std::sqrt(2.0)) < 1e-15) {
            anchor_found = true;
            const double w = row.at("omega_re").get<double>();
            CHECK(w / (299792458.0 * k0) == doctest::Approx(1.0).epsilon(1e-12));
        }
        if (k_over < 1.0) CHECK(row.at("group_velocity").is_null());
    }
    CHECK(anchor_found);
}

TEST_CASE("verify suite runs clean and writes both reports") {
    const fs::path out = scratch("verify_disp");
    const RunResult r =
        run_cli("--out " + out.string() + " verify --suite dispersion", "verify_disp");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("OK") != std::string::npos);
    CHECK(r.output.find("FAIL ") == std::string::npos);

    const auto doc =
        nlohmann::json::parse(sdmax::read_text_file(out / "verify_dispersion.json"));
    CHECK(doc.at("all_passed") == true);
    CHECK(!doc.at("checks").empty());
    CHECK(fs::exists(out / "verify_dispersion.csv"));
}

TEST_CASE("zeroed tolerances expose the failure path") {
    sdmax::RunConfig cfg = sdmax::default_config();
    cfg.tolerance_scale = 0.0;
    const fs::path cfg_file = scratch_root() / "zero_tol.cfg";
    sdmax::write_text_file(cfg_file, sdmax::to_text(cfg));

    const fs::path out = scratch("verify_zero");
    const RunResult r = run_cli("--config " + cfg_file.string() + " --out " + out.string() +
                                    " verify --suite dispersion",
                                "verify_zero");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("FAILED") != std::string::npos);
}

TEST_CASE("malformed and invalid configs exit with code 2") {
    const fs::path bad = scratch_root() / "bad.cfg";
    sdmax::write_text_file(bad, "[run]\nseed = banana\n");
    CHECK(run_cli("--config " + bad.string() + " verify", "badcfg").exit_code == 2);

    CHECK(run_cli("--config " + (scratch_root() / "missing.cfg").string() + " verify",
                  "missingcfg")
              .exit_code == 2);

    // Parses fine, but the packet is unphysical: rejected when evolve builds it.
    sdmax::RunConfig cfg = sdmax::default_config();
    cfg.packet_amplitude = 0.0;
    const fs::path zero_amp = scratch_root() / "zero_amp.cfg";
    sdmax::write_text_file(zero_amp, sdmax::to_text(cfg));
    const fs::path out = scratch("evolve_zero_amp");
    CHECK(run_cli("--config " + zero_amp.string() + " --out " + out.string() + " evolve",
                  "zeroamp")
              .exit_code == 2);
}

TEST_CASE("evolve run measures the corrected transport speed") {
    const fs::path out = scratch("evolve_nat");
    const RunResult r = run_cli("--out " + out.string() + " evolve", "evolve_nat");
    CHECK(r.exit_code == 0);

    const auto summary =
        nlohmann::json::parse(sdmax::read_text_file(out / "evolve_summary.json"));
    CHECK(summary.at("velocity_ratio").get<double>() == doctest::Approx(1.0).epsilon(0.01));
    CHECK(summary.at("predicted_group_velocity").get<double>() ==
          doctest::Approx(1.1547005383792515).epsilon(1e-12));
    CHECK(std::abs(summary.at("energy_drift").get<double>()) <= 1e-12);

    const sdmax::RunConfig def = sdmax::default_config();
    CHECK(csv_rows(out / "evolve_trajectory.csv").size() ==
          static_cast<std::size_t>(def.snapshots));
    CHECK(fs::file_size(out / "evolve_field.f64") ==
          sizeof(double) * static_cast<std::size_t>(def.grid_points));
    const auto sidecar =
        nlohmann::json::parse(sdmax::read_text_file(out / "evolve_field.json"));
    CHECK(sidecar.at("dtype") == "float64");
    CHECK(sidecar.at("shape").at(0).get<int>() == def.grid_points);
}

TEST_CASE("fock demo writes states and moments") {
    const fs::path out = scratch("fock");
    const RunResult r = run_cli("--out " + out.string() + " fock-demo", "fock");
    CHECK(r.exit_code == 0);

    const auto moments =
        nlohmann::json::parse(sdmax::read_text_file(out / "fock_moments.json"));
    CHECK(moments.at("squeezed").at("var_x").get<double>() ==
          doctest::Approx(0.18393972058572116).epsilon(1e-6));
    CHECK(moments.at("coherent").at("var_x").get<double>() ==
          doctest::Approx(0.5).epsilon(1e-8));
    CHECK(moments.at("coherent").at("mean_x").get<double>() ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-8));  // alpha = 2, X = sqrt2 Re alpha
    CHECK(moments.at("commutator_corner").get<double>() ==
          doctest::Approx(1.0 - sdmax::default_config().fock_dimension));

    const auto rows = csv_rows(out / "fock_states.csv");
    CHECK(rows.size() == static_cast<std::size_t>(sdmax::default_config().fock_dimension));
}

TEST_CASE("identical configs produce identical bytes") {
    const fs::path out_a = scratch("det_a");
    const fs::path out_b = scratch("det_b");
    CHECK(run_cli("--out " + out_a.string() + " verify --suite modes", "det_a").exit_code == 0);
    CHECK(run_cli("--out " + out_b.string() + " verify --suite modes", "det_b").exit_code == 0);
    CHECK(sdmax::read_text_file(out_a / "verify_modes.csv") ==
          sdmax::read_text_file(out_b / "verify_modes.csv"));
    CHECK(sdmax::read_text_file(out_a / "verify_modes.json") ==
          sdmax::read_text_file(out_b / "verify_modes.json"));

    CHECK(run_cli("--out " + out_a.string() + " dispersion", "det_da").exit_code == 0);
    CHECK(run_cli("--out " + out_b.string() + " dispersion", "det_db").exit_code == 0);
    CHECK(sdmax::read_text_file(out_a / "dispersion.csv") ==
          sdmax::read_text_file(out_b / "dispersion.csv"));
}
