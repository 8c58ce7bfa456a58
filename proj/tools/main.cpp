// Command-line front end: dispersion tables, verification suites, packet
// transport runs, and a Fock-space demo, all driven by one config file.
// Exit codes: 0 success, 1 verification/computation failure, 2 bad
// configuration or usage. All outputs are deterministic byte-for-byte for a
// given config (17-significant-digit text, no timestamps).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "sdmax/config.hpp"
#include "sdmax/dispersion.hpp"
#include "sdmax/evolve.hpp"
#include "sdmax/fock.hpp"
#include "sdmax/io.hpp"
#include "sdmax/modes.hpp"
#include "sdmax/report.hpp"
#include "sdmax/units.hpp"
#include "sdmax/verify.hpp"

namespace {

using sdmax::format_g17;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string table_path(const sdmax::RunConfig& cfg, const std::string& stem) {
    return (fs::path(cfg.output_dir) / (stem + "." + cfg.format)).string();
}

json context_json(const sdmax::RunConfig& cfg, const sdmax::PhysicalParams& p) {
    json ctx;
    ctx["units"] = to_string(cfg.units);
    ctx["alpha"] = cfg.alpha;
    ctx["cutoff_wavenumber"] = p.cutoff_wavenumber();
    ctx["minimal_length"] = p.minimal_length();
    ctx["seed"] = cfg.seed;
    return ctx;
}

std::string context_csv(const sdmax::RunConfig& cfg, const sdmax::PhysicalParams& p) {
    std::ostringstream out;
    out << "# units = " << to_string(cfg.units) << "\n";
    out << "# alpha = " << format_g17(cfg.alpha) << "\n";
    out << "# cutoff_wavenumber = " << format_g17(p.cutoff_wavenumber()) << "\n";
    out << "# minimal_length = " << format_g17(p.minimal_length()) << "\n";
    return out.str();
}

int cmd_print_defaults() {
    std::cout << sdmax::to_text(sdmax::default_config());
    return 0;
}

int cmd_dispersion(const sdmax::RunConfig& cfg) {
    const sdmax::PhysicalParams p = cfg.make_params();
    const double k0 = p.cutoff_wavenumber();

    std::set<double> ks;
    for (int i = 0; i <= 120; ++i) ks.insert(k0 * std::pow(10.0, -1.0 + 3.0 * i / 120.0));
    ks.insert(std::sqrt(2.0) * k0);  // anchor rows
    ks.insert(2.0 * k0);

    if (cfg.format == "csv") {
        std::ostringstream out;
        out << context_csv(cfg, p);
        out << "k,k_over_cutoff,omega_re,omega_im,group_velocity,phase_velocity,standard_omega\n";
        for (const double k : ks) {
            const sdmax::DispersionValue w = sdmax::omega(k, p);
            out << format_g17(k) << ',' << format_g17(k / k0) << ','
                << format_g17(w.omega.real()) << ',' << format_g17(w.omega.imag()) << ',';
            if (w.is_propagating)
                out << format_g17(sdmax::group_velocity(k, p)) << ','
                    << format_g17(sdmax::phase_velocity(k, p));
            else
                out << ',';
            out << ',' << format_g17(sdmax::standard_omega(k, p)) << "\n";
        }
        sdmax::write_text_file(table_path(cfg, "dispersion"), out.str());
    } else {
        json doc;
        doc["context"] = context_json(cfg, p);
        doc["rows"] = json::array();
        for (const double k : ks) {
            const sdmax::DispersionValue w = sdmax::omega(k, p);
            json row;
            row["k"] = k;
            row["k_over_cutoff"] = k / k0;
            row["omega_re"] = w.omega.real();
            row["omega_im"] = w.omega.imag();
            if (w.is_propagating) {
                row["group_velocity"] = sdmax::group_velocity(k, p);
                row["phase_velocity"] = sdmax::phase_velocity(k, p);
            } else {
                row["group_velocity"] = nullptr;
                row["phase_velocity"] = nullptr;
            }
            row["standard_omega"] = sdmax::standard_omega(k, p);
            doc["rows"].push_back(std::move(row));
        }
        sdmax::write_text_file(table_path(cfg, "dispersion"), doc.dump(2) + "\n");
    }

    // Mode table for the configured box.
    const sdmax::GridSpec grid(cfg.box_length_cutoffs / k0, cfg.grid_points, 1);
    const auto set = sdmax::build_mode_set(grid, cfg.band_cutoffs * k0, p);
    if (cfg.format == "csv") {
        std::ostringstream out;
        out << context_csv(cfg, p);
        out << "n_x,n_y,n_z,polarization,k,omega_re,omega_im,amplitude,norm_constant\n";
        for (std::size_t i = 0; i < set->size(); ++i) {
            const sdmax::ModeIndex& m = set->mode(i);
            out << m.n[0] << ',' << m.n[1] << ',' << m.n[2] << ',' << m.polarization << ','
                << format_g17(m.k.norm()) << ',' << format_g17(set->omega(i)) << ','
                << format_g17(0.0) << ',' << format_g17(set->amplitude(i)) << ','
                << format_g17(set->norm_constant(i)) << "\n";
        }
        sdmax::write_text_file(table_path(cfg, "modes"), out.str());
    } else {
        json doc;
        doc["context"] = context_json(cfg, p);
        doc["modes"] = json::array();
        for (std::size_t i = 0; i < set->size(); ++i) {
            const sdmax::ModeIndex& m = set->mode(i);
            json row;
            row["n"] = {m.n[0], m.n[1], m.n[2]};
            row["polarization"] = m.polarization;
            row["k"] = m.k.norm();
            row["omega_re"] = set->omega(i);
            row["omega_im"] = 0.0;
            row["amplitude"] = set->amplitude(i);
            row["norm_constant"] = set->norm_constant(i);
            doc["modes"].push_back(std::move(row));
        }
        sdmax::write_text_file(table_path(cfg, "modes"), doc.dump(2) + "\n");
    }

    std::cout << "dispersion table: " << ks.size() << " rows, " << set->size()
              << " box modes; cutoff_wavenumber = " << format_g17(k0)
              << ", minimal_length = " << format_g17(p.minimal_length()) << "\n";
    return 0;
}

int cmd_verify(const sdmax::RunConfig& cfg, const std::string& suite) {
    const sdmax::VerificationReport report = sdmax::run_verification(cfg, suite);
    const std::string stem = "verify_" + suite;
    sdmax::write_text_file(fs::path(cfg.output_dir) / (stem + ".csv"), report.to_csv());
    sdmax::write_text_file(fs::path(cfg.output_dir) / (stem + ".json"), report.to_json());
    std::cout << report.to_lines();
    std::cout << (report.all_passed() ? "OK" : "FAILED") << ": " << report.checks.size()
              << " checks, " << report.failure_count() << " failures\n";
    return report.all_passed() ? 0 : 1;
}

int cmd_evolve(const sdmax::RunConfig& cfg) {
    const sdmax::PhysicalParams p = cfg.make_params();
    const double k0 = p.cutoff_wavenumber();
    const double c = p.c();
    const sdmax::GridSpec grid(cfg.box_length_cutoffs / k0, cfg.grid_points, 1);
    const sdmax::EvolutionModel model = cfg.evolution_model == "corrected"
                                            ? sdmax::EvolutionModel::Corrected
                                            : sdmax::EvolutionModel::StandardMaxwell;

    sdmax::PacketSpec packet{cfg.packet_center_cutoffs * k0, cfg.packet_width_cutoffs / k0,
                             cfg.packet_position_fraction * grid.box_length,
                             cfg.packet_amplitude};
    sdmax::EvolutionState state = sdmax::init_packet(packet, grid, p, model);

    std::vector<sdmax::EvolutionState> traj;
    traj.push_back(state);
    const double dt = cfg.duration_cutoffs / (c * k0) / (cfg.snapshots - 1);
    for (int i = 1; i < cfg.snapshots; ++i) {
        state = sdmax::step(state, dt, p);
        traj.push_back(state);
    }

    std::ostringstream rows;
    rows << context_csv(cfg, p);
    rows << "snapshot,time,centroid,spectral_energy,reality_residue\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto field = sdmax::position_field(traj[i]);
        rows << i << ',' << format_g17(traj[i].time()) << ','
             << format_g17(sdmax::centroid(traj[i], p)) << ','
             << format_g17(sdmax::spectral_energy(traj[i], p)) << ','
             << format_g17(field.max_imag_residue) << "\n";
    }
    sdmax::write_text_file(fs::path(cfg.output_dir) / "evolve_trajectory.csv", rows.str());

    const double measured = sdmax::measure_group_velocity(traj, p);
    json summary;
    summary["context"] = context_json(cfg, p);
    summary["model"] = cfg.evolution_model;
    summary["center_wavenumber"] = packet.center_wavenumber;
    summary["measured_group_velocity"] = measured;
    double predicted = c;
    if (model == sdmax::EvolutionModel::Corrected)
        predicted = sdmax::group_velocity(packet.center_wavenumber, p);
    summary["predicted_group_velocity"] = predicted;
    summary["velocity_ratio"] = measured / predicted;
    const double e0 = sdmax::spectral_energy(traj.front(), p);
    const double e1 = sdmax::spectral_energy(traj.back(), p);
    summary["energy_drift"] = e1 / e0 - 1.0;
    sdmax::write_text_file(fs::path(cfg.output_dir) / "evolve_summary.json",
                           summary.dump(2) + "\n");

    const auto final_field = sdmax::position_field(traj.back());
    sdmax::write_binary_doubles(fs::path(cfg.output_dir) / "evolve_field.f64",
                                final_field.values);
    json sidecar;
    sidecar["dtype"] = "float64";
    sidecar["byte_order"] = "little";
    sidecar["layout"] = "C";
    sidecar["shape"] = {grid.points_per_axis};
    sidecar["box_length"] = grid.box_length;
    sidecar["time"] = traj.back().time();
    sidecar["field"] = "real scalar profile u(x)";
    sidecar["context"] = context_json(cfg, p);
    sdmax::write_text_file(fs::path(cfg.output_dir) / "evolve_field.json",
                           sidecar.dump(2) + "\n");

    std::cout << "measured group velocity " << format_g17(measured / c)
              << " c (predicted " << format_g17(predicted / c) << " c)\n";
    return 0;
}

int cmd_fock_demo(const sdmax::RunConfig& cfg) {
    const sdmax::PhysicalParams p = cfg.make_params();
    const double k0 = p.cutoff_wavenumber();
    const int dim = cfg.fock_dimension;

    sdmax::ModeIndex mode;
    mode.n = {0, 0, 2};
    mode.k = sdmax::Vec3{0.0, 0.0, 2.0 * k0};
    mode.polarization = 1;
    mode.epsilon = sdmax::Vec3{1.0, 0.0, 0.0};

    auto [x, pq] = sdmax::quadratures(mode, dim, p, sdmax::QuadratureScale::Dimensionless);
    auto [b, bdag] = sdmax::truncated_ladder(dim);
    const std::complex<double> alpha{cfg.coherent_re, cfg.coherent_im};
    const sdmax::StateVector coh = sdmax::coherent_state(alpha, dim);
    const sdmax::StateVector sq = sdmax::squeezed_vacuum(cfg.squeeze_r, cfg.squeeze_phi, dim);

    std::ostringstream out;
    out << context_csv(cfg, p);
    out << "n,coherent_re,coherent_im,squeezed_re,squeezed_im\n";
    for (int n = 0; n < dim; ++n)
        out << n << ',' << format_g17(coh.amplitudes(n).real()) << ','
            << format_g17(coh.amplitudes(n).imag()) << ','
            << format_g17(sq.amplitudes(n).real()) << ','
            << format_g17(sq.amplitudes(n).imag()) << "\n";
    sdmax::write_text_file(fs::path(cfg.output_dir) / "fock_states.csv", out.str());

    const Eigen::MatrixXcd comm = b.entries * bdag.entries - bdag.entries * b.entries;
    json moments;
    moments["context"] = context_json(cfg, p);
    moments["dimension"] = dim;
    moments["mode_k_over_cutoff"] = 2.0;
    moments["coherent"] = {{"alpha_re", alpha.real()},
                           {"alpha_im", alpha.imag()},
                           {"mean_x", sdmax::expectation(x, coh).real()},
                           {"mean_p", sdmax::expectation(pq, coh).real()},
                           {"var_x", sdmax::variance(x, coh)},
                           {"var_p", sdmax::variance(pq, coh)},
                           {"edge_leakage", coh.edge_leakage()}};
    moments["squeezed"] = {{"r", cfg.squeeze_r},
                           {"phi", cfg.squeeze_phi},
                           {"var_x", sdmax::variance(x, sq)},
                           {"var_p", sdmax::variance(pq, sq)},
                           {"uncertainty_product", sdmax::variance(x, sq) * sdmax::variance(pq, sq)},
                           {"edge_leakage", sq.edge_leakage()}};
    moments["commutator_corner"] = comm(dim - 1, dim - 1).real();
    sdmax::write_text_file(fs::path(cfg.output_dir) / "fock_moments.json",
                           moments.dump(2) + "\n");

    std::cout << "fock demo: dim " << dim << ", squeezed var_x "
              << format_g17(sdmax::variance(x, sq)) << ", var_p "
              << format_g17(sdmax::variance(pq, sq)) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral toolkit for short-distance-corrected electrodynamics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::string units_override;
    std::string format_override;
    std::string suite = "all";

    app.add_option("--config", config_path, "config file (defaults used when omitted)");
    app.add_option("--out", out_override, "output directory (overrides config)");
    app.add_option("--units", units_override, "unit system: si or natural (overrides config)");
    app.add_option("--format", format_override, "table format: csv or json (overrides config)");

    CLI::App* sub_defaults =
        app.add_subcommand("print-defaults", "write the default config to stdout");
    CLI::App* sub_dispersion =
        app.add_subcommand("dispersion", "tabulate the corrected dispersion and box modes");
    CLI::App* sub_verify = app.add_subcommand("verify", "run a verification suite");
    sub_verify->add_option("--suite", suite, "dispersion|modes|greens|fock|evolve|all");
    CLI::App* sub_evolve =
        app.add_subcommand("evolve", "propagate the configured wave packet and measure transport");
    CLI::App* sub_fock = app.add_subcommand("fock-demo", "truncated quantum mode demo");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub_defaults->parsed()) return cmd_print_defaults();

        sdmax::RunConfig cfg =
            config_path.empty() ? sdmax::default_config() : sdmax::load_config(config_path);
        if (!out_override.empty()) cfg.output_dir = out_override;
        if (!units_override.empty()) cfg.units = sdmax::unit_system_from_string(units_override);
        if (!format_override.empty()) cfg.format = format_override;
        cfg.validate();

        if (sub_dispersion->parsed()) return cmd_dispersion(cfg);
        if (sub_verify->parsed()) return cmd_verify(cfg, suite);
        if (sub_evolve->parsed()) return cmd_evolve(cfg);
        if (sub_fock->parsed()) return cmd_fock_demo(cfg);
        std::cerr << "configuration error: no subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
