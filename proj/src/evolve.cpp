#include "sdmax/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sdmax/dispersion.hpp"
#include "sdmax/fft.hpp"
#include "sdmax/kernels.hpp"

namespace sdmax {

using cd = std::complex<double>;

namespace {

void require_1d(const GridSpec& grid, const char* who) {
    if (grid.dimensions != 1)
        throw std::invalid_argument(std::string(who) + ": 1D grids only");
}

// omega per lattice slot; excluded (non-propagating corrected) slots get 0,
// which is consistent because their amplitude is pinned to 0.
std::vector<double> omega_table(const GridSpec& grid, const PhysicalParams& params,
                                EvolutionModel model) {
    std::vector<double> w(grid.num_points());
    const double dk = grid.dk();
    for (int slot = 0; slot < grid.points_per_axis; ++slot) {
        const double k = std::abs(grid.unwrap(slot)) * dk;
        if (model == EvolutionModel::StandardMaxwell) {
            w[slot] = standard_omega(k, params);
        } else {
            const DispersionValue v = omega(k, params);
            w[slot] = v.is_propagating ? v.omega.real() : 0.0;
        }
    }
    return w;
}

}  // namespace

void PacketSpec::validate(const GridSpec& grid, const PhysicalParams& params,
                          EvolutionModel model) const {
    if (!(amplitude != 0.0)) throw std::invalid_argument("PacketSpec: zero amplitude");
    if (!(width > 0.0)) throw std::invalid_argument("PacketSpec: width must be > 0");
    if (!(position >= 0.0) || position >= grid.box_length)
        throw std::invalid_argument("PacketSpec: position outside the box");
    const double band = grid.max_mode_index() * grid.dk();
    if (!(center_wavenumber > 0.0) || center_wavenumber > band)
        throw std::invalid_argument("PacketSpec: center wavenumber outside the resolvable band");
    if (width > grid.box_length / 8.0)
        throw std::invalid_argument("PacketSpec: packet does not fit the box (width > L/8)");
    const double sigma_k = 1.0 / width;
    if (model == EvolutionModel::Corrected &&
        !(center_wavenumber - 3.0 * sigma_k > params.cutoff_wavenumber()))
        throw std::invalid_argument(
            "PacketSpec: corrected packets need k_c - 3/width above the cutoff, or the "
            "clipped sub-cutoff weight is not negligible");
}

EvolutionState::EvolutionState(GridSpec grid, EvolutionModel model, double time,
                               std::vector<cd> amplitudes)
    : grid_(grid), model_(model), time_(time), amp_(std::move(amplitudes)) {
    require_1d(grid_, "EvolutionState");
    if (amp_.size() != grid_.num_points())
        throw std::invalid_argument("EvolutionState: one amplitude per lattice mode required");
}

EvolutionState init_packet(const PacketSpec& packet, const GridSpec& grid,
                           const PhysicalParams& params, EvolutionModel model) {
    require_1d(grid, "init_packet");
    packet.validate(grid, params, model);
    const double dk = grid.dk();
    const double sigma = packet.width;
    const double norm = packet.amplitude * sigma * std::sqrt(2.0 * std::numbers::pi) /
                        grid.box_length;
    std::vector<cd> amps(grid.num_points(), cd{0.0, 0.0});
    for (int slot = 0; slot < grid.points_per_axis; ++slot) {
        const int m = grid.unwrap(slot);
        const double k = m * dk;
        if (model == EvolutionModel::Corrected &&
            !(std::abs(k) > params.cutoff_wavenumber()))
            continue;  // evanescent band carries no propagating amplitude
        const double d = k - packet.center_wavenumber;
        const double envelope = norm * std::exp(-0.5 * sigma * sigma * d * d);
        amps[slot] = envelope * std::polar(1.0, -k * packet.position);
    }
    return EvolutionState(grid, model, 0.0, std::move(amps));
}

EvolutionState step(const EvolutionState& state, double dt, const PhysicalParams& params) {
    const std::vector<double> w = omega_table(state.grid(), params, state.model());
    std::vector<cd> phases(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) phases[i] = std::polar(1.0, -w[i] * dt);
    std::vector<cd> amps = state.amplitudes();
    kernels::active().cmul(amps.data(), phases.data(), amps.data(), amps.size());
    return EvolutionState(state.grid(), state.model(), state.time() + dt, std::move(amps));
}

std::vector<cd> analytic_signal(const EvolutionState& state) {
    std::vector<cd> out(state.amplitudes().size());
    spectrum_to_grid(state.grid(), state.amplitudes(), out);
    return out;
}

RealProfile position_field(const EvolutionState& state) {
    const GridSpec& grid = state.grid();
    const int n = grid.points_per_axis;
    // Spatial spectrum of u = psi + conj(psi): S_m = a_m + conj(a_{-m}).
    std::vector<cd> spectrum(state.amplitudes());
    for (int slot = 0; slot < n; ++slot) {
        const int m = grid.unwrap(slot);
        if (m <= -n / 2) continue;  // no conjugate partner on the lattice
        spectrum[slot] += std::conj(state.amplitudes()[grid.wrap(-m)]);
    }
    // The unpaired Nyquist slot would break reality; evolution states are
    // built band-limited so it must be empty anyway.
    spectrum[grid.wrap(-n / 2)] += std::conj(state.amplitudes()[grid.wrap(-n / 2)]);
    std::vector<cd> values(spectrum.size());
    spectrum_to_grid(grid, spectrum, values);
    RealProfile out;
    out.values.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i] = values[i].real();
    out.max_imag_residue = kernels::active().max_abs_imag(values.data(), values.size());
    return out;
}

double spectral_energy(const EvolutionState& state, const PhysicalParams& params) {
    const std::vector<double> w = omega_table(state.grid(), params, state.model());
    return kernels::active().sum_weighted_abs2(w.data(), state.amplitudes().data(),
                                               state.amplitudes().size());
}

double centroid(const EvolutionState& state, const PhysicalParams& params) {
    const GridSpec& grid = state.grid();
    const std::size_t npts = grid.num_points();
    const double dk = grid.dk();
    const double kappa =
        state.model() == EvolutionModel::Corrected ? params.cutoff_wavenumber() : 0.0;

    std::vector<cd> dpsi_dt(npts), dpsi_dx(npts);
    {
        const std::vector<double> w = omega_table(grid, params, state.model());
        std::vector<cd> spec_t(npts), spec_x(npts);
        for (std::size_t slot = 0; slot < npts; ++slot) {
            const double k = grid.unwrap(static_cast<int>(slot)) * dk;
            spec_t[slot] = cd{0.0, -w[slot]} * state.amplitudes()[slot];
            spec_x[slot] = cd{0.0, k} * state.amplitudes()[slot];
        }
        spectrum_to_grid(grid, spec_t, dpsi_dt);
        spectrum_to_grid(grid, spec_x, dpsi_dx);
    }
    const std::vector<cd> psi = analytic_signal(state);

    const auto& kern = kernels::active();
    std::vector<double> rho(npts);
    {
        std::vector<double> tmp(npts);
        kern.abs2(dpsi_dt.data(), rho.data(), npts);
        const double inv_c2 = 1.0 / (params.c() * params.c());
        for (auto& r : rho) r *= inv_c2;
        kern.abs2(dpsi_dx.data(), tmp.data(), npts);
        for (std::size_t i = 0; i < npts; ++i) rho[i] += tmp[i];
        kern.abs2(psi.data(), tmp.data(), npts);
        for (std::size_t i = 0; i < npts; ++i) rho[i] += kappa * kappa * tmp[i];
    }

    double mass = 0.0, moment = 0.0;
    kern.indexed_sums(rho.data(), npts, &mass, &moment);
    if (!(mass > 0.0)) throw std::runtime_error("centroid: zero density");

    // Wrap-around guard: a packet leaning on the periodic seam has no usable
    // centroid. Window = L/32 on each side, 1% of the mass allowed there.
    const std::size_t win = std::max<std::size_t>(1, npts / 32);
    double edge = 0.0;
    for (std::size_t i = 0; i < win; ++i) edge += rho[i] + rho[npts - 1 - i];
    if (edge > 0.01 * mass)
        throw std::runtime_error(
            "centroid: density mass rides the periodic seam (wrap-around)");

    return grid.dx() * moment / mass;
}

double measure_group_velocity(std::span<const EvolutionState> trajectory,
                              const PhysicalParams& params) {
    if (trajectory.size() < 5)
        throw std::invalid_argument("measure_group_velocity: need at least 5 snapshots");
    const GridSpec& grid = trajectory.front().grid();
    const EvolutionModel model = trajectory.front().model();
    double t_mean = 0.0, x_mean = 0.0;
    std::vector<double> ts(trajectory.size()), xs(trajectory.size());
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        if (!(trajectory[i].grid() == grid) || trajectory[i].model() != model)
            throw std::invalid_argument(
                "measure_group_velocity: snapshots disagree on grid or model");
        ts[i] = trajectory[i].time();
        xs[i] = centroid(trajectory[i], params);
        t_mean += ts[i];
        x_mean += xs[i];
    }
    t_mean /= trajectory.size();
    x_mean /= trajectory.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        num += (ts[i] - t_mean) * (xs[i] - x_mean);
        den += (ts[i] - t_mean) * (ts[i] - t_mean);
    }
    if (!(den > 0.0))
        throw std::invalid_argument("measure_group_velocity: snapshots must span time");
    return num / den;
}

std::vector<EvolutionState> sourced_potential(std::span<const EvolutionState> xi_trajectory,
                                              const PhysicalParams& params) {
    std::vector<EvolutionState> out;
    out.reserve(xi_trajectory.size());
    const double k0 = params.cutoff_wavenumber();
    for (const EvolutionState& xi : xi_trajectory) {
        if (xi.model() != EvolutionModel::Corrected)
            throw std::domain_error(
                "sourced_potential: the baseline wave operator vanishes on its own shell; "
                "the response is resonant and has no static spectral solution");
        std::vector<cd> amps = xi.amplitudes();
        for (auto& a : amps) a *= -1.0 / (k0 * k0);
        out.emplace_back(xi.grid(), xi.model(), xi.time(), std::move(amps));
    }
    return out;
}

}  // namespace sdmax
