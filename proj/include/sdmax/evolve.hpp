#pragma once

#include <complex>
#include <span>
#include <vector>

#include "sdmax/grid.hpp"
#include "sdmax/units.hpp"

// 1D spectral evolution of a scalar profile (one field component) under
// either dispersion law. State is the set of positive-frequency amplitudes
// a_m on the full lattice; the real field is u = 2 Re sum_m a_m e^{i k_m x},
// and a step multiplies each amplitude by its exact phase e^{-i omega_m dt}.
// There is no time discretization error — the only numerics are the FFTs
// used to look at the state in position space.

namespace sdmax {

enum class EvolutionModel {
    Corrected,        // omega = c sqrt(k^2 - k0^2); modes at or below k0 carry no amplitude
    StandardMaxwell,  // omega = c k (baseline for comparisons)
};

struct PacketSpec {
    double center_wavenumber;
    double width;       // real-space Gaussian sigma_x; the k-space width is 1/sigma_x
    double position;    // initial centroid, in [0, L)
    double amplitude;   // peak |envelope| of the analytic signal

    void validate(const GridSpec& grid, const PhysicalParams& params, EvolutionModel model) const;
};

class EvolutionState {
public:
    EvolutionState(GridSpec grid, EvolutionModel model, double time,
                   std::vector<std::complex<double>> amplitudes);

    const GridSpec& grid() const { return grid_; }
    EvolutionModel model() const { return model_; }
    double time() const { return time_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amp_; }

private:
    GridSpec grid_;
    EvolutionModel model_;
    double time_;
    std::vector<std::complex<double>> amp_;
};

/// Gaussian packet a_m = A * (sigma_k sqrt(2 pi) / L) * exp(-(k_m - k_c)^2 /
/// (2 sigma_k^2)) * exp(-i k_m x0). Under the corrected model, amplitudes at
/// or below the cutoff are zeroed (they do not propagate); the packet spec
/// must keep that clipped weight negligible — validate() enforces
/// k_c - 3 sigma_k > k0. Throws std::invalid_argument on zero amplitude, a
/// center outside the resolvable band, or a packet wider than the box.
EvolutionState init_packet(const PacketSpec& packet, const GridSpec& grid,
                           const PhysicalParams& params, EvolutionModel model);

/// Exact phase advance by dt (may be negative: reversibility is exact).
EvolutionState step(const EvolutionState& state, double dt, const PhysicalParams& params);

/// Analytic signal psi(x_j) = sum_m a_m e^{i k_m x_j}.
std::vector<std::complex<double>> analytic_signal(const EvolutionState& state);

/// Real field with its imaginary residue from the transform (reality check).
struct RealProfile {
    std::vector<double> values;
    double max_imag_residue;
};
RealProfile position_field(const EvolutionState& state);

/// Mode-summed omega-weighted power sum_m omega_m |a_m|^2 — conserved exactly
/// by step (each phase factor has unit modulus).
double spectral_energy(const EvolutionState& state, const PhysicalParams& params);

/// Energy-density centroid. Density rho = |dpsi/dt|^2 / c^2 + |dpsi/dx|^2 +
/// kappa^2 |psi|^2 with kappa = k0 under the corrected model and 0 under the
/// baseline (the mass-like term the corrected dispersion implies). Throws
/// std::runtime_error if more than 1% of the density mass sits within 3 grid
/// cells of the periodic seam — the centroid is then meaningless.
double centroid(const EvolutionState& state, const PhysicalParams& params);

/// Least-squares slope of centroid vs time over >= 5 snapshots (equal grids
/// and model). This is the measured transport speed the dispersion tests
/// compare against d(omega)/dk.
double measure_group_velocity(std::span<const EvolutionState> trajectory,
                              const PhysicalParams& params);

/// Potential trajectory sourced by an auxiliary-field trajectory: the exact
/// spectral inversion scales every amplitude by -1/k0^2 (corrected model
/// only; under the baseline law the wave operator vanishes on shell and the
/// response is resonant — rejected with std::domain_error).
std::vector<EvolutionState> sourced_potential(std::span<const EvolutionState> xi_trajectory,
                                              const PhysicalParams& params);

}  // namespace sdmax
