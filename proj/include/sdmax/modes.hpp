#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "sdmax/grid.hpp"
#include "sdmax/units.hpp"

namespace sdmax {

/// One box mode: integer lattice tuple, its wavevector, and one of the two
/// transverse polarizations. The tuple is the identity (exact integer
/// comparison); k and epsilon are derived.
struct ModeIndex {
    std::array<int, 3> n{0, 0, 0};
    Vec3 k;
    int polarization = 1;  // 1 or 2
    Vec3 epsilon;          // real unit vector, epsilon . k = 0
};

inline bool same_mode(const ModeIndex& a, const ModeIndex& b) {
    return a.n == b.n && a.polarization == b.polarization;
}

/// Transverse unit pair for k != 0:
///  e1 = normalize(e_a - (e_a.khat) khat) with e_a the coordinate axis of
///       smallest |k . e| (ties resolved x before y before z),
///  e2 = khat x e1.
/// Right-handed: e1 x e2 = khat. For k along +z this is (x, y); for k along
/// +x it is (y, z). Throws on k = 0.
std::pair<Vec3, Vec3> polarization_basis(const Vec3& k);

/// Amplitude prefactor of the field expansion,
///   N(k) = (2 pi)^{3/2} / (pi k0^2) * sqrt(hbar omega(k)) / k .
/// Defined for propagating modes only (throws at or below the cutoff, where
/// the mode is non-normalizable). Decreases with k: shorter wavelengths enter
/// the field with smaller weight, the imprint of the short-distance
/// correction on the expansion.
double mode_amplitude(double k_mag, const PhysicalParams& params);
double mode_amplitude(const ModeIndex& mode, const PhysicalParams& params);

/// Normalized mode function evaluated at one spacetime point:
///   g(x, t) = N(k)^{-1/2} exp(-i (omega t - k . x)) .
/// (Scalar profile; the vector character lives in mode.epsilon.)
std::complex<double> mode_function(const ModeIndex& mode, const Vec3& x, double t,
                                   const PhysicalParams& params);

/// All propagating lattice modes of a box up to k_max, with per-mode derived
/// data: omega, amplitude N(k), and the discrete inner-product norm
/// C = 2 omega V / N(k) that the projection divides by. Deterministic order:
/// lexicographic in (n_x, n_y, n_z, polarization).
class ModeSet {
public:
    ModeSet(GridSpec grid, PhysicalParams params, double k_max);

    std::size_t size() const { return modes_.size(); }
    const ModeIndex& mode(std::size_t i) const { return modes_[i]; }
    double omega(std::size_t i) const { return omega_[i]; }
    double amplitude(std::size_t i) const { return amplitude_[i]; }
    double norm_constant(std::size_t i) const { return norm_[i]; }

    const GridSpec& grid() const { return grid_; }
    const PhysicalParams& params() const { return params_; }
    double k_max() const { return k_max_; }

    /// Position of a mode with the same lattice tuple and polarization.
    std::optional<std::size_t> find(const ModeIndex& mode) const;

private:
    GridSpec grid_;
    PhysicalParams params_;
    double k_max_;
    std::vector<ModeIndex> modes_;
    std::vector<double> omega_;
    std::vector<double> amplitude_;
    std::vector<double> norm_;
};

/// Enumerates every lattice wavevector with cutoff < |k| <= k_max (strict at
/// the cutoff: the edge mode has omega = 0 and no finite normalization) and
/// both polarizations. Throws if k_max does not exceed the cutoff, exceeds
/// the grid's conjugate-safe band (max_mode_index * dk), or no mode survives.
std::shared_ptr<const ModeSet> build_mode_set(const GridSpec& grid, double k_max,
                                              const PhysicalParams& params);

}  // namespace sdmax
