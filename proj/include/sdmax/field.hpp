#pragma once

#include <array>
#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "sdmax/grid.hpp"
#include "sdmax/modes.hpp"

namespace sdmax {

using cplx = std::complex<double>;

/// What a coefficient set expands: the corrected vector potential, or the
/// auxiliary field xi = -box(A) that obeys the massive Klein-Gordon equation.
/// Both use the same expansion functions; the tag controls source/potential
/// bookkeeping (a potential is sourced from an auxiliary configuration by an
/// exact -1/k0^2 scaling, see greens.hpp).
enum class FieldKind { Potential, Auxiliary };

/// A field as data: positive-frequency coefficients b on the modes of one
/// ModeSet, index-aligned with it, at one instant. The physical field is
///   F(x, t) = sum_m N_m epsilon_m b_m e^{-i(omega_m t - k_m.x)} + c.c.
class FieldConfiguration {
public:
    FieldConfiguration(std::shared_ptr<const ModeSet> modes, double time,
                       FieldKind kind = FieldKind::Potential);

    const ModeSet& modes() const { return *modes_; }
    std::shared_ptr<const ModeSet> modes_ptr() const { return modes_; }
    double time() const { return time_; }
    void set_time(double t) { time_ = t; }
    FieldKind kind() const { return kind_; }
    void set_kind(FieldKind k) { kind_ = k; }

    cplx coefficient(std::size_t i) const { return coeffs_.at(i); }
    void set_coefficient(std::size_t i, cplx b) { coeffs_.at(i) = b; }
    /// By mode identity; throws std::invalid_argument if the mode is not in
    /// the set (a coefficient on an absent mode is meaningless).
    void set_coefficient(const ModeIndex& mode, cplx b);
    const std::vector<cplx>& coefficients() const { return coeffs_; }

    void scale(cplx s);
    /// this += s * other; requires the identical ModeSet object.
    void accumulate(cplx s, const FieldConfiguration& other);

private:
    std::shared_ptr<const ModeSet> modes_;
    std::vector<cplx> coeffs_;
    double time_;
    FieldKind kind_;
};

/// A complex vector field and its time derivative sampled on the lattice
/// (component-major storage). Synthesis fills it with the positive-frequency
/// part; the real field is 2 Re of it.
struct GridField {
    GridSpec grid;
    double time;
    std::array<std::vector<cplx>, 3> value;
    std::array<std::vector<cplx>, 3> dt;
};

/// A real vector field plus the largest |imaginary| residue left over from
/// the inverse transform — the reality check, should be at roundoff.
struct RealGridField {
    GridSpec grid;
    double time;
    std::array<std::vector<double>, 3> component;
    double max_imag_residue;
};

/// Positive-frequency synthesis via FFT scatter:
///   F+(x) = sum_m N_m epsilon_m b_m e^{-i omega_m t} e^{i k_m.x},  dt = -i omega per mode.
GridField synthesize_field(const FieldConfiguration& config);

/// Low-level synthesis shared by fields and wavepackets: one complex vector
/// weight per mode (epsilon and all phases already included), scattered at +k
/// (plus the conjugate at -k when add_conjugate), inverse-transformed per
/// component. weights.size() must equal set.size().
std::array<std::vector<cplx>, 3> synthesize_from_weights(const ModeSet& set,
                                                         std::span<const CVec3> weights,
                                                         bool add_conjugate);

/// Full real field F+ + c.c. (conjugate coefficients scattered at -k).
RealGridField synthesize_real_field(const FieldConfiguration& config);

/// Observable fields of a potential configuration: E = -dA/dt, B = curl A,
/// both real. For a single propagating mode |B| c / |E| = c k / omega > 1,
/// another face of the corrected dispersion.
std::pair<RealGridField, RealGridField> electric_magnetic(const FieldConfiguration& config);

/// Discrete Klein-Gordon inner product
///   (f, g) = i dV sum_x sum_c [conj(f) dt(g) - g conj(dt f)] .
/// Requires matching grids and equal times.
cplx kg_inner_product(const GridField& f, const GridField& g);

/// Normalized mode function as a grid field (pointwise evaluation — the slow
/// reference path, deliberately independent of the FFT synthesis).
GridField mode_grid_field(const ModeSet& set, std::size_t i, double t);

/// Recovers one expansion coefficient from a positive-frequency field:
///   b_m = (N_m epsilon_m u_m, F) / (2 omega_m N_m^2 V) .
/// The conjugate-mode overlap vanishes identically on the lattice, so the
/// projection is exact for fields expanded in this set.
cplx project_coefficient(const GridField& field, const ModeSet& set, std::size_t i);
cplx project_coefficient(const GridField& field, const ModeSet& set, const ModeIndex& mode);

/// dV * sum over points and components of |value|^2.
double grid_l2_norm(const GridField& field);

}  // namespace sdmax
