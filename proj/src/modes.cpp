#include "sdmax/modes.hpp"

#include <cmath>
#include <stdexcept>

#include "sdmax/dispersion.hpp"

namespace sdmax {

std::pair<Vec3, Vec3> polarization_basis(const Vec3& k) {
    const double kn = k.norm();
    if (!(kn > 0.0)) throw std::invalid_argument("polarization_basis: k must be nonzero");
    const Vec3 khat = (1.0 / kn) * k;

    const std::array<Vec3, 3> axes = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    int best = 0;
    double best_abs = std::abs(khat.x);
    const std::array<double, 3> comps = {std::abs(khat.x), std::abs(khat.y), std::abs(khat.z)};
    for (int i = 1; i < 3; ++i) {
        if (comps[i] < best_abs) {  // strict: ties keep the earlier axis
            best_abs = comps[i];
            best = i;
        }
    }
    const Vec3 ea = axes[best];
    Vec3 e1 = ea - dot(ea, khat) * khat;
    e1 = (1.0 / e1.norm()) * e1;
    const Vec3 e2 = cross(khat, e1);
    return {e1, e2};
}

double mode_amplitude(double k_mag, const PhysicalParams& params) {
    const DispersionValue w = omega(k_mag, params);
    if (!w.is_propagating)
        throw std::invalid_argument("mode_amplitude: undefined at or below the cutoff");
    const double k0 = params.cutoff_wavenumber();
    const double pre = std::pow(2.0 * std::numbers::pi, 1.5) / (std::numbers::pi * k0 * k0);
    return pre * std::sqrt(params.hbar() * w.omega.real()) / k_mag;
}

double mode_amplitude(const ModeIndex& mode, const PhysicalParams& params) {
    return mode_amplitude(mode.k.norm(), params);
}

std::complex<double> mode_function(const ModeIndex& mode, const Vec3& x, double t,
                                   const PhysicalParams& params) {
    const double k_mag = mode.k.norm();
    const DispersionValue w = omega(k_mag, params);
    if (!w.is_propagating)
        throw std::invalid_argument("mode_function: undefined at or below the cutoff");
    const double phase = dot(mode.k, x) - w.omega.real() * t;
    const double amp = 1.0 / std::sqrt(mode_amplitude(k_mag, params));
    return amp * std::complex<double>(std::cos(phase), std::sin(phase));
}

ModeSet::ModeSet(GridSpec grid, PhysicalParams params, double k_max)
    : grid_(grid), params_(std::move(params)), k_max_(k_max) {
    const double k0 = params_.cutoff_wavenumber();
    if (!(k_max > k0))
        throw std::invalid_argument("ModeSet: k_max must exceed the cutoff wavenumber");
    const double dk = grid_.dk();
    const double band = grid_.max_mode_index() * dk;
    if (k_max > band)
        throw std::invalid_argument(
            "ModeSet: k_max exceeds the grid band that admits conjugate pairs; "
            "use more points per axis or a shorter k_max");

    const int m_hi = grid_.max_mode_index();
    auto consider = [&](std::array<int, 3> n) {
        const Vec3 k{n[0] * dk, n[1] * dk, n[2] * dk};
        const double k_mag = k.norm();
        if (!(k_mag > k0) || k_mag > k_max) return;
        const auto [e1, e2] = polarization_basis(k);
        const DispersionValue w = sdmax::omega(k_mag, params_);
        const double amp = mode_amplitude(k_mag, params_);
        const double norm = 2.0 * w.omega.real() * grid_.volume() / amp;
        for (int s = 1; s <= 2; ++s) {
            modes_.push_back(ModeIndex{n, k, s, s == 1 ? e1 : e2});
            omega_.push_back(w.omega.real());
            amplitude_.push_back(amp);
            norm_.push_back(norm);
        }
    };

    if (grid_.dimensions == 1) {
        for (int nx = -m_hi; nx <= m_hi; ++nx) consider({nx, 0, 0});
    } else {
        for (int nx = -m_hi; nx <= m_hi; ++nx)
            for (int ny = -m_hi; ny <= m_hi; ++ny)
                for (int nz = -m_hi; nz <= m_hi; ++nz) consider({nx, ny, nz});
    }
    if (modes_.empty())
        throw std::invalid_argument(
            "ModeSet: no lattice mode lies in (cutoff, k_max]; enlarge the box or k_max");
}

std::optional<std::size_t> ModeSet::find(const ModeIndex& mode) const {
    for (std::size_t i = 0; i < modes_.size(); ++i)
        if (same_mode(modes_[i], mode)) return i;
    return std::nullopt;
}

std::shared_ptr<const ModeSet> build_mode_set(const GridSpec& grid, double k_max,
                                              const PhysicalParams& params) {
    return std::make_shared<const ModeSet>(grid, params, k_max);
}

}  // namespace sdmax
