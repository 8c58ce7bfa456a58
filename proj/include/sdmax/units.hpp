#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sdmax {

// CODATA 2018.
inline constexpr double kSpeedOfLight = 299792458.0;           // m/s
inline constexpr double kHbar = 1.054571817e-34;               // J s
inline constexpr double kFineStructure = 7.2973525693e-3;
// Inverse reduced Compton wavelength of the electron, m^-1.
inline constexpr double kElectronWavenumberSI = 1.0 / 3.8615926796e-13;

enum class UnitSystem { SI, Natural };

/// Physical inputs of the corrected theory. The cutoff wavenumber
///   k0 = sqrt(15*pi/alpha) * (m c / hbar)
/// is derived once at construction; everything downstream reads it from here.
/// In Natural units (c = hbar = k0 = 1) the electron wavenumber is fixed to
/// sqrt(alpha/(15*pi)) so that the cutoff lands on exactly 1.0.
class PhysicalParams {
public:
    PhysicalParams(double alpha, double electron_wavenumber, double c, double hbar,
                   UnitSystem units)
        : alpha_(alpha),
          electron_wavenumber_(electron_wavenumber),
          c_(c),
          hbar_(hbar),
          units_(units) {
        if (!(alpha > 0.0)) throw std::invalid_argument("PhysicalParams: alpha must be > 0");
        if (!(electron_wavenumber > 0.0))
            throw std::invalid_argument("PhysicalParams: electron wavenumber must be > 0");
        if (!(c > 0.0) || !(hbar > 0.0))
            throw std::invalid_argument("PhysicalParams: c and hbar must be > 0");
        cutoff_ = std::sqrt(15.0 * std::numbers::pi / alpha_) * electron_wavenumber_;
        if (units_ == UnitSystem::Natural) {
            if (c != 1.0 || hbar != 1.0)
                throw std::invalid_argument("PhysicalParams: natural units require c = hbar = 1");
            if (std::abs(cutoff_ - 1.0) > 1e-12)
                throw std::invalid_argument(
                    "PhysicalParams: natural units require the electron wavenumber "
                    "sqrt(alpha/(15 pi)) so the cutoff is 1");
            cutoff_ = 1.0;  // snap away the last-ulp sqrt noise
        }
    }

    static PhysicalParams si(double alpha = kFineStructure,
                             double electron_wavenumber = kElectronWavenumberSI) {
        return PhysicalParams(alpha, electron_wavenumber, kSpeedOfLight, kHbar, UnitSystem::SI);
    }

    static PhysicalParams natural(double alpha = kFineStructure) {
        const double m = std::sqrt(alpha / (15.0 * std::numbers::pi));
        return PhysicalParams(alpha, m, 1.0, 1.0, UnitSystem::Natural);
    }

    double alpha() const { return alpha_; }
    double electron_wavenumber() const { return electron_wavenumber_; }
    double c() const { return c_; }
    double hbar() const { return hbar_; }
    UnitSystem units() const { return units_; }

    /// k0: wavenumbers at or below this do not propagate.
    double cutoff_wavenumber() const { return cutoff_; }
    /// x_min = 1/k0, the shortest resolvable wavelength scale of the theory.
    double minimal_length() const { return 1.0 / cutoff_; }

private:
    double alpha_;
    double electron_wavenumber_;
    double c_;
    double hbar_;
    UnitSystem units_;
    double cutoff_;
};

inline std::string to_string(UnitSystem u) { return u == UnitSystem::SI ? "si" : "natural"; }

inline UnitSystem unit_system_from_string(const std::string& s) {
    if (s == "si") return UnitSystem::SI;
    if (s == "natural") return UnitSystem::Natural;
    throw std::invalid_argument("unknown unit system '" + s + "' (expected 'si' or 'natural')");
}

}  // namespace sdmax
