#pragma once

#include <complex>

#include "sdmax/units.hpp"

namespace sdmax {

/// omega(k) for one wavenumber magnitude. Above the cutoff the frequency is
/// real and the mode propagates; at or below it omega is purely imaginary
/// (evanescent), principal branch Im(omega) > 0, and is_propagating is false.
struct DispersionValue {
    std::complex<double> omega;
    bool is_propagating;
};

/// Corrected dispersion omega = c * sqrt(k^2 - k0^2). Throws on k < 0.
DispersionValue omega(double k, const PhysicalParams& params);

/// Uncorrected light cone omega = c*k, used as the comparison baseline.
double standard_omega(double k, const PhysicalParams& params);

/// d(omega)/dk = c^2 k / omega for propagating modes. Exceeds c for every
/// k > k0 and tends to c from above as k -> infinity; the apparent
/// superluminality is a flagged open question of the model, not a bug.
/// Throws std::domain_error at or below the cutoff.
double group_velocity(double k, const PhysicalParams& params);

/// omega/k for propagating modes; group * phase velocity = c^2 on shell.
double phase_velocity(double k, const PhysicalParams& params);

}  // namespace sdmax
