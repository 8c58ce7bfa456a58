#include "sdmax/dispersion.hpp"

#include <cmath>
#include <stdexcept>

namespace sdmax {

DispersionValue omega(double k, const PhysicalParams& params) {
    if (!(k >= 0.0)) throw std::invalid_argument("omega: wavenumber must be >= 0");
    const double k0 = params.cutoff_wavenumber();
    const double gap = (k - k0) * (k + k0);  // k^2 - k0^2 without cancellation at k ~ k0
    if (gap > 0.0) {
        return {std::complex<double>(params.c() * std::sqrt(gap), 0.0), true};
    }
    return {std::complex<double>(0.0, params.c() * std::sqrt(-gap)), false};
}

double standard_omega(double k, const PhysicalParams& params) {
    if (!(k >= 0.0)) throw std::invalid_argument("standard_omega: wavenumber must be >= 0");
    return params.c() * k;
}

double group_velocity(double k, const PhysicalParams& params) {
    const DispersionValue w = omega(k, params);
    if (!w.is_propagating)
        throw std::domain_error("group_velocity: undefined at or below the cutoff wavenumber");
    return params.c() * params.c() * k / w.omega.real();
}

double phase_velocity(double k, const PhysicalParams& params) {
    const DispersionValue w = omega(k, params);
    if (!w.is_propagating)
        throw std::domain_error("phase_velocity: undefined at or below the cutoff wavenumber");
    return w.omega.real() / k;
}

}  // namespace sdmax
