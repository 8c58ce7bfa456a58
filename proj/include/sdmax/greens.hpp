#pragma once

#include <complex>
#include <vector>

#include "sdmax/field.hpp"
#include "sdmax/units.hpp"

// Retarded-kernel machinery.
//
// The potential responds to the auxiliary field through the retarded kernel
//   K(x,t | x',t') = delta(t - t' - r/c) / (4 pi c^2 r),   r = |x - x'| ,
// via A = -c^2 * (K * xi). Against a single spatial mode e^{ik.x'} evolving
// at its on-shell frequency, the angular integral collapses to sin(kr)/(kr)
// and the whole convolution becomes one oscillatory radial integral:
//
//   transfer(k) = -(1/k) Int_0^inf sin(kr) e^{i omega r / c} dr  =  -1/k0^2
//
// for every propagating k — the kernel inverts the wave operator, and on the
// auxiliary shell the wave operator is the constant k0^2. A second radial
// object shows up in the mode-normalization analysis: the pole-split branch
//
//   J(k) = (2 pi / k)(-i) Int_0^inf [e^{i(omega/c + k) r} + e^{i(omega/c - k) r}] dr
//        = (2 pi / k) [ 1/(omega/c + k) + 1/(omega/c - k) ]  =  -4 pi omega / (c k k0^2) ,
//
// whose magnitude 4 pi omega / (c k k0^2) is what the amplitude prefactor
// N(k) descends from. (Note J is NOT the plain angular reduction
// (4pi/k) Int sin(kr) e^{i omega r/c} dr — that limit is 4 pi / k0^2 for every
// branch. J keeps the two exponential poles separately; both evaluators here
// implement exactly the object their closed form belongs to.)
//
// Numerics: the integrals converge only conditionally, so they are damped by
// e^{-eps r}, integrated by composite Gauss-Legendre with panels short enough
// to resolve the fastest oscillation, and extrapolated eps -> 0 along a
// halving ladder by a Neville tableau. The damped integrand is analytic in
// eps with the nearest pole at eps = i(k - omega/c), so the ladder must start
// well inside that disc — the default spec scales eps0 with the pole gap.

namespace sdmax {

struct RadialQuadratureSpec {
    double regularization_epsilon;  // ladder start; levels use eps0 / 2^j
    double r_max;                   // shared integration cutoff, r_max * eps_finest >= 20
    int min_panels;                 // floor on Gauss-Legendre panel count
    int extrapolation_levels;

    void validate() const;
};

/// Ladder tuned to one wavenumber: eps0 = half the pole gap k - Re(omega)/c
/// (or half the cutoff scale below it), r_max = 20 / eps_finest so the
/// damped tail beyond r_max stays below e^{-20} on every level.
RadialQuadratureSpec default_radial_quadrature(double k, const PhysicalParams& params);

/// Static weight of the retarded kernel, 1/(4 pi c^2 r). Coincident points
/// rejected (the delta's support also needs r > 0).
double greens_kernel_weight(double separation, const PhysicalParams& params);

/// The time the kernel samples its source at: t - r/c.
double retarded_time(double t, double separation, const PhysicalParams& params);

struct RadialIntegralResult {
    std::complex<double> value;        // extrapolated eps -> 0
    double stability;                  // |last Neville step| / |value|
    std::vector<double> epsilons;      // ladder actually used
    std::vector<std::complex<double>> damped;  // damped integral per level
};

/// Pole-split oscillatory integral J(k) (see header notes); closed form and
/// quadrature+extrapolation evaluation. The numeric form throws
/// std::runtime_error with diagnostics when the tableau fails to settle
/// (relative step > 1e-4).
std::complex<double> radial_kernel_integral_closed(double k, const PhysicalParams& params);
RadialIntegralResult radial_kernel_integral(double k, const PhysicalParams& params,
                                            const RadialQuadratureSpec& spec);

/// Convolution transfer factor (see header notes): quadrature evaluation of
/// -(1/k) Int sin(kr) e^{i omega r/c} dr, expected -1/k0^2 for propagating k.
RadialIntegralResult retarded_transfer(double k, const PhysicalParams& params,
                                       const RadialQuadratureSpec& spec);

/// Spectral inversion of the wave operator on the auxiliary shell:
/// a potential configuration with every coefficient scaled by -1/k0^2.
/// Input must be an Auxiliary configuration.
FieldConfiguration solve_potential(const FieldConfiguration& xi);

/// Wave operator applied spectrally to a positive-frequency configuration:
/// per-mode factor k^2 - omega^2/c^2 (== k0^2 on shell, which is the check).
GridField apply_wave_operator(const FieldConfiguration& config);

}  // namespace sdmax
