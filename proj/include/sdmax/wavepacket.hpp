#pragma once

#include <Eigen/Dense>
#include <memory>

#include "sdmax/field.hpp"
#include "sdmax/modes.hpp"

namespace sdmax {

/// Klein-Gordon-orthonormal wavepackets over a mode set.
///
/// Seeds: one Gaussian window per mode, w_{jm} = exp(-|k_m - k_j|^2 / (2 s^2))
/// for matching polarizations (s = window_width, in inverse-length units).
/// A non-positive width degenerates to the identity window: the packets are
/// then exactly the normalized modes. Rows of `coefficients` express each
/// packet over the KG-normalized modes g_m / sqrt(C_m), orthonormalized by
/// modified Gram-Schmidt in mode order, so coefficients * coefficients^H = I
/// and the packets are KG-orthonormal by construction.
struct WavepacketBasis {
    std::shared_ptr<const ModeSet> modes;
    Eigen::MatrixXcd coefficients;
    double window_width;
    double seed_gram_condition;
};

/// Throws std::runtime_error when the seed windows are numerically linearly
/// dependent (Gram condition above 1e12) — a window much wider than the
/// covered band produces near-identical seeds and no stable basis.
WavepacketBasis build_wavepacket_basis(std::shared_ptr<const ModeSet> modes, double window_width);

/// Packet j realized on the lattice (positive-frequency, with dt), for
/// quadrature cross-checks of the Gram matrix.
GridField synthesize_packet(const WavepacketBasis& basis, std::size_t j, double t);

}  // namespace sdmax
