#include "sdmax/wavepacket.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sdmax {

WavepacketBasis build_wavepacket_basis(std::shared_ptr<const ModeSet> modes,
                                       double window_width) {
    if (!modes) throw std::invalid_argument("build_wavepacket_basis: null mode set");
    const auto& set = *modes;
    const Eigen::Index m = static_cast<Eigen::Index>(set.size());

    Eigen::MatrixXcd seeds(m, m);
    if (window_width <= 0.0) {
        seeds.setIdentity();
    } else {
        const double inv2s2 = 1.0 / (2.0 * window_width * window_width);
        for (Eigen::Index j = 0; j < m; ++j) {
            const ModeIndex& mj = set.mode(static_cast<std::size_t>(j));
            for (Eigen::Index i = 0; i < m; ++i) {
                const ModeIndex& mi = set.mode(static_cast<std::size_t>(i));
                if (mi.polarization != mj.polarization) {
                    seeds(j, i) = 0.0;
                    continue;
                }
                const Vec3 dkv = mi.k - mj.k;
                seeds(j, i) = std::exp(-dkv.norm2() * inv2s2);
            }
        }
    }

    // Seed Gram condition == (sigma_max / sigma_min)^2 of the seed matrix,
    // because the underlying modes are KG-orthonormal after the 1/sqrt(C)
    // rescaling built into the coefficient convention.
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(seeds);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(m - 1);
    const double cond = smin > 0.0 ? (smax / smin) * (smax / smin)
                                   : std::numeric_limits<double>::infinity();
    if (!(cond < 1e12))
        throw std::runtime_error(
            "build_wavepacket_basis: seed windows are numerically linearly dependent "
            "(Gram condition " +
            std::to_string(cond) + "); narrow the window");

    // Modified Gram-Schmidt over rows, deterministic mode order.
    Eigen::MatrixXcd u = seeds;
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index i = 0; i < j; ++i) {
            const cplx proj = u.row(i).dot(u.row(j));  // conj(u_i) . u_j
            u.row(j) -= proj * u.row(i);
        }
        const double norm = u.row(j).norm();
        if (!(norm > 1e-14))
            throw std::runtime_error("build_wavepacket_basis: orthogonalization collapsed");
        u.row(j) /= norm;
    }

    return WavepacketBasis{std::move(modes), std::move(u), window_width, cond};
}

GridField synthesize_packet(const WavepacketBasis& basis, std::size_t j, double t) {
    const ModeSet& set = *basis.modes;
    if (j >= set.size()) throw std::invalid_argument("synthesize_packet: packet index out of range");

    std::vector<CVec3> weights(set.size());
    for (std::size_t m = 0; m < set.size(); ++m) {
        // Normalized-mode scatter weight: g_m / sqrt(C_m) carries
        // N^{-1/2} C^{-1/2} e^{-i omega t} on epsilon.
        const cplx w = basis.coefficients(static_cast<Eigen::Index>(j),
                                          static_cast<Eigen::Index>(m)) *
                       std::polar(1.0, -set.omega(m) * t) /
                       std::sqrt(set.amplitude(m) * set.norm_constant(m));
        const Vec3 eps = set.mode(m).epsilon;
        weights[m] = CVec3{w * eps.x, w * eps.y, w * eps.z};
    }
    const auto values = synthesize_from_weights(set, weights, false);

    GridField out{set.grid(), t, {}, {}};
    out.value = values;
    std::vector<CVec3> dweights(set.size());
    for (std::size_t m = 0; m < set.size(); ++m) {
        const cplx dw = cplx{0.0, -set.omega(m)};
        dweights[m] = CVec3{dw * weights[m].x, dw * weights[m].y, dw * weights[m].z};
    }
    out.dt = synthesize_from_weights(set, dweights, false);
    return out;
}

}  // namespace sdmax
