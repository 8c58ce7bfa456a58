#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sdmax/evolve.hpp"

using namespace sdmax;
using cd = std::complex<double>;

namespace {

const GridSpec kLine(256.0, 2048, 1);  // dk ~ 0.0245 k0, band ~ 25 k0

PacketSpec packet(double kc, double width = 8.0, double x0 = 64.0, double amp = 1.0) {
    PacketSpec s;
    s.center_wavenumber = kc;
    s.width = width;
    s.position = x0;
    s.amplitude = amp;
    return s;
}

std::vector<EvolutionState> trajectory(const PacketSpec& spec, EvolutionModel model,
                                       const PhysicalParams& p, double total_time,
                                       int snapshots) {
    std::vector<EvolutionState> out;
    out.push_back(init_packet(spec, kLine, p, model));
    const double dt = total_time / (snapshots - 1);
    for (int i = 1; i < snapshots; ++i) out.push_back(step(out.back(), dt, p));
    return out;
}

}  // namespace

TEST_CASE("packet initialization: norm and band structure") {
    const PhysicalParams p = PhysicalParams::natural();
    const EvolutionState s = init_packet(packet(2.0), kLine, p, EvolutionModel::Corrected);
    CHECK(s.time() == 0.0);

    // Sub-cutoff lattice slots carry exactly nothing under the corrected law.
    const double dk = kLine.dk();
    for (int slot = 0; slot < kLine.points_per_axis; ++slot) {
        const double k = std::abs(kLine.unwrap(slot)) * dk;
        if (k <= 1.0) CHECK(s.amplitudes()[slot] == cd(0.0, 0.0));
    }

    // L2 norm of the analytic signal: A^2 sigma sqrt(pi) for a unit-peak
    // Gaussian envelope (box images and clipped tails are ~1e-28 here).
    const std::vector<cd> psi = analytic_signal(s);
    double l2 = 0.0;
    for (const cd& v : psi) l2 += std::norm(v);
    l2 *= kLine.dx();
    CHECK(l2 == doctest::Approx(8.0 * std::sqrt(std::numbers::pi)).epsilon(1e-10));

    // The same low-k spec is fine under the baseline law but rejected by the
    // corrected one (its band would be clipped at the cutoff).
    const PacketSpec low = packet(0.3, 20.0, 128.0);
    const EvolutionState maxwell = init_packet(low, kLine, p, EvolutionModel::StandardMaxwell);
    bool populated_below_cutoff = false;
    for (int slot = 0; slot < kLine.points_per_axis; ++slot) {
        const double k = std::abs(kLine.unwrap(slot)) * dk;
        if (k < 1.0 && maxwell.amplitudes()[slot] != cd(0.0, 0.0))
            populated_below_cutoff = true;
    }
    CHECK(populated_below_cutoff);
    CHECK_THROWS_AS(init_packet(low, kLine, p, EvolutionModel::Corrected),
                    std::invalid_argument);
}

TEST_CASE("packet validation") {
    const PhysicalParams p = PhysicalParams::natural();
    const auto model = EvolutionModel::Corrected;
    CHECK_THROWS_AS(init_packet(packet(2.0, 8.0, 64.0, 0.0), kLine, p, model),
                    std::invalid_argument);
    CHECK_THROWS_AS(init_packet(packet(2.0, 0.0), kLine, p, model), std::invalid_argument);
    CHECK_THROWS_AS(init_packet(packet(2.0, 8.0, 256.0), kLine, p, model),
                    std::invalid_argument);
    CHECK_THROWS_AS(init_packet(packet(2.0, 8.0, -1.0), kLine, p, model),
                    std::invalid_argument);
    CHECK_THROWS_AS(init_packet(packet(0.0), kLine, p, model), std::invalid_argument);
    CHECK_THROWS_AS(init_packet(packet(30.0), kLine, p, model), std::invalid_argument);
    CHECK_THROWS_AS(init_packet(packet(2.0, 40.0), kLine, p, model), std::invalid_argument);
    // Too close to the cutoff: k_c - 3 sigma_k dips below k0.
    CHECK_THROWS_AS(init_packet(packet(1.1), kLine, p, model), std::invalid_argument);

    CHECK_THROWS_AS(EvolutionState(GridSpec(10.0, 8, 3), model, 0.0,
                                   std::vector<cd>(512)),
                    std::invalid_argument);
    CHECK_THROWS_AS(EvolutionState(kLine, model, 0.0, std::vector<cd>(7)),
                    std::invalid_argument);
}

TEST_CASE("stepping is an exact unitary phase flow") {
    const PhysicalParams p = PhysicalParams::natural();
    const EvolutionState s0 = init_packet(packet(2.0), kLine, p, EvolutionModel::Corrected);

    // dt = 0 is the identity.
    const EvolutionState same = step(s0, 0.0, p);
    for (std::size_t i = 0; i < same.amplitudes().size(); ++i)
        CHECK(same.amplitudes()[i] == s0.amplitudes()[i]);

    // Semigroup property and exact reversibility.
    const EvolutionState two_hops = step(step(s0, 3.5, p), 2.5, p);
    const EvolutionState one_hop = step(s0, 6.0, p);
    CHECK(two_hops.time() == doctest::Approx(6.0));
    for (std::size_t i = 0; i < one_hop.amplitudes().size(); ++i)
        CHECK(std::abs(two_hops.amplitudes()[i] - one_hop.amplitudes()[i]) <= 1e-14);

    const EvolutionState back = step(step(s0, 7.0, p), -7.0, p);
    for (std::size_t i = 0; i < back.amplitudes().size(); ++i)
        CHECK(std::abs(back.amplitudes()[i] - s0.amplitudes()[i]) <= 1e-14);
}

TEST_CASE("single-mode phase fidelity") {
    const PhysicalParams p = PhysicalParams::natural();
    std::vector<cd> amps(kLine.num_points(), cd(0.0, 0.0));
    const int m = 100;  // k = m dk ~ 2.45 k0
    amps[kLine.wrap(m)] = cd(1.0, 0.0);
    const EvolutionState s0(kLine, EvolutionModel::Corrected, 0.0, amps);

    const double k = m * kLine.dk();
    const double w = std::sqrt(k * k - 1.0);
    const double dt = 1.7;
    const EvolutionState s1 = step(s0, dt, p);
    CHECK(std::abs(s1.amplitudes()[kLine.wrap(m)] - std::polar(1.0, -w * dt)) <= 1e-10);
}

TEST_CASE("spectral energy is conserved over many steps") {
    const PhysicalParams p = PhysicalParams::natural();
    EvolutionState s = init_packet(packet(2.0), kLine, p, EvolutionModel::Corrected);
    const double e0 = spectral_energy(s, p);
    CHECK(e0 > 0.0);
    for (int i = 0; i < 400; ++i) s = step(s, 0.2, p);
    CHECK(spectral_energy(s, p) == doctest::Approx(e0).epsilon(1e-12));
}

TEST_CASE("position field is real and twice the analytic signal's real part") {
    const PhysicalParams p = PhysicalParams::natural();
    EvolutionState s = init_packet(packet(2.0), kLine, p, EvolutionModel::Corrected);
    s = step(s, 4.2, p);
    const RealProfile u = position_field(s);
    const std::vector<cd> psi = analytic_signal(s);
    double peak = 0.0;
    for (const double v : u.values) peak = std::max(peak, std::abs(v));
    CHECK(u.max_imag_residue <= 1e-12 * peak);
    for (std::size_t i = 0; i < u.values.size(); ++i)
        CHECK(std::abs(u.values[i] - 2.0 * psi[i].real()) <= 1e-12 * peak);
}

TEST_CASE("centroid starts on the packet and refuses the seam") {
    const PhysicalParams p = PhysicalParams::natural();
    const EvolutionState s = init_packet(packet(2.0), kLine, p, EvolutionModel::Corrected);
    CHECK(std::abs(centroid(s, p) - 64.0) <= 1e-7);

    const EvolutionState seam =
        init_packet(packet(2.0, 8.0, 1.0), kLine, p, EvolutionModel::Corrected);
    CHECK_THROWS_AS(centroid(seam, p), std::runtime_error);
}

TEST_CASE("measured transport speed matches d omega / d k") {
    const PhysicalParams p = PhysicalParams::natural();

    const auto traj2 = trajectory(packet(2.0), EvolutionModel::Corrected, p, 80.0, 9);
    const double v2 = measure_group_velocity(traj2, p);
    CHECK(v2 / 1.1547005383792515 == doctest::Approx(1.0).epsilon(0.01));
    CHECK(v2 > 1.0);  // superluminal centroid transport, the corrected signature

    const auto traj4 = trajectory(packet(4.0), EvolutionModel::Corrected, p, 80.0, 9);
    const double v4 = measure_group_velocity(traj4, p);
    CHECK(v4 / 1.0327955589886445 == doctest::Approx(1.0).epsilon(0.01));
    CHECK(v4 < v2);  // excess over c decays away from the cutoff

    const auto trajm = trajectory(packet(2.0), EvolutionModel::StandardMaxwell, p, 80.0, 9);
    CHECK(measure_group_velocity(trajm, p) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("group velocity measurement input contract") {
    const PhysicalParams p = PhysicalParams::natural();
    auto traj = trajectory(packet(2.0), EvolutionModel::Corrected, p, 30.0, 5);
    const std::vector<EvolutionState> four(traj.begin(), traj.begin() + 4);
    CHECK_THROWS_AS(measure_group_velocity(four, p), std::invalid_argument);

    auto mixed = traj;
    mixed[2] = init_packet(packet(2.0), kLine, p, EvolutionModel::StandardMaxwell);
    CHECK_THROWS_AS(measure_group_velocity(mixed, p), std::invalid_argument);

    std::vector<EvolutionState> frozen(5, traj[0]);
    CHECK_THROWS_AS(measure_group_velocity(frozen, p), std::invalid_argument);
}

TEST_CASE("sourced potential is the scaled source trajectory") {
    const PhysicalParams p = PhysicalParams::natural();
    const auto xi = trajectory(packet(2.0), EvolutionModel::Corrected, p, 40.0, 5);
    const auto a = sourced_potential(xi, p);
    REQUIRE(a.size() == xi.size());
    for (std::size_t s = 0; s < a.size(); ++s) {
        CHECK(a[s].time() == xi[s].time());
        for (std::size_t i = 0; i < a[s].amplitudes().size(); ++i)
            CHECK(std::abs(a[s].amplitudes()[i] + xi[s].amplitudes()[i]) <= 1e-15);
    }
    // Same spectrum shape, same centroid flow: the potential inherits the
    // source's transport speed exactly.
    CHECK(measure_group_velocity(a, p) ==
          doctest::Approx(measure_group_velocity(xi, p)).epsilon(1e-12));

    const auto maxwell = trajectory(packet(2.0), EvolutionModel::StandardMaxwell, p, 40.0, 5);
    CHECK_THROWS_AS(sourced_potential(maxwell, p), std::domain_error);
}
