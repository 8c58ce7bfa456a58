#include "sdmax/fock.hpp"

#include <cmath>
#include <stdexcept>

#include "sdmax/dispersion.hpp"

namespace sdmax {

using cd = std::complex<double>;

double StateVector::edge_leakage() const {
    const Eigen::Index n = amplitudes.size();
    return n == 0 ? 0.0 : std::norm(amplitudes(n - 1));
}

void StateVector::normalize() {
    const double n = amplitudes.norm();
    if (!(n > 0.0)) throw std::runtime_error("StateVector: cannot normalize the zero vector");
    amplitudes /= n;
}

std::pair<OperatorMatrix, OperatorMatrix> truncated_ladder(int dim) {
    if (dim < 2) throw std::invalid_argument("truncated_ladder: dimension must be >= 2");
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    Eigen::MatrixXcd bdag = b.adjoint();
    return {OperatorMatrix{std::move(b), "annihilation"},
            OperatorMatrix{std::move(bdag), "creation"}};
}

std::pair<OperatorMatrix, OperatorMatrix> quadratures(const ModeIndex& mode, int dim,
                                                      const PhysicalParams& params,
                                                      QuadratureScale scale) {
    const double k = mode.k.norm();
    const DispersionValue w = omega(k, params);
    if (!w.is_propagating)
        throw std::domain_error("quadratures: mode at or below the cutoff does not oscillate");
    auto [b, bdag] = truncated_ladder(dim);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd x = inv_sqrt2 * (b.entries + bdag.entries);
    Eigen::MatrixXcd p = cd{0.0, 1.0} * inv_sqrt2 * (bdag.entries - b.entries);
    if (scale == QuadratureScale::Dimensional) {
        const double om = w.omega.real();
        x *= std::sqrt(params.hbar() / (2.0 * om)) * std::sqrt(2.0);
        p *= std::sqrt(params.hbar() * om / 2.0) * std::sqrt(2.0);
    }
    return {OperatorMatrix{std::move(x), "position quadrature"},
            OperatorMatrix{std::move(p), "momentum quadrature"}};
}

StateVector coherent_state(cd alpha, int dim, double leakage_tolerance) {
    if (dim < 2) throw std::invalid_argument("coherent_state: dimension must be >= 2");
    Eigen::VectorXcd amps(dim);
    cd term = 1.0;  // alpha^n / sqrt(n!) built incrementally
    amps(0) = term;
    for (int n = 1; n < dim; ++n) {
        term *= alpha / std::sqrt(static_cast<double>(n));
        amps(n) = term;
    }
    StateVector state{std::move(amps)};
    state.normalize();
    if (state.edge_leakage() > leakage_tolerance)
        throw std::runtime_error(
            "coherent_state: truncation too small for |alpha| (edge leakage " +
            std::to_string(state.edge_leakage()) + ")");
    return state;
}

StateVector displaced_vacuum(cd alpha, int dim) {
    if (dim < 2) throw std::invalid_argument("displaced_vacuum: dimension must be >= 2");
    auto [b, bdag] = truncated_ladder(dim);
    const Eigen::MatrixXcd gen = alpha * bdag.entries - std::conj(alpha) * b.entries;
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(dim);
    vac(0) = 1.0;
    StateVector state{matrix_exponential(gen) * vac};
    state.normalize();  // unitary up to truncation; renormalize the leak away
    return state;
}

StateVector squeezed_vacuum(double r, double phi, int dim, double leakage_tolerance) {
    if (dim < 2) throw std::invalid_argument("squeezed_vacuum: dimension must be >= 2");
    if (!(r >= 0.0)) throw std::invalid_argument("squeezed_vacuum: r must be >= 0");
    auto [b, bdag] = truncated_ladder(dim);
    const cd z = std::polar(r, phi);
    const Eigen::MatrixXcd gen =
        0.5 * (std::conj(z) * (b.entries * b.entries) - z * (bdag.entries * bdag.entries));
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(dim);
    vac(0) = 1.0;
    StateVector state{matrix_exponential(gen) * vac};
    state.normalize();
    // Squeezed tails decay slowly (~tanh(r)^n over even n); surface the
    // truncation rather than silently reporting wrong variances.
    const Eigen::Index top = state.amplitudes.size() - 1;
    const double tail =
        std::norm(state.amplitudes(top)) + (top > 0 ? std::norm(state.amplitudes(top - 1)) : 0.0);
    if (tail > leakage_tolerance)
        throw std::runtime_error("squeezed_vacuum: truncation too small for r (tail weight " +
                                 std::to_string(tail) + ")");
    return state;
}

cd expectation(const OperatorMatrix& op, const StateVector& state) {
    if (op.entries.rows() != state.amplitudes.size())
        throw std::invalid_argument("expectation: operator and state dimensions differ");
    return state.amplitudes.dot(op.entries * state.amplitudes);
}

double variance(const OperatorMatrix& op, const StateVector& state) {
    const cd mean = expectation(op, state);
    const Eigen::VectorXcd shifted =
        op.entries * state.amplitudes - mean * state.amplitudes;
    return shifted.squaredNorm();
}

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exponential: square input only");
    const Eigen::Index n = a.rows();
    if (n == 0) return a;

    static constexpr double kTheta13 = 5.371920351148152;
    static constexpr double kB[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0,
    };

    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > kTheta13)
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    const Eigen::MatrixXcd as = a / std::pow(2.0, squarings);

    const Eigen::MatrixXcd ident = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd a2 = as * as;
    const Eigen::MatrixXcd a4 = a2 * a2;
    const Eigen::MatrixXcd a6 = a4 * a2;

    const Eigen::MatrixXcd u =
        as * (a6 * (kB[13] * a6 + kB[11] * a4 + kB[9] * a2) + kB[7] * a6 + kB[5] * a4 +
              kB[3] * a2 + kB[1] * ident);
    const Eigen::MatrixXcd v = a6 * (kB[12] * a6 + kB[10] * a4 + kB[8] * a2) + kB[6] * a6 +
                               kB[4] * a4 + kB[2] * a2 + kB[0] * ident;

    Eigen::MatrixXcd r = (v - u).partialPivLu().solve(v + u);
    for (int s = 0; s < squarings; ++s) r = r * r;
    return r;
}

}  // namespace sdmax
