#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>

#include "sdmax/modes.hpp"
#include "sdmax/units.hpp"

// Truncated single-mode Fock space. The truncation is the whole story of the
// error model here: in an N-dimensional number basis the commutator
// [b, b+] is the identity except for the (N-1, N-1) entry, which reads 1 - N.
// Every check either avoids that corner (bulk assertions) or pins its exact
// value. States carry an edge-leakage figure so callers can tell when the
// truncation has started to bite.

namespace sdmax {

struct OperatorMatrix {
    Eigen::MatrixXcd entries;
    std::string label;

    int dim() const { return static_cast<int>(entries.rows()); }
};

struct StateVector {
    Eigen::VectorXcd amplitudes;
    /// |amplitude of the highest number state|^2 — truncation warning light.
    double edge_leakage() const;
    void normalize();
};

/// Annihilation/creation pair on an N-dimensional number basis:
/// b|n> = sqrt(n)|n-1>, b+|n> = sqrt(n+1)|n+1> (top row/column truncated).
std::pair<OperatorMatrix, OperatorMatrix> truncated_ladder(int dim);

enum class QuadratureScale {
    Dimensionless,  // X = (b + b+)/sqrt(2), P = i(b+ - b)/sqrt(2)
    Dimensional,    // X scaled by sqrt(hbar / (2 omega)), P by sqrt(hbar omega / 2)
};

/// Quadrature pair for one propagating mode. The dimensional scaling uses the
/// corrected frequency omega(k), so short-wavelength modes get *stiffer*
/// position quadratures than the uncorrected theory would give them.
std::pair<OperatorMatrix, OperatorMatrix> quadratures(const ModeIndex& mode, int dim,
                                                      const PhysicalParams& params,
                                                      QuadratureScale scale);

/// Coherent state by its closed-form number amplitudes c_n ~ alpha^n/sqrt(n!),
/// normalized on the truncated space. Throws if the edge leakage exceeds
/// `leakage_tolerance` — the truncation cannot hold this state.
StateVector coherent_state(std::complex<double> alpha, int dim,
                           double leakage_tolerance = 1e-8);

/// exp(alpha b+ - conj(alpha) b) |0>, built with the matrix exponential; up
/// to truncation error this must reproduce coherent_state.
StateVector displaced_vacuum(std::complex<double> alpha, int dim);

/// exp( (conj(z) b^2 - z b+^2) / 2 ) |0> with z = r e^{i phi}. For phi = 0
/// the dimensionless variances are Var X = e^{-2r}/2, Var P = e^{+2r}/2.
StateVector squeezed_vacuum(double r, double phi, int dim, double leakage_tolerance = 1e-6);

std::complex<double> expectation(const OperatorMatrix& op, const StateVector& state);
double variance(const OperatorMatrix& op, const StateVector& state);

/// Dense scaling-and-squaring exponential (Pade order 13). For 1-norm up to
/// theta_13 = 5.371920351148152 a single Pade evaluation is used; above it
/// the argument is halved ceil(log2(norm/theta)) times and the result squared
/// back. Deterministic: no norm estimation, just the exact 1-norm.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a);

}  // namespace sdmax
