#pragma once

#include <complex>

#include <Eigen/Core>

#include "strobe/probe.hpp"

namespace strobe {

/* Exact closed-form network state at dimensionless time tau. The state is a
 * sum of N product branches
 *
 *   |psi(tau)> = sum_j c_j |j> (x) prod_m |A[j][m]>,
 *
 * so N complex coefficients plus an N x N matrix of coherent amplitudes
 * describe it exactly at any tau and any alpha. coefficients(j-1) = c_j,
 * amplitudes(j-1, m-1) = amplitude of mechanical mode m on branch j.
 */
struct BranchState {
    int n_nodes = 0;
    Eigen::VectorXcd coefficients;
    Eigen::MatrixXcd amplitudes;
    double tau = 0.0;
};

// |W_N> (x) |alpha>^N: every branch coefficient 1/sqrt(N) (no relative
// phases), every coherent amplitude alpha. Throws ConfigInvalid.
BranchState build_initial_state(const NetworkConfig& config);

/* Relative branch phase xi_j(tau) (gauge fixed at node 1: xi_1 == 0),
 * evaluated through the displacement-composition chain
 *
 *   xi_j = i (lambda - lambda') [ C_j (tau - sin tau)
 *                                 - (k_1 - k_j) Im(conj(alpha) (e^{i tau}-1)) ],
 *   C_j  = 2 E_1 k_1 - 2 E_j k_j - (k_1^2 - k_j^2)(lambda + lambda'),
 *
 * which is purely imaginary for every (real or complex) alpha — the branch
 * coefficients keep modulus 1/sqrt(N), as unitarity demands. j is the 1-based
 * node label, j >= 2. Throws IndexOutOfRange.
 */
std::complex<double> xi_phase(const NetworkConfig& config, int j, double tau);

// Coherent amplitude of mode m on branch j at time tau:
//   alpha e^{-i tau} + (k_m Xi - E_m)(1 - e^{-i tau}),  Xi = lambda if m == j
// else lambda_prime. Both indices are 1-based node labels.
// Throws IndexOutOfRange.
std::complex<double> coherent_amplitude(const NetworkConfig& config, int branch,
                                        int mode, double tau);

// Full closed-form evolution: c_1 = 1/sqrt(N), c_j = e^{xi_j(tau)}/sqrt(N),
// amplitudes per coherent_amplitude. evolve(config, 0) == build_initial_state.
BranchState evolve(const NetworkConfig& config, double tau);

/* State at the stroboscopic time tau = 2*pi, where every mechanical mode has
 * returned to |alpha> and the branch phases collapse to e^{i beta_j Phi_j}.
 * Construction cross-checks e^{i beta_j Phi_j} against e^{xi_j(2 pi)} to
 * 1e-12 — a mismatch would mean the Table-1 reduction and the dynamical phase
 * have diverged, which is an internal bug, not an input error. */
struct StroboscopicState {
    PhaseSet phases;
    BranchState state;
};

StroboscopicState stroboscopic_state(const NetworkConfig& config, CaseId case_id);

} // namespace strobe
