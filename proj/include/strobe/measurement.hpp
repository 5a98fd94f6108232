#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

#include "strobe/estimation.hpp"
#include "strobe/probe.hpp"

namespace strobe {

/* Rank-one projective measurement over the branch basis. Row a of `vectors`
 * holds the components of the a-th measurement ket; rows are orthonormal and
 * complete to 1e-12. reference_phases are the controllable phases
 * vartheta_2..vartheta_N baked into the basis (vartheta_1 == 0 by gauge). */
struct ProjectorSet {
    int dim = 0;
    Eigen::MatrixXcd vectors;
    Eigen::VectorXd reference_phases;
};

/* Optimal multiparameter basis built from the phase-tagged kets
 * f_l = e^{i beta_l vartheta_l} |l>:
 *
 *   row 0:  |Sigma> = (1/sqrt(N)) sum_l f_l
 *   row m:  |u_m>   = ( -sum_{l<=m} f_l + m f_{m+1} ) / sqrt(m(m+1))
 *
 * i.e. the Gram-Schmidt completion of |Sigma> processed from node N down to
 * node 2, which is what the closed form above evaluates to. betas and
 * reference_phases both carry N-1 entries (nodes 2..N).
 * Throws DimensionMismatch. */
ProjectorSet gram_schmidt_basis(int n_nodes, const Eigen::VectorXd& betas,
                                const Eigen::VectorXd& reference_phases);

// p_a = |<u_a|psi>|^2 for each measurement ket; sums to 1 within 1e-12.
// Throws DimensionMismatch if the state dimension differs from the basis.
Eigen::VectorXd outcome_probabilities(const ProjectorSet& basis,
                                      const Eigen::VectorXcd& coefficients);

/* Classical Fisher information matrix of the basis at the true parameters in
 * `phases`: F_ij = sum_x d_i p_x d_j p_x / p_x with central differences in
 * Phi (step = epsilon / max|beta|). Outcomes with p_x = 0 at the evaluation
 * point have vanishing first derivatives by construction (quadratic zeros);
 * their 0/0 contribution is dropped, matching the analytic limit. As the
 * reference phases approach the true phases, F -> QFIM. */
FisherMatrix cfim(const ProjectorSet& basis, const PhaseSet& phases,
                  double epsilon = 1e-5);

// Explicit symmetric logarithmic derivative for parameter Phi_k in the
// branch basis: L_k = (2 i beta_k / sqrt(N)) (e^{i beta_k Phi_k} |k><psi|
//                     - e^{-i beta_k Phi_k} |psi><k|). k is 1-based, 2..N.
Eigen::MatrixXcd sld_matrix(const PhaseSet& phases, int k);

// <psi|[L_k, L_k']|psi> — zero (within rounding) for every pair, which is
// what makes the multiparameter bound attainable. Throws IndexOutOfRange.
std::complex<double> weak_commutativity(const PhaseSet& phases, int k,
                                        int k_prime);

/* The two nonzero-eigenvalue eigenvectors of L_k,
 *   |v_k^+-> = (1/sqrt2) [ (1 -+ i/sqrt(N-1)) |psi>
 *                          +- i sqrt(N/(N-1)) e^{i beta_k Phi_k} |k> ],
 * with eigenvalues +-2 beta_k sqrt(N-1)/N; [0] holds the + branch. */
struct SldEigenbasis {
    std::array<Eigen::VectorXcd, 2> vectors;
    std::array<double, 2> eigenvalues;
};

SldEigenbasis sld_eigenbasis(const PhaseSet& phases, int k);

// Probability of the "+" SLD outcome when the eigenbasis is built at
// reference phase phi_ref but the true phase is phi_true:
// p_+ = 1/2 + (sqrt(N-1)/N) sin(beta_k (phi_true - phi_ref)).
double sld_plus_probability(const PhaseSet& phases, int k, double phi_ref,
                            double phi_true);

// Closed-form single-parameter CFI of the SLD eigenbasis measurement:
//   4 beta_k^2 (N-1) cos^2[beta_k (phi_ref - phi_true)]
//   / (N^2 - 4(N-1) sin^2[beta_k (phi_ref - phi_true)]),
// equal to the single-parameter QFI at phi_ref == phi_true.
double single_param_cfi(const PhaseSet& phases, int k, double phi_ref,
                        double phi_true);

} // namespace strobe
