#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Core>

#include "strobe/dynamics.hpp"
#include "strobe/probe.hpp"

namespace strobe {

/* Brute-force numeric state over (branch space) (x) (Fock space truncated at
 * D levels per mode): a dense vector of length N * D^N indexed as
 * branch-major, then mode 1 slowest to mode N fastest:
 *
 *   index = ((branch * D + n_1) * D + n_2) * D ... + n_N.
 *
 * tail_mass is the largest probability any single mode puts in its top two
 * Fock levels — the observable truncation-adequacy figure. */
struct FockState {
    int n_nodes = 0;
    int fock_dim = 0;
    Eigen::VectorXcd vector;
    double tail_mass = 0.0;
};

// Cap on N * D^N enforced by every oracle entry point (complex entries of the
// state vector). The dense matrix builder uses the stricter matrix cap since
// it needs dim^2 storage.
inline constexpr std::int64_t kMaxStateEntries = 2'000'000;
inline constexpr std::int64_t kMaxDenseDim = 4'096;

// Truncated coherent state |alpha> as a D-vector, n-th entry
// e^{-|alpha|^2/2} alpha^n / sqrt(n!), computed with log-factorials so large
// n cannot overflow. Not renormalized: the missing tail is the truncation.
Eigen::VectorXcd coherent_vector(std::complex<double> alpha, int fock_dim);

// Dense Hermitian matrix of sum_j H_j/(Omega hbar) in the branch (x) Fock
// basis: block-diagonal over branches; on branch b the mode-m term is
// n_m - (k_m Xi - E_m)(b_m^dag + b_m) with Xi = lambda iff m == b.
// Throws DimensionTooLarge beyond the caps, ConfigInvalid, and requires
// fock_dim >= 4.
Eigen::MatrixXcd hamiltonian_matrix(const NetworkConfig& config, int fock_dim);

/* exp(-i H tau)|W_N, alpha..alpha> in the truncated space. H is block
 * diagonal over branches and, within a branch, a sum of commuting single-mode
 * terms; the product-basis truncation preserves both structures exactly, so
 * the propagator factorizes into per-mode D x D eigendecompositions. The
 * result is identical (up to rounding) to dense eigendecomposition of the
 * full truncated H — a property the tests pin at small dimensions — while
 * staying tractable at N = 3, D = 30. Throws TruncationInsufficient when
 * tail_mass >= 1e-8. */
FockState evolve_numeric(const NetworkConfig& config, int fock_dim, double tau);

// Literal dense-eigendecomposition propagator (full truncated H). Exists to
// cross-validate the factorized path; practical only at small N * D^N.
FockState evolve_via_dense(const NetworkConfig& config, int fock_dim, double tau);

// |<psi_numeric|psi_branch>|^2 with the branch state expanded in the same
// truncated basis. Throws DimensionMismatch on shape disagreement.
double fidelity(const FockState& numeric, const BranchState& analytic);

// Tr[rho_probe^2] after tracing out every mechanical mode (Gram matrix of
// the N branch slices). 1 - purity_numeric validates the closed-form linear
// entropy.
double purity_numeric(const FockState& state);

// min over modes of <alpha| rho_m |alpha> — the mechanical return figure,
// 1 at stroboscopic times up to truncation error.
double mode_return_overlap(const FockState& state, std::complex<double> alpha);

// <H> in the truncated space via the per-mode operator structure (no dense
// matrix); constant along tau for a faithful propagator.
double energy_expectation(const FockState& state, const NetworkConfig& config);

} // namespace strobe
