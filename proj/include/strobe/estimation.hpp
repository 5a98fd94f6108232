#pragma once

#include <functional>

#include <Eigen/Core>

#include "strobe/probe.hpp"

namespace strobe {

enum class FisherKind { Quantum, Classical };

/* (N-1) x (N-1) real symmetric positive-semidefinite Fisher information
 * matrix over the relative parameters Phi_2..Phi_N, tagged with its
 * provenance (quantum vs classical). */
struct FisherMatrix {
    Eigen::MatrixXd entries;
    FisherKind kind = FisherKind::Quantum;

    int dim() const { return static_cast<int>(entries.rows()); }
};

// The stroboscopic reduced state as an N-vector over the branch basis:
// (1, e^{i beta_2 Phi_2}, ..., e^{i beta_N Phi_N}) / sqrt(N). Shared by the
// numeric QFIM, the measurement probabilities, and the sampler likelihood.
Eigen::VectorXcd phase_encoded_state(const Eigen::VectorXd& betas,
                                     const Eigen::VectorXd& phis);

// Closed-form QFIM: Q = (4/N) diag(beta^2) - (4/N^2) beta beta^T.
// Independent of the Phi values. Throws SingularBeta if any beta_j == 0.
FisherMatrix qfim_analytic(const PhaseSet& phases);

// Sherman-Morrison closed-form inverse:
// [Q^-1]_{ij} = (N/4)(delta_ij / beta_i^2 + 1/(beta_i beta_j)).
FisherMatrix qfim_inverse(const PhaseSet& phases);

// Scalar precision bound Tr[Q^-1] = (N/2) sum_j beta_j^-2.
double trace_inverse_qfim(const PhaseSet& phases);

/* Pure-state QFIM assembled from an arbitrary state family by central finite
 * differences: Q_ij = 4 Re(<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>).
 * The second term makes the result gauge invariant, so families that differ
 * by a Phi-dependent global phase give identical matrices. `step` is the
 * actual finite-difference step applied to each parameter. */
FisherMatrix qfim_from_family(
    const std::function<Eigen::VectorXcd(const Eigen::VectorXd&)>& family,
    const Eigen::VectorXd& phi, double step);

struct NumericOptions {
    double epsilon = 1e-5;     // scaled internally by 1/max|beta_j|
    bool richardson = false;   // one extra halved-step extrapolation pass
};

// Finite-difference QFIM of the stroboscopic state. The step is epsilon
// divided by max|beta_j| so that steep phases (cold atoms: beta ~ 1e6) stay
// well conditioned. Throws StepTooSmall for epsilon < 1e-9 (catastrophic
// cancellation guard), plus the case_phases errors.
FisherMatrix qfim_numeric(const NetworkConfig& config, CaseId case_id,
                          NumericOptions options = {});

// Single-parameter QFI when every other Phi is known:
// [Q]_jj = 4 beta_j^2 (N-1)/N^2. j is the 1-based node label, 2..N.
double single_param_qfi(const PhaseSet& phases, int j);

// Variance floor for Phi_j when the other Phi act as nuisance parameters:
// (1/mu) * N/(2 beta_j^2) — degraded by 2(N-1)/N relative to the known-
// nuisance case. Throws on mu < 1.
double nuisance_variance_bound(const PhaseSet& phases, int j, long mu);

} // namespace strobe
