#pragma once

#include <complex>
#include <string>

#include <Eigen/Core>

#include "strobe/errors.hpp"

namespace strobe {

/* Full specification of an N-node sensor network in dimensionless units
 * (couplings k_j = k~_j/Omega, drivings E_j = E~_j/Omega, time tau = Omega*t).
 * lambda / lambda_prime are the two eigenvalues the probe operator at a node
 * takes on the excited ("its own" branch) and unexcited branches. alpha is the
 * initial coherent amplitude shared by all mechanical modes.
 */
struct NetworkConfig {
    int n_nodes = 0;
    double lambda = 0.0;
    double lambda_prime = 0.0;
    Eigen::VectorXd couplings;  // k_j, one per node
    Eigen::VectorXd drivings;   // E_j, one per node
    std::complex<double> alpha{0.0, 0.0};
};

// Throws ConfigInvalid unless n_nodes >= 2, list lengths match n_nodes,
// and lambda != lambda_prime (equal eigenvalues make every beta_j vanish).
void validate(const NetworkConfig& config);

/* The two stroboscopic sensing scenarios:
 *   Case1 — equal couplings k, node-dependent drivings; the unknowns are
 *           driving differences Phi_j = E_1 - E_j and beta_j = 4*pi*k*(lambda-lambda').
 *   Case2 — undriven nodes, node-dependent couplings; the unknowns are
 *           coupling differences Phi_j = k_1 - k_j and
 *           beta_j = 2*pi*(k_1+k_j)*(lambda'-lambda)*(lambda+lambda').
 */
enum class CaseId { Case1 = 1, Case2 = 2 };

/* Estimation-theoretic reduction of a stroboscopic state: the N-1 phase
 * prefactors beta_j and relative parameters Phi_j (j = 2..N, node 1 is the
 * reference). k_plus holds k_1 + k_j for Case2 (empty otherwise); it feeds the
 * exact nuisance-parameter form of the coupling bound. */
struct PhaseSet {
    CaseId case_id = CaseId::Case1;
    Eigen::VectorXd betas;   // size N-1, all nonzero
    Eigen::VectorXd phis;    // size N-1
    Eigen::VectorXd k_plus;  // size N-1 for Case2, otherwise empty

    int n_nodes() const { return static_cast<int>(betas.size()) + 1; }
};

// Validating constructor for hand-built PhaseSets (property tests, samplers).
// Throws SingularBeta if any beta_j == 0, CaseConditionViolated if a Case1 set
// has unequal betas, DimensionMismatch on size problems.
PhaseSet make_phase_set(CaseId case_id, const Eigen::VectorXd& betas,
                        const Eigen::VectorXd& phis);

// Reduces a config to its PhaseSet. Preconditions: Case1 needs all couplings
// equal (unequal couplings are rejected, never averaged); Case2 needs all
// drivings zero. Throws CaseConditionViolated when they fail and SingularBeta
// when the reduction yields beta_j = 0 (e.g. lambda + lambda' = 0 in Case2).
PhaseSet case_phases(const NetworkConfig& config, CaseId case_id);

/* Reads a NetworkConfig from a flat key-value text file:
 *
 *   # comment
 *   n_nodes = 3
 *   lambda = 1.0
 *   lambda_prime = 0.0
 *   couplings = [1.0, 1.0, 1.0]
 *   drivings = [0.5, 0.2, 0.1]
 *   alpha_re = 1.0        # optional, default 0
 *   alpha_im = 0.0        # optional, default 0
 *
 * Unknown keys, malformed lines, or missing required keys throw ConfigInvalid.
 */
NetworkConfig load_network_config(const std::string& path);
NetworkConfig parse_network_config(const std::string& text,
                                   const std::string& origin = "<string>");

} // namespace strobe
