#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "strobe/probe.hpp"

namespace strobe {

// CODATA reduced Planck constant, J*s. All SI output quotes this value.
inline constexpr double kHbar = 1.054571817e-34;

/* A physical device family: mechanical frequency Omega (interpreted as
 * angular, rad/s — the sources write "Hz" without disambiguation, and the
 * interpretation is stamped into every CSV), mechanical mass M in kg, and
 * the dimensionless single-excitation coupling k. */
struct PlatformPreset {
    std::string name;
    double omega = 0.0;     // rad/s
    double mass = 0.0;      // kg
    double coupling = 0.0;  // dimensionless
};

// Registry: "fabry-perot", "levitated", "cold-atoms", "spin-mechanical".
const std::vector<PlatformPreset>& platform_presets();

// Lookup by name; throws ConfigInvalid for unknown names.
PlatformPreset find_platform(const std::string& name);

// Zero-point fluctuation amplitude x_0 = sqrt(hbar / (2 M Omega)) in meters.
// Throws NonPositiveInput.
double zero_point(double mass, double omega);

struct SiBound {
    double variance_bound = 0.0;  // Tr[Cov] lower bound, SI units squared
    double delta_rms = 0.0;       // sqrt(variance_bound)
};

/* Case 1 gravimetry floor in m^2/s^4 (W state of N_exc photons,
 * lambda = N_exc, lambda' = 0):
 *
 *   sum_j Var[g_j^-] >= (1/mu) N(N-1)/(32 pi^2 k^2 N_exc^2) (Omega hbar/(x_0 M))^2.
 *
 * Throws InvalidResourceCount (n_nodes < 2, n_exc < 1, mu < 1),
 * NonPositiveInput for the device numbers. */
SiBound case1_gravimetry_bound(const PlatformPreset& preset, int n_nodes,
                               int n_exc, long mu);

/* Case 2 coupling floor in Hz^2 (collective spin of N_exc >= 2 spin-1/2,
 * lambda = N_exc/2, lambda' = 0), in the evenly-distributed-couplings
 * approximation k_j^+ ~ 2k:
 *
 *   sum_j Var[k~_j^-] >= (1/mu) Omega^2 N(N-1) / (2 pi^2 k^2 N_exc^4).
 *
 * n_exc = 1 is rejected: the spin-1/2 identification forces
 * lambda' = -lambda and a singular QFIM. */
SiBound case2_coupling_bound(double omega, double coupling_scale, int n_nodes,
                             int n_exc, long mu);

// Exact pre-approximation Case 2 form, (1/mu)(2 Omega^2 N / (pi^2 N_exc^4))
// * sum_j (k_j^+)^-2, for configs that supply the individual couplings.
SiBound case2_coupling_bound_exact(double omega, const Eigen::VectorXd& k_plus,
                                   int n_exc, long mu);

// Smallest integer N_exc >= 1 with N(N-1)/N_exc^r <= 1, r = 2 for Case1
// (N_exc ~ N) and r = 4 for Case2 (N_exc ~ sqrt(N)).
int resource_tradeoff(CaseId case_id, int n_nodes);

} // namespace strobe
