#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "strobe/measurement.hpp"
#include "strobe/probe.hpp"

namespace strobe {

/* Multinomial outcome counts for `shots` independent measurements.
 *
 * Reproducibility contract: the generator is std::mt19937_64 (bitstream fixed
 * by the C++ standard), uniforms are (x >> 11) * 2^-53, and each shot draws
 * one uniform mapped through the CDF of `probabilities` — so identical
 * (probabilities, shots, seed) give identical counts on every conforming
 * platform. Throws InvalidDistribution on negative entries, sums away from 1
 * beyond 1e-9, or shots < 1. */
std::vector<long> sample_outcomes(const Eigen::VectorXd& probabilities,
                                  long shots, std::uint64_t seed);

/* Measurement model for likelihood evaluation: outcome distribution
 * p(Phi) = |<u_a|psi(Phi)>|^2 with psi the stroboscopic reduced state of
 * `betas`. The basis may have fewer rows than a complete projective set only
 * if its rows still resolve the identity on the state manifold (e.g. the
 * two-outcome SLD basis at N = 2). */
struct MleModel {
    ProjectorSet basis;
    Eigen::VectorXd betas;
};

// One measured dataset: counts drawn under `model`.
struct MleData {
    std::vector<long> counts;
    MleModel model;
};

struct MleOptions {
    int max_iterations = 6000;     // Nelder-Mead evaluations per restart
    double tolerance = 1e-12;      // stop when the simplex log-likelihood
                                   // spread drops below tol * (1 + |loglik|)
    bool detect_ambiguity = true;  // probe the mirror basin (see below)
};

/* Maximum-likelihood phases from multinomial counts via derivative-free
 * local search (Nelder-Mead with one shrink-restart) started at `init`. The
 * caller keeps the truth inside the identifiability window
 * |beta_j (Phi_j - init_j)| < pi/2; no global unwrapping is attempted.
 *
 * A single phase-tagged basis has an exactly mirror-symmetric likelihood
 * (outcomes depend only on cos of detuning differences), so with
 * detect_ambiguity the reflected basin is probed too and AmbiguousLikelihood
 * is thrown when a distinct maximum matches the best score within 1e-9.
 * Combining datasets with different reference phases (the two-stage
 * experiment) removes the degeneracy. Throws NotConverged at the iteration
 * cap. */
Eigen::VectorXd mle_estimate(const std::vector<MleData>& data,
                             const Eigen::VectorXd& init,
                             MleOptions options = {});

// Single-dataset convenience overload.
Eigen::VectorXd mle_estimate(const std::vector<long>& counts,
                             const MleModel& model, const Eigen::VectorXd& init,
                             MleOptions options = {});

/* Monte Carlo check that the two-stage adaptive measurement saturates the
 * scalar precision bound. Per trial: stage 1 measures mu/2 shots in a basis
 * detuned by 0.1/max|beta| from the truth (large enough that the informative
 * outcomes collect counts at mu >= 1e3 without erasing the finite-mu
 * overhead entirely) and runs a local MLE; stage 2 re-centers the basis on that
 * estimate, offset by the same detuning scaled by 1/golden-ratio so the two
 * reference points can never coincide; the reported estimate maximizes the
 * combined two-dataset likelihood over the reflection orbit of the stage-1
 * estimate. Per-trial seeds are seed + trial (stage seeds 2*(seed+trial)
 * and 2*(seed+trial)+1), so trials are order-independent and parallel-safe. */
struct SaturationReport {
    long mu = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    double stage_split = 0.5;      // fraction of shots spent in stage 1
    double bound_trace = 0.0;      // (1/mu) Tr[Q^-1]
    double empirical_trace = 0.0;  // mean over trials of |Phi_hat - Phi|^2
    double ratio = 0.0;            // empirical_trace / bound_trace
    Eigen::VectorXd mean_bias;     // mean componentwise estimation error
};

SaturationReport saturation_experiment(const NetworkConfig& config,
                                       CaseId case_id, long mu, int trials,
                                       std::uint64_t seed);

} // namespace strobe
