#pragma once

#include "strobe/dynamics.hpp"
#include "strobe/probe.hpp"

namespace strobe {

/* Linear entropy S_L = 1 - Tr[rho_probe^2] between the probe subsystems and
 * the mechanical modes, in the closed form valid for any network size:
 *
 *   S_L = (2/N^2) [ N(N-1)/2
 *                   - sum_{i<j} exp(2 (k_i^2 + k_j^2)(lambda-lambda')^2 (cos tau - 1)) ].
 *
 * Independent of alpha and of the drivings; 0 <= S_L <= 1 - 1/N; vanishes
 * identically at tau = 2*pi*q. This is the production path. */
double linear_entropy_closed(const NetworkConfig& config, double tau);

/* Representation-level purity computation used to validate the closed form:
 * S_L = 1 - sum_{j,j'} |c_j|^2 |c_j'|^2 |prod_m <A[j'][m]|A[j][m]>|^2 from the
 * branch data alone, with the coherent overlaps
 * <y|x> = exp(-|x|^2/2 - |y|^2/2 + conj(y) x) accumulated in log space so
 * large k^2 (lambda-lambda')^2 cannot underflow the product. Works for any
 * BranchState, not only stroboscopic ones. */
double linear_entropy_from_state(const BranchState& state);

} // namespace strobe
