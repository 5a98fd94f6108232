#include "strobe/entanglement.hpp"

#include <cmath>

namespace strobe {

double linear_entropy_closed(const NetworkConfig& config, double tau) {
    validate(config);
    const int n = config.n_nodes;
    const double dl2 = (config.lambda - config.lambda_prime) * (config.lambda - config.lambda_prime);
    const double cos_deficit = std::cos(tau) - 1.0;
    double overlap_sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double ki = config.couplings(i);
            const double kj = config.couplings(j);
            overlap_sum += std::exp(2.0 * (ki * ki + kj * kj) * dl2 * cos_deficit);
        }
    const double pairs = 0.5 * double(n) * double(n - 1);
    return (2.0 / (double(n) * double(n))) * (pairs - overlap_sum);
}

double linear_entropy_from_state(const BranchState& state) {
    const int n = state.n_nodes;
    if (state.coefficients.size() != n || state.amplitudes.rows() != n ||
        state.amplitudes.cols() != n)
        throw DimensionMismatch("BranchState fields disagree with n_nodes");

    // Tr[rho_probe^2] = sum_{j,j'} |c_j|^2 |c_j'|^2 |prod_m <A[j'][m]|A[j][m]>|^2.
    // The product of coherent overlaps is accumulated as a log-modulus so a
    // long chain of tiny overlaps underflows to exp(-inf) = 0, not garbage.
    double purity = 0.0;
    for (int j = 0; j < n; ++j) {
        purity += std::norm(state.coefficients(j)) * std::norm(state.coefficients(j));
        for (int jp = j + 1; jp < n; ++jp) {
            double log_mod2 = 0.0;  // log |prod_m overlap|^2
            for (int m = 0; m < n; ++m) {
                // |<y|x>|^2 = exp(-|x - y|^2) for coherent states
                const std::complex<double> diff =
                    state.amplitudes(j, m) - state.amplitudes(jp, m);
                log_mod2 -= std::norm(diff);
            }
            purity += 2.0 * std::norm(state.coefficients(j)) *
                      std::norm(state.coefficients(jp)) * std::exp(log_mod2);
        }
    }
    return 1.0 - purity;
}

} // namespace strobe
