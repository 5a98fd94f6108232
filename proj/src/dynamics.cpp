#include "strobe/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace strobe {

namespace {

using cxd = std::complex<double>;

void check_node_index(const NetworkConfig& config, int index, int lowest,
                      const char* what) {
    if (index < lowest || index > config.n_nodes)
        throw IndexOutOfRange(std::string(what) + " index " + std::to_string(index) +
                              " outside [" + std::to_string(lowest) + ", " +
                              std::to_string(config.n_nodes) + "]");
}

} // namespace

BranchState build_initial_state(const NetworkConfig& config) {
    validate(config);
    const int n = config.n_nodes;
    BranchState state;
    state.n_nodes = n;
    state.tau = 0.0;
    state.coefficients = Eigen::VectorXcd::Constant(n, cxd(1.0 / std::sqrt(double(n)), 0.0));
    state.amplitudes = Eigen::MatrixXcd::Constant(n, n, config.alpha);
    return state;
}

cxd xi_phase(const NetworkConfig& config, int j, double tau) {
    validate(config);
    check_node_index(config, j, 2, "node");
    const double k1 = config.couplings(0);
    const double kj = config.couplings(j - 1);
    const double e1 = config.drivings(0);
    const double ej = config.drivings(j - 1);
    const double dl = config.lambda - config.lambda_prime;
    const double sl = config.lambda + config.lambda_prime;

    // Relative dynamical phase between branch j and branch 1, accumulated by
    // the displacement-operator composition over all N modes (only modes 1
    // and j contribute to the difference).
    const double c_j = 2.0 * e1 * k1 - 2.0 * ej * kj - (k1 * k1 - kj * kj) * sl;
    const cxd spiral = std::polar(1.0, tau) - 1.0;  // e^{i tau} - 1
    const double drive_term = c_j * (tau - std::sin(tau));
    const double alpha_term = (k1 - kj) * std::imag(std::conj(config.alpha) * spiral);
    return cxd(0.0, dl * (drive_term - alpha_term));
}

cxd coherent_amplitude(const NetworkConfig& config, int branch, int mode, double tau) {
    validate(config);
    check_node_index(config, branch, 1, "branch");
    check_node_index(config, mode, 1, "mode");
    const double xi_eig = (mode == branch) ? config.lambda : config.lambda_prime;
    const double w = config.couplings(mode - 1) * xi_eig - config.drivings(mode - 1);
    const cxd rot = std::polar(1.0, -tau);  // e^{-i tau}
    return config.alpha * rot + w * (1.0 - rot);
}

BranchState evolve(const NetworkConfig& config, double tau) {
    validate(config);
    const int n = config.n_nodes;
    BranchState state;
    state.n_nodes = n;
    state.tau = tau;
    state.coefficients.resize(n);
    state.amplitudes.resize(n, n);
    const double norm = 1.0 / std::sqrt(double(n));
    state.coefficients(0) = cxd(norm, 0.0);
    for (int j = 2; j <= n; ++j)
        state.coefficients(j - 1) = norm * std::exp(xi_phase(config, j, tau));
    for (int j = 1; j <= n; ++j)
        for (int m = 1; m <= n; ++m)
            state.amplitudes(j - 1, m - 1) = coherent_amplitude(config, j, m, tau);
    return state;
}

StroboscopicState stroboscopic_state(const NetworkConfig& config, CaseId case_id) {
    StroboscopicState result;
    result.phases = case_phases(config, case_id);
    const int n = config.n_nodes;
    const double two_pi = 2.0 * std::numbers::pi;

    BranchState& state = result.state;
    state.n_nodes = n;
    state.tau = two_pi;
    state.coefficients.resize(n);
    state.amplitudes = Eigen::MatrixXcd::Constant(n, n, config.alpha);  // eta(2 pi) = 0 exactly
    const double norm = 1.0 / std::sqrt(double(n));
    state.coefficients(0) = cxd(norm, 0.0);
    for (int j = 2; j <= n; ++j) {
        const cxd table_phase =
            std::polar(1.0, result.phases.betas(j - 2) * result.phases.phis(j - 2));
        state.coefficients(j - 1) = norm * table_phase;
        // The Table-1 reduction must agree with the dynamical phase; anything
        // else is an internal inconsistency, not bad input.
        const cxd dynamical_phase = std::exp(xi_phase(config, j, two_pi));
        if (std::abs(table_phase - dynamical_phase) > 1e-12)
            throw std::logic_error(
                "stroboscopic phase reduction diverged from xi_j(2 pi) at node " +
                std::to_string(j));
    }
    return result;
}

} // namespace strobe
