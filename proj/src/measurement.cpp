#include "strobe/measurement.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace strobe {

namespace {

using std::complex;

constexpr complex<double> kI{0.0, 1.0};

// Outcome weights below this floor sit at quadratic zeros of the likelihood:
// a smooth non-negative p touching zero has vanishing gradient there, so the
// (dp)^2/p contribution is a genuine 0/0 that resolves to zero.
constexpr double kProbabilityFloor = 1e-12;

int check_node_for_sld(const PhaseSet& phases, int k) {
    const int n = phases.n_nodes();
    if (k < 2 || k > n)
        throw IndexOutOfRange("node index " + std::to_string(k) + " outside [2, " +
                              std::to_string(n) + "]");
    return k - 2;
}

} // namespace

ProjectorSet gram_schmidt_basis(int n_nodes, const Eigen::VectorXd& betas,
                                const Eigen::VectorXd& reference_phases) {
    if (n_nodes < 2)
        throw ConfigInvalid("measurement basis needs at least 2 nodes, got " +
                            std::to_string(n_nodes));
    if (betas.size() != n_nodes - 1 || reference_phases.size() != n_nodes - 1)
        throw DimensionMismatch("betas and reference_phases must both have length n_nodes - 1");

    // Reference kets f_l = e^{i beta_l theta_l} |l>, with theta_1 = 0 fixed by
    // the global phase convention (only relative phases are observable).
    Eigen::VectorXcd f(n_nodes);
    f(0) = 1.0;
    for (int l = 1; l < n_nodes; ++l)
        f(l) = std::polar(1.0, betas(l - 1) * reference_phases(l - 1));

    ProjectorSet basis;
    basis.dim = n_nodes;
    basis.reference_phases = reference_phases;
    basis.vectors = Eigen::MatrixXcd::Zero(n_nodes, n_nodes);

    // Row 0: the uniform superposition of the reference kets.
    const double inv_sqrt_n = 1.0 / std::sqrt(double(n_nodes));
    for (int l = 0; l < n_nodes; ++l)
        basis.vectors(0, l) = inv_sqrt_n * f(l);

    // Rows 1..N-1: orthonormalizing {f_N, ..., f_2} against row 0 in that
    // (descending) order telescopes into Helmert-style contrasts,
    //   u_m = (-(f_1 + ... + f_m) + m f_{m+1}) / sqrt(m (m+1)).
    for (int m = 1; m < n_nodes; ++m) {
        const double scale = 1.0 / std::sqrt(double(m) * double(m + 1));
        for (int l = 0; l < m; ++l)
            basis.vectors(m, l) = -scale * f(l);
        basis.vectors(m, m) = scale * double(m) * f(m);
    }
    return basis;
}

Eigen::VectorXd outcome_probabilities(const ProjectorSet& basis,
                                      const Eigen::VectorXcd& coefficients) {
    if (coefficients.size() != basis.dim)
        throw DimensionMismatch("state dimension " + std::to_string(coefficients.size()) +
                                " does not match basis dimension " + std::to_string(basis.dim));
    const Eigen::Index outcomes = basis.vectors.rows();
    Eigen::VectorXd p(outcomes);
    for (Eigen::Index a = 0; a < outcomes; ++a)
        p(a) = std::norm(basis.vectors.row(a).dot(coefficients));
    return p;
}

FisherMatrix cfim(const ProjectorSet& basis, const PhaseSet& phases, double epsilon) {
    if (basis.dim != phases.n_nodes())
        throw DimensionMismatch("basis dimension " + std::to_string(basis.dim) +
                                " does not match network size " +
                                std::to_string(phases.n_nodes()));
    if (epsilon < 1e-9)
        throw StepTooSmall("finite-difference epsilon " + std::to_string(epsilon) +
                           " below 1e-9 invites catastrophic cancellation");

    const int d = static_cast<int>(phases.betas.size());
    const double step = epsilon / phases.betas.cwiseAbs().maxCoeff();

    auto probabilities_at = [&](const Eigen::VectorXd& phi) {
        return outcome_probabilities(basis, phase_encoded_state(phases.betas, phi));
    };

    const Eigen::VectorXd p0 = probabilities_at(phases.phis);
    const Eigen::Index outcomes = basis.vectors.rows();
    Eigen::MatrixXd dp(outcomes, d);
    for (int i = 0; i < d; ++i) {
        Eigen::VectorXd up = phases.phis, down = phases.phis;
        up(i) += step;
        down(i) -= step;
        dp.col(i) = (probabilities_at(up) - probabilities_at(down)) / (2.0 * step);
    }

    FisherMatrix f;
    f.kind = FisherKind::Classical;
    f.entries = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index a = 0; a < outcomes; ++a) {
        if (p0(a) < kProbabilityFloor)
            continue;
        f.entries += (dp.row(a).transpose() * dp.row(a)) / p0(a);
    }
    return f;
}

Eigen::MatrixXcd sld_matrix(const PhaseSet& phases, int k) {
    const int idx = check_node_for_sld(phases, k);
    const int n = phases.n_nodes();
    const double beta = phases.betas(idx);
    const complex<double> phase = std::polar(1.0, beta * phases.phis(idx));

    const Eigen::VectorXcd psi = phase_encoded_state(phases.betas, phases.phis);
    Eigen::VectorXcd ket_k = Eigen::VectorXcd::Zero(n);
    ket_k(k - 1) = 1.0;

    const complex<double> prefactor = 2.0 * kI * beta / std::sqrt(double(n));
    return prefactor * (phase * ket_k * psi.adjoint() -
                        std::conj(phase) * psi * ket_k.adjoint());
}

std::complex<double> weak_commutativity(const PhaseSet& phases, int k, int k_prime) {
    const Eigen::MatrixXcd lk = sld_matrix(phases, k);
    const Eigen::MatrixXcd lk_prime = sld_matrix(phases, k_prime);
    const Eigen::VectorXcd psi = phase_encoded_state(phases.betas, phases.phis);
    const Eigen::MatrixXcd commutator = lk * lk_prime - lk_prime * lk;
    return psi.dot(commutator * psi);
}

SldEigenbasis sld_eigenbasis(const PhaseSet& phases, int k) {
    const int idx = check_node_for_sld(phases, k);
    const int n = phases.n_nodes();
    const double beta = phases.betas(idx);
    const double root = std::sqrt(double(n) - 1.0);
    const complex<double> phase = std::polar(1.0, beta * phases.phis(idx));

    const Eigen::VectorXcd psi = phase_encoded_state(phases.betas, phases.phis);
    Eigen::VectorXcd ket_k = Eigen::VectorXcd::Zero(n);
    ket_k(k - 1) = 1.0;

    SldEigenbasis basis;
    basis.eigenvalues[0] = 2.0 * beta * root / double(n);
    basis.eigenvalues[1] = -basis.eigenvalues[0];
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const complex<double> tilt = kI / root;
    const complex<double> stretch = kI * std::sqrt(double(n) / (double(n) - 1.0)) * phase;
    basis.vectors[0] = inv_sqrt2 * ((1.0 - tilt) * psi + stretch * ket_k);
    basis.vectors[1] = inv_sqrt2 * ((1.0 + tilt) * psi - stretch * ket_k);
    return basis;
}

double sld_plus_probability(const PhaseSet& phases, int k, double phi_ref,
                            double phi_true) {
    const int idx = check_node_for_sld(phases, k);
    const double n = double(phases.n_nodes());
    const double delta = phases.betas(idx) * (phi_true - phi_ref);
    return 0.5 + std::sqrt(n - 1.0) / n * std::sin(delta);
}

double single_param_cfi(const PhaseSet& phases, int k, double phi_ref,
                        double phi_true) {
    const int idx = check_node_for_sld(phases, k);
    const double n = double(phases.n_nodes());
    const double beta = phases.betas(idx);
    const double delta = beta * (phi_true - phi_ref);
    const double cos_d = std::cos(delta);
    const double sin_d = std::sin(delta);
    const double numerator = 4.0 * beta * beta * (n - 1.0) * cos_d * cos_d;
    const double denominator = n * n - 4.0 * (n - 1.0) * sin_d * sin_d;
    return numerator / denominator;
}

} // namespace strobe
