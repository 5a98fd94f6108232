#include "strobe/estimation.hpp"

#include <cmath>
#include <string>

namespace strobe {

namespace {

void check_betas(const PhaseSet& phases) {
    if (phases.betas.size() < 1)
        throw DimensionMismatch("PhaseSet carries no parameters");
    for (Eigen::Index j = 0; j < phases.betas.size(); ++j)
        if (phases.betas(j) == 0.0)
            throw SingularBeta("beta_" + std::to_string(j + 2) +
                               " = 0 makes the QFIM singular");
}

int check_param_index(const PhaseSet& phases, int j) {
    const int n = phases.n_nodes();
    if (j < 2 || j > n)
        throw IndexOutOfRange("node index " + std::to_string(j) + " outside [2, " +
                              std::to_string(n) + "]");
    return j - 2;  // position inside betas/phis
}

} // namespace

Eigen::VectorXcd phase_encoded_state(const Eigen::VectorXd& betas,
                                     const Eigen::VectorXd& phis) {
    if (betas.size() != phis.size())
        throw DimensionMismatch("betas and phis must have equal length");
    const int n = static_cast<int>(betas.size()) + 1;
    Eigen::VectorXcd psi(n);
    const double norm = 1.0 / std::sqrt(double(n));
    psi(0) = norm;
    for (int j = 1; j < n; ++j)
        psi(j) = norm * std::polar(1.0, betas(j - 1) * phis(j - 1));
    return psi;
}

FisherMatrix qfim_analytic(const PhaseSet& phases) {
    check_betas(phases);
    const int d = static_cast<int>(phases.betas.size());
    const double n = double(d) + 1.0;
    const Eigen::VectorXd& b = phases.betas;
    FisherMatrix q;
    q.kind = FisherKind::Quantum;
    q.entries = (4.0 / n) * b.cwiseProduct(b).asDiagonal().toDenseMatrix() -
                (4.0 / (n * n)) * (b * b.transpose());
    return q;
}

FisherMatrix qfim_inverse(const PhaseSet& phases) {
    check_betas(phases);
    const int d = static_cast<int>(phases.betas.size());
    const double n = double(d) + 1.0;
    const Eigen::VectorXd inv_b = phases.betas.cwiseInverse();
    FisherMatrix q;
    q.kind = FisherKind::Quantum;
    // Sherman-Morrison applied to diag + rank-one collapses to this closed form.
    q.entries = (n / 4.0) * (inv_b.cwiseProduct(inv_b).asDiagonal().toDenseMatrix() +
                             inv_b * inv_b.transpose());
    return q;
}

double trace_inverse_qfim(const PhaseSet& phases) {
    check_betas(phases);
    const double n = double(phases.betas.size()) + 1.0;
    return 0.5 * n * phases.betas.cwiseAbs2().cwiseInverse().sum();
}

FisherMatrix qfim_from_family(
    const std::function<Eigen::VectorXcd(const Eigen::VectorXd&)>& family,
    const Eigen::VectorXd& phi, double step) {
    const int d = static_cast<int>(phi.size());
    const Eigen::VectorXcd psi = family(phi);

    std::vector<Eigen::VectorXcd> dpsi(d);
    for (int i = 0; i < d; ++i) {
        Eigen::VectorXd up = phi, down = phi;
        up(i) += step;
        down(i) -= step;
        dpsi[i] = (family(up) - family(down)) / (2.0 * step);
    }

    FisherMatrix q;
    q.kind = FisherKind::Quantum;
    q.entries.resize(d, d);
    for (int i = 0; i < d; ++i) {
        const std::complex<double> gauge_i = psi.dot(dpsi[i]);  // <psi|d_i psi>
        for (int j = i; j < d; ++j) {
            const std::complex<double> overlap = dpsi[i].dot(dpsi[j]);  // <d_i psi|d_j psi>
            const std::complex<double> gauge_j = psi.dot(dpsi[j]);
            const double entry = 4.0 * std::real(overlap - std::conj(gauge_i) * gauge_j);
            q.entries(i, j) = entry;
            q.entries(j, i) = entry;
        }
    }
    return q;
}

FisherMatrix qfim_numeric(const NetworkConfig& config, CaseId case_id,
                          NumericOptions options) {
    if (options.epsilon < 1e-9)
        throw StepTooSmall("finite-difference epsilon " + std::to_string(options.epsilon) +
                           " below 1e-9 invites catastrophic cancellation");
    const PhaseSet phases = case_phases(config, case_id);
    check_betas(phases);
    const Eigen::VectorXd betas = phases.betas;
    const double step = options.epsilon / betas.cwiseAbs().maxCoeff();

    auto family = [&betas](const Eigen::VectorXd& phi) {
        return phase_encoded_state(betas, phi);
    };
    FisherMatrix q = qfim_from_family(family, phases.phis, step);
    if (options.richardson) {
        const FisherMatrix fine = qfim_from_family(family, phases.phis, 0.5 * step);
        q.entries = (4.0 * fine.entries - q.entries) / 3.0;
    }
    return q;
}

double single_param_qfi(const PhaseSet& phases, int j) {
    check_betas(phases);
    const int idx = check_param_index(phases, j);
    const double n = double(phases.n_nodes());
    const double beta = phases.betas(idx);
    return 4.0 * beta * beta * (n - 1.0) / (n * n);
}

double nuisance_variance_bound(const PhaseSet& phases, int j, long mu) {
    check_betas(phases);
    const int idx = check_param_index(phases, j);
    if (mu < 1)
        throw InvalidResourceCount("measurement count mu must be >= 1, got " + std::to_string(mu));
    const double n = double(phases.n_nodes());
    const double beta = phases.betas(idx);
    return n / (2.0 * beta * beta * double(mu));
}

} // namespace strobe
