#include "strobe/oracle.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace strobe {

namespace {

using std::complex;

std::int64_t checked_entries(int n_nodes, int fock_dim, std::int64_t cap) {
    std::int64_t total = n_nodes;
    for (int m = 0; m < n_nodes; ++m) {
        total *= fock_dim;
        if (total > cap)
            throw DimensionTooLarge("state of " + std::to_string(n_nodes) + " nodes at " +
                                    std::to_string(fock_dim) +
                                    " Fock levels exceeds the cap of " + std::to_string(cap) +
                                    " entries");
    }
    return total;
}

void check_fock_dim(int fock_dim) {
    if (fock_dim < 4)
        throw ConfigInvalid("fock_dim must be at least 4, got " + std::to_string(fock_dim));
}

// Displacement strength seen by mode m on branch b (1-based):
// W = k_m Xi - E_m with Xi = lambda exactly when the branch points at m.
double mode_coupling(const NetworkConfig& config, int branch, int mode) {
    const double xi = (branch == mode) ? config.lambda : config.lambda_prime;
    return config.couplings(mode - 1) * xi - config.drivings(mode - 1);
}

// Single-mode block n_hat - w (b^dag + b) in the D-level Fock basis: real
// symmetric tridiagonal.
Eigen::MatrixXd mode_hamiltonian(double w, int fock_dim) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(fock_dim, fock_dim);
    for (int n = 0; n < fock_dim; ++n)
        h(n, n) = double(n);
    for (int n = 1; n < fock_dim; ++n) {
        const double hop = -w * std::sqrt(double(n));
        h(n - 1, n) = hop;
        h(n, n - 1) = hop;
    }
    return h;
}

struct ModePropagator {
    Eigen::MatrixXd eigenvectors;
    Eigen::VectorXd eigenvalues;
};

// Eigendecompositions keyed by the displacement strength w: a network has at
// most 2N distinct values (lambda / lambda_prime per mode), so caching turns
// N^2 decompositions into 2N.
const ModePropagator& decomposed_mode(std::map<double, ModePropagator>& cache, double w,
                                      int fock_dim) {
    auto it = cache.find(w);
    if (it == cache.end()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mode_hamiltonian(w, fock_dim));
        it = cache.emplace(w, ModePropagator{solver.eigenvectors(), solver.eigenvalues()}).first;
    }
    return it->second;
}

Eigen::VectorXcd propagate_mode(const ModePropagator& prop, const Eigen::VectorXcd& in,
                                double tau) {
    Eigen::VectorXcd rotated = prop.eigenvectors.transpose() * in;
    for (Eigen::Index n = 0; n < rotated.size(); ++n)
        rotated(n) *= std::polar(1.0, -prop.eigenvalues(n) * tau);
    return prop.eigenvectors * rotated;
}

Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Eigen::VectorXcd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

// Marginal probability that mode m occupies its top two Fock levels,
// maximized over modes — the observable truncation-adequacy figure.
double max_mode_tail(const Eigen::VectorXcd& vector, int n_nodes, int fock_dim) {
    const double norm2 = vector.squaredNorm();
    if (norm2 == 0.0)
        return 0.0;
    std::int64_t stride = 1;  // mode N varies fastest
    double worst = 0.0;
    for (int mode = n_nodes; mode >= 1; --mode) {
        const std::int64_t block = stride * fock_dim;
        double tail = 0.0;
        for (std::int64_t outer = 0; outer < vector.size(); outer += block)
            for (int n = fock_dim - 2; n < fock_dim; ++n)
                tail += vector.segment(outer + n * stride, stride).squaredNorm();
        worst = std::max(worst, tail / norm2);
        stride = block;
    }
    return worst;
}

Eigen::VectorXcd assemble_initial(const NetworkConfig& config, int fock_dim,
                                  std::int64_t total) {
    const int n = config.n_nodes;
    const Eigen::VectorXcd alpha_vec = coherent_vector(config.alpha, fock_dim);
    Eigen::VectorXcd modes = alpha_vec;
    for (int m = 2; m <= n; ++m)
        modes = kron(modes, alpha_vec);

    const std::int64_t slice = total / n;
    Eigen::VectorXcd psi(total);
    const double weight = 1.0 / std::sqrt(double(n));
    for (int b = 0; b < n; ++b)
        psi.segment(std::int64_t(b) * slice, slice) = weight * modes;
    return psi;
}

FockState finalize_state(Eigen::VectorXcd vector, const NetworkConfig& config,
                         int fock_dim) {
    FockState state;
    state.n_nodes = config.n_nodes;
    state.fock_dim = fock_dim;
    state.tail_mass = max_mode_tail(vector, config.n_nodes, fock_dim);
    state.vector = std::move(vector);
    if (state.tail_mass >= 1e-8)
        throw TruncationInsufficient("top Fock levels carry probability " +
                                     std::to_string(state.tail_mass) +
                                     "; raise fock_dim above " + std::to_string(fock_dim));
    return state;
}

} // namespace

Eigen::VectorXcd coherent_vector(complex<double> alpha, int fock_dim) {
    check_fock_dim(fock_dim);
    Eigen::VectorXcd vec = Eigen::VectorXcd::Zero(fock_dim);
    const double mod = std::abs(alpha);
    if (mod == 0.0) {
        vec(0) = 1.0;
        return vec;
    }
    const double arg = std::arg(alpha);
    const double log_mod = std::log(mod);
    for (int n = 0; n < fock_dim; ++n) {
        const double log_amp = -0.5 * mod * mod + n * log_mod - 0.5 * std::lgamma(n + 1.0);
        vec(n) = std::polar(std::exp(log_amp), n * arg);
    }
    return vec;
}

Eigen::MatrixXcd hamiltonian_matrix(const NetworkConfig& config, int fock_dim) {
    validate(config);
    check_fock_dim(fock_dim);
    const std::int64_t total = checked_entries(config.n_nodes, fock_dim, kMaxDenseDim);

    const int n = config.n_nodes;
    const std::int64_t slice = total / n;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(total, total);

    for (int b = 1; b <= n; ++b) {
        Eigen::MatrixXd block = Eigen::MatrixXd::Zero(slice, slice);
        std::int64_t stride = 1;
        for (int mode = n; mode >= 1; --mode) {
            const Eigen::MatrixXd hm = mode_hamiltonian(mode_coupling(config, b, mode), fock_dim);
            const std::int64_t repeat = slice / (stride * fock_dim);
            // Embed hm acting on `mode` as I (x) hm (x) I with the current stride.
            for (std::int64_t rep = 0; rep < repeat; ++rep)
                for (int i = 0; i < fock_dim; ++i)
                    for (int j = 0; j < fock_dim; ++j) {
                        if (hm(i, j) == 0.0)
                            continue;
                        const std::int64_t base = rep * stride * fock_dim;
                        for (std::int64_t s = 0; s < stride; ++s)
                            block(base + i * stride + s, base + j * stride + s) += hm(i, j);
                    }
            stride *= fock_dim;
        }
        h.block((b - 1) * slice, (b - 1) * slice, slice, slice) = block;
    }
    return h;
}

FockState evolve_numeric(const NetworkConfig& config, int fock_dim, double tau) {
    validate(config);
    check_fock_dim(fock_dim);
    const std::int64_t total = checked_entries(config.n_nodes, fock_dim, kMaxStateEntries);

    const int n = config.n_nodes;
    const Eigen::VectorXcd alpha_vec = coherent_vector(config.alpha, fock_dim);
    std::map<double, ModePropagator> cache;

    const std::int64_t slice = total / n;
    Eigen::VectorXcd psi(total);
    const double weight = 1.0 / std::sqrt(double(n));
    for (int b = 1; b <= n; ++b) {
        // H restricted to branch b is a sum of commuting single-mode terms, so
        // the branch propagator is an exact tensor product of D x D propagators.
        Eigen::VectorXcd acc = Eigen::VectorXcd::Constant(1, weight);
        for (int mode = 1; mode <= n; ++mode) {
            const ModePropagator& prop =
                decomposed_mode(cache, mode_coupling(config, b, mode), fock_dim);
            acc = kron(acc, propagate_mode(prop, alpha_vec, tau));
        }
        psi.segment(std::int64_t(b - 1) * slice, slice) = acc;
    }
    return finalize_state(std::move(psi), config, fock_dim);
}

FockState evolve_via_dense(const NetworkConfig& config, int fock_dim, double tau) {
    validate(config);
    check_fock_dim(fock_dim);
    const std::int64_t total = checked_entries(config.n_nodes, fock_dim, kMaxDenseDim);

    const Eigen::MatrixXcd h = hamiltonian_matrix(config, fock_dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);

    Eigen::VectorXcd rotated = solver.eigenvectors().adjoint() *
                               assemble_initial(config, fock_dim, total);
    for (Eigen::Index i = 0; i < rotated.size(); ++i)
        rotated(i) *= std::polar(1.0, -solver.eigenvalues()(i) * tau);
    return finalize_state(solver.eigenvectors() * rotated, config, fock_dim);
}

double fidelity(const FockState& numeric, const BranchState& analytic) {
    if (numeric.n_nodes != analytic.n_nodes)
        throw DimensionMismatch("numeric state has " + std::to_string(numeric.n_nodes) +
                                " nodes, analytic state " + std::to_string(analytic.n_nodes));
    const int n = numeric.n_nodes;
    const int d = numeric.fock_dim;
    const std::int64_t slice = numeric.vector.size() / n;

    complex<double> overlap = 0.0;
    for (int b = 1; b <= n; ++b) {
        Eigen::VectorXcd branch = Eigen::VectorXcd::Constant(1, analytic.coefficients(b - 1));
        for (int mode = 1; mode <= n; ++mode)
            branch = kron(branch, coherent_vector(analytic.amplitudes(b - 1, mode - 1), d));
        overlap += numeric.vector.segment(std::int64_t(b - 1) * slice, slice).dot(branch);
    }
    return std::norm(overlap);
}

double purity_numeric(const FockState& state) {
    const int n = state.n_nodes;
    const std::int64_t slice = state.vector.size() / n;
    const double norm2 = state.vector.squaredNorm();

    double purity = 0.0;
    for (int b = 0; b < n; ++b) {
        purity += std::norm(state.vector.segment(b * slice, slice).squaredNorm());
        for (int c = b + 1; c < n; ++c)
            purity += 2.0 * std::norm(state.vector.segment(c * slice, slice)
                                          .dot(state.vector.segment(b * slice, slice)));
    }
    return purity / (norm2 * norm2);
}

double mode_return_overlap(const FockState& state, complex<double> alpha) {
    const int n = state.n_nodes;
    const int d = state.fock_dim;
    const Eigen::VectorXcd alpha_vec = coherent_vector(alpha, d);
    const double norm2 = state.vector.squaredNorm();

    double worst = 1.0;
    std::int64_t stride = 1;  // mode N varies fastest
    for (int mode = n; mode >= 1; --mode) {
        const std::int64_t block = stride * d;
        double overlap = 0.0;
        for (std::int64_t outer = 0; outer < state.vector.size(); outer += block)
            for (std::int64_t s = 0; s < stride; ++s) {
                complex<double> amp = 0.0;
                for (int f = 0; f < d; ++f)
                    amp += std::conj(alpha_vec(f)) * state.vector(outer + f * stride + s);
                overlap += std::norm(amp);
            }
        worst = std::min(worst, overlap / norm2);
        stride = block;
    }
    return worst;
}

double energy_expectation(const FockState& state, const NetworkConfig& config) {
    if (state.n_nodes != config.n_nodes)
        throw DimensionMismatch("state and config disagree on the node count");
    const int n = state.n_nodes;
    const int d = state.fock_dim;
    const std::int64_t slice = state.vector.size() / n;

    double energy = 0.0;
    for (int b = 1; b <= n; ++b) {
        const auto branch = state.vector.segment(std::int64_t(b - 1) * slice, slice);
        std::int64_t stride = 1;
        for (int mode = n; mode >= 1; --mode) {
            const double w = mode_coupling(config, b, mode);
            const std::int64_t block = stride * d;
            // <n_hat> - w <b^dag + b> over the mode-m fibers of this branch.
            for (std::int64_t outer = 0; outer < slice; outer += block)
                for (std::int64_t s = 0; s < stride; ++s) {
                    complex<double> hop = 0.0;
                    double number = 0.0;
                    for (int f = 0; f < d; ++f) {
                        const complex<double> amp = branch(outer + f * stride + s);
                        number += f * std::norm(amp);
                        if (f + 1 < d)
                            hop += std::conj(amp) * std::sqrt(double(f + 1)) *
                                   branch(outer + (f + 1) * stride + s);
                    }
                    energy += number - 2.0 * w * std::real(hop);
                }
            stride = block;
        }
    }
    return energy / state.vector.squaredNorm();
}

} // namespace strobe
