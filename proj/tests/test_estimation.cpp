#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "strobe/estimation.hpp"
#include "test_util.hpp"

using namespace strobe;
using namespace strobe::testutil;
using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

PhaseSet random_phase_set(std::mt19937& gen, int n_nodes) {
    std::uniform_real_distribution<double> magnitude(0.1, 100.0);
    std::uniform_real_distribution<double> phase(-1.0, 1.0);
    Eigen::VectorXd betas(n_nodes - 1), phis(n_nodes - 1);
    for (int j = 0; j < n_nodes - 1; ++j) {
        betas(j) = (gen() % 2 ? 1.0 : -1.0) * magnitude(gen);
        phis(j) = phase(gen);
    }
    return make_phase_set(CaseId::Case2, betas, phis);
}

double rel_frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).norm() / b.norm();
}

} // namespace

TEST_SUITE("estimation") {

TEST_CASE("phase-encoded reduced state") {
    Eigen::VectorXcd psi = phase_encoded_state(vec({4 * pi, 4 * pi}), vec({0.3, 0.4}));
    REQUIRE(psi.size() == 3);
    const double norm = 1 / std::sqrt(3.0);
    CHECK(std::abs(psi(0) - cplx(norm, 0)) < 1e-15);
    CHECK(std::abs(psi(1) - norm * std::exp(cplx(0, 4 * pi * 0.3))) < 1e-14);
    CHECK(std::abs(psi(2) - norm * std::exp(cplx(0, 4 * pi * 0.4))) < 1e-14);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-14);

    CHECK_THROWS_AS(phase_encoded_state(vec({4 * pi}), vec({0.3, 0.4})),
                    DimensionMismatch);
}

TEST_CASE("closed-form information matrix") {
    const double beta = 4 * pi;
    FisherMatrix q3 = qfim_analytic(
        make_phase_set(CaseId::Case1, vec({beta, beta}), vec({0.3, 0.4})));
    CHECK(q3.kind == FisherKind::Quantum);
    REQUIRE(q3.dim() == 2);
    const double unit = 64 * pi * pi / 9.0;  // (4/9) beta^2 at beta = 4 pi
    CHECK(q3.entries(0, 0) == doctest::Approx(2 * unit).epsilon(1e-12));
    CHECK(q3.entries(1, 1) == doctest::Approx(2 * unit).epsilon(1e-12));
    CHECK(q3.entries(0, 1) == doctest::Approx(-unit).epsilon(1e-12));

    FisherMatrix q2 =
        qfim_analytic(make_phase_set(CaseId::Case1, vec({beta}), vec({0.1})));
    CHECK(q2.entries(0, 0) == doctest::Approx(beta * beta).epsilon(1e-12));

    // Degree-2 homogeneity in beta.
    FisherMatrix doubled = qfim_analytic(
        make_phase_set(CaseId::Case1, vec({2 * beta, 2 * beta}), vec({0.3, 0.4})));
    CHECK(rel_frobenius(doubled.entries, 4.0 * q3.entries) < 1e-14);

    // Independent of the Phi values.
    FisherMatrix shifted = qfim_analytic(
        make_phase_set(CaseId::Case1, vec({beta, beta}), vec({-2.1, 0.9})));
    CHECK((shifted.entries - q3.entries).norm() == 0.0);

    // Symmetric and positive definite for random sets.
    std::mt19937 gen(7);
    for (int trial = 0; trial < 20; ++trial) {
        FisherMatrix q = qfim_analytic(random_phase_set(gen, 2 + gen() % 8));
        CHECK((q.entries - q.entries.transpose()).lpNorm<Eigen::Infinity>() < 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q.entries);
        CHECK(eig.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("closed-form inverse solves the matrix exactly") {
    const double beta = -3.6 * pi;
    FisherMatrix inv3 = qfim_inverse(
        make_phase_set(CaseId::Case1, vec({beta, beta}), vec({0.2, 0.4})));
    const double unit = 3.0 / (4 * beta * beta);
    CHECK(inv3.entries(0, 0) == doctest::Approx(2 * unit).epsilon(1e-12));
    CHECK(inv3.entries(0, 1) == doctest::Approx(unit).epsilon(1e-12));
    // Diagonal entries are the per-parameter variance floors N/(2 beta^2).
    CHECK(inv3.entries(1, 1) == doctest::Approx(3.0 / (2 * beta * beta)).epsilon(1e-12));

    FisherMatrix inv2 =
        qfim_inverse(make_phase_set(CaseId::Case1, vec({beta}), vec({0.1})));
    CHECK(inv2.entries(0, 0) == doctest::Approx(1.0 / (beta * beta)).epsilon(1e-12));

    std::mt19937 gen(11);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(gen() % 19);
        PhaseSet set = random_phase_set(gen, n);
        Eigen::MatrixXd product =
            qfim_analytic(set).entries * qfim_inverse(set).entries;
        Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n - 1, n - 1);
        CHECK((product - identity).lpNorm<Eigen::Infinity>() < 1e-10);
    }
}

TEST_CASE("scalar precision bound") {
    PhaseSet equal_beta = case_phases(driven_example(), CaseId::Case1);
    const double trace = trace_inverse_qfim(equal_beta);
    CHECK(trace == doctest::Approx(3.0 / (16 * pi * pi)).epsilon(1e-12));
    CHECK(trace == doctest::Approx(0.018998).epsilon(3e-5));
    CHECK(trace ==
          doctest::Approx(qfim_inverse(equal_beta).entries.trace()).epsilon(1e-12));

    // Equal-coupling network of any size: N(N-1)/(32 pi^2 k^2 (l-l')^2).
    const double k = 0.7, gap = 1.5;
    NetworkConfig wide = make_config({k, k, k, k, k}, {0.5, 0.4, 0.3, 0.2, 0.1},
                                     gap, 0.0);
    CHECK(trace_inverse_qfim(case_phases(wide, CaseId::Case1)) ==
          doctest::Approx(5.0 * 4.0 / (32 * pi * pi * k * k * gap * gap))
              .epsilon(1e-12));

    // Undriven network: (N/(8 pi^2 lambda^4)) sum (k_j^+)^-2 when lambda' = 0.
    PhaseSet undriven = case_phases(undriven_example(), CaseId::Case2);
    const double expected =
        (3.0 / (8 * pi * pi)) * (1.0 / (1.8 * 1.8) + 1.0 / (1.6 * 1.6));
    CHECK(trace_inverse_qfim(undriven) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("finite-difference matrix reproduces the closed form") {
    FisherMatrix analytic = qfim_analytic(case_phases(driven_example(), CaseId::Case1));
    FisherMatrix numeric = qfim_numeric(driven_example(), CaseId::Case1);
    CHECK(numeric.kind == FisherKind::Quantum);
    CHECK(rel_frobenius(numeric.entries, analytic.entries) < 1e-6);

    NetworkConfig two = make_config({1.0, 1.0}, {0.5, 0.2}, 1.0, 0.0);
    CHECK(qfim_numeric(two, CaseId::Case1).entries(0, 0) ==
          doctest::Approx(16 * pi * pi).epsilon(1e-6));

    FisherMatrix case2_analytic =
        qfim_analytic(case_phases(undriven_example(), CaseId::Case2));
    CHECK(rel_frobenius(qfim_numeric(undriven_example(), CaseId::Case2).entries,
                        case2_analytic.entries) < 1e-6);

    NumericOptions precise;
    precise.richardson = true;
    CHECK(rel_frobenius(qfim_numeric(driven_example(), CaseId::Case1, precise).entries,
                        analytic.entries) < 1e-7);

    NumericOptions tiny;
    tiny.epsilon = 1e-10;
    CHECK_THROWS_AS(qfim_numeric(driven_example(), CaseId::Case1, tiny), StepTooSmall);
}

TEST_CASE("family-based matrix is gauge invariant") {
    const Eigen::VectorXd betas = vec({-3.6 * pi, -3.2 * pi});
    const Eigen::VectorXd phis = vec({0.2, 0.4});
    auto plain = [&](const Eigen::VectorXd& phi) {
        return phase_encoded_state(betas, phi);
    };
    auto gauged = [&](const Eigen::VectorXd& phi) {
        // Same family up to a parameter-dependent global phase.
        return Eigen::VectorXcd(std::exp(cplx(0, 7.0 * phi(0) - 2.0 * phi(1))) *
                                phase_encoded_state(betas, phi));
    };
    const double step = 1e-5 / (3.6 * pi);
    FisherMatrix reference = qfim_from_family(plain, phis, step);
    FisherMatrix twisted = qfim_from_family(gauged, phis, step);
    CHECK(rel_frobenius(twisted.entries, reference.entries) < 1e-8);
    CHECK(rel_frobenius(
              reference.entries,
              qfim_analytic(make_phase_set(CaseId::Case2, betas, phis)).entries) <
          1e-6);
}

TEST_CASE("single-parameter information") {
    PhaseSet two = make_phase_set(CaseId::Case1, vec({4 * pi}), vec({0.1}));
    CHECK(single_param_qfi(two, 2) == doctest::Approx(16 * pi * pi).epsilon(1e-12));
    CHECK(single_param_qfi(two, 2) == doctest::Approx(157.9136704174).epsilon(1e-10));

    std::mt19937 gen(3);
    for (int trial = 0; trial < 10; ++trial) {
        PhaseSet set = random_phase_set(gen, 2 + gen() % 8);
        FisherMatrix q = qfim_analytic(set);
        for (int j = 2; j <= set.n_nodes(); ++j)
            CHECK(single_param_qfi(set, j) ==
                  doctest::Approx(q.entries(j - 2, j - 2)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(single_param_qfi(two, 1), IndexOutOfRange);
    CHECK_THROWS_AS(single_param_qfi(two, 3), IndexOutOfRange);
}

TEST_CASE("nuisance-degraded variance floor") {
    Eigen::VectorXd betas = Eigen::VectorXd::Constant(9, 4 * pi);
    Eigen::VectorXd phis = Eigen::VectorXd::Zero(9);
    PhaseSet ten = make_phase_set(CaseId::Case1, betas, phis);
    CHECK(nuisance_variance_bound(ten, 2, 10000) ==
          doctest::Approx(3.16628e-6).epsilon(1e-4));

    // Degradation relative to the all-known case is exactly 2(N-1)/N.
    std::mt19937 gen(5);
    for (int trial = 0; trial < 10; ++trial) {
        PhaseSet set = random_phase_set(gen, 2 + gen() % 10);
        const int n = set.n_nodes();
        const double degradation =
            nuisance_variance_bound(set, 2, 1000) * 1000.0 * single_param_qfi(set, 2);
        CHECK(degradation == doctest::Approx(2.0 * (n - 1) / n).epsilon(1e-12));
    }

    PhaseSet two = make_phase_set(CaseId::Case1, vec({4 * pi}), vec({0.1}));
    CHECK(nuisance_variance_bound(two, 2, 100) * 100.0 * single_param_qfi(two, 2) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(nuisance_variance_bound(two, 2, 0), InvalidResourceCount);
}

TEST_CASE("resource scaling exponents of the scalar bound") {
    auto slope = [](const std::vector<double>& xs, const std::vector<double>& ys) {
        const auto n = static_cast<double>(xs.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += std::log(xs[i]);
            sy += std::log(ys[i]);
            sxx += std::log(xs[i]) * std::log(xs[i]);
            sxy += std::log(xs[i]) * std::log(ys[i]);
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };

    std::vector<double> exc, trace1, trace2;
    for (double n_exc : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        exc.push_back(n_exc);
        NetworkConfig driven = driven_example();
        driven.lambda = n_exc;  // photon-number eigenvalue pair (N_exc, 0)
        trace1.push_back(trace_inverse_qfim(case_phases(driven, CaseId::Case1)));
        NetworkConfig undriven = undriven_example();
        undriven.lambda = n_exc / 2.0;  // spin eigenvalue pair (N_exc/2, 0)
        trace2.push_back(trace_inverse_qfim(case_phases(undriven, CaseId::Case2)));
    }
    CHECK(slope(exc, trace1) == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(slope(exc, trace2) == doctest::Approx(-4.0).epsilon(1e-9));
}

} // TEST_SUITE("estimation")
