#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "strobe/dynamics.hpp"
#include "strobe/oracle.hpp"
#include "test_util.hpp"

using namespace strobe;
using namespace strobe::testutil;
using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

// Independent evaluation of the branch phase straight from the published
// closed form (valid for real initial amplitudes):
//   xi_j = (1/2) e^{-i tau} (l - l') [ a (1 - e^{2 i tau})(k_1 - k_j)
//          - 2 (2 E_1 k_1 - 2 E_j k_j - (k_1 - k_j)(k_1 + k_j)(l + l'))
//            (tau - sin tau)(sin tau - i cos tau) ].
cplx reference_phase(const NetworkConfig& c, int j, double tau) {
    const cplx i(0.0, 1.0);
    const double k1 = c.couplings(0), kj = c.couplings(j - 1);
    const double e1 = c.drivings(0), ej = c.drivings(j - 1);
    const double dl = c.lambda - c.lambda_prime;
    const double sl = c.lambda + c.lambda_prime;
    const double cj = 2 * e1 * k1 - 2 * ej * kj - (k1 - kj) * (k1 + kj) * sl;
    return 0.5 * std::exp(-i * tau) * dl *
           (c.alpha.real() * (1.0 - std::exp(2.0 * i * tau)) * (k1 - kj) -
            2.0 * cj * (tau - std::sin(tau)) * (std::sin(tau) - i * std::cos(tau)));
}

} // namespace

TEST_SUITE("dynamics") {

TEST_CASE("initial state: uniform branches over a shared coherent product") {
    const NetworkConfig config = driven_example();
    BranchState state = build_initial_state(config);
    REQUIRE(state.n_nodes == 3);
    CHECK(state.tau == 0.0);
    for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(state.coefficients(j) - 1.0 / std::sqrt(3.0)) < 1e-15);
        for (int m = 0; m < 3; ++m)
            CHECK(std::abs(state.amplitudes(j, m) - config.alpha) < 1e-15);
    }

    NetworkConfig bad = config;
    bad.lambda_prime = bad.lambda;
    CHECK_THROWS_AS(build_initial_state(bad), ConfigInvalid);
}

TEST_CASE("zero-time evolution is the identity") {
    const NetworkConfig config =
        make_config({0.3, 0.7, 0.2}, {0.1, 0.0, 0.4}, 1.5, -0.5, {0.4, 0.8});
    BranchState initial = build_initial_state(config);
    BranchState evolved = evolve(config, 0.0);
    for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(evolved.coefficients(j) - initial.coefficients(j)) < 1e-15);
        for (int m = 0; m < 3; ++m)
            CHECK(std::abs(evolved.amplitudes(j, m) - initial.amplitudes(j, m)) < 1e-15);
    }
}

TEST_CASE("coherent amplitudes: displaced rotation with one-period returns") {
    const NetworkConfig config =
        make_config({1.0, 0.8}, {0.0, 0.3}, 1.0, 0.0, {0.6, -0.2});

    // One full period restores the initial amplitude on every branch/mode.
    for (int j = 1; j <= 2; ++j)
        for (int m = 1; m <= 2; ++m)
            CHECK(std::abs(coherent_amplitude(config, j, m, 2 * pi) - config.alpha) <
                  1e-13);

    // Half a period with no initial amplitude: displacement reaches 2W.
    NetworkConfig kicked = make_config({1.0, 1.0}, {0.0, 0.0}, 1.0, 0.0, {0.0, 0.0});
    CHECK(std::abs(coherent_amplitude(kicked, 1, 1, pi) - cplx(2.0, 0.0)) < 1e-14);

    CHECK(std::abs(coherent_amplitude(config, 2, 1, 0.0) - config.alpha) < 1e-15);

    CHECK_THROWS_AS(coherent_amplitude(config, 0, 1, 1.0), IndexOutOfRange);
    CHECK_THROWS_AS(coherent_amplitude(config, 1, 3, 1.0), IndexOutOfRange);
}

TEST_CASE("identical nodes accumulate no relative phase") {
    const NetworkConfig config =
        make_config({0.7, 0.7}, {0.3, 0.3}, 1.2, -0.4, {0.5, 0.9});
    for (double tau : {0.0, 0.4, 1.7, pi, 4.4, 2 * pi})
        CHECK(std::abs(xi_phase(config, 2, tau)) < 1e-14);
}

TEST_CASE("branch phases are purely imaginary for any complex amplitude") {
    const NetworkConfig config =
        make_config({0.9, 0.3, 0.5}, {0.2, 0.0, 0.6}, 1.0, -0.7, {1.1, -0.8});
    for (int j : {2, 3})
        for (double tau : {0.3, 1.0, 2.2, pi, 3.9, 5.5, 2 * pi}) {
            CHECK(std::abs(xi_phase(config, j, tau).real()) < 1e-13);
            BranchState state = evolve(config, tau);
            CHECK(std::abs(std::abs(state.coefficients(j - 1)) - 1 / std::sqrt(3.0)) <
                  1e-13);
        }
    CHECK_THROWS_AS(xi_phase(config, 1, 1.0), IndexOutOfRange);
    CHECK_THROWS_AS(xi_phase(config, 4, 1.0), IndexOutOfRange);
}

TEST_CASE("phase matches the direct closed form for real amplitudes") {
    const NetworkConfig config = driven_example();  // real alpha = 1
    const NetworkConfig mixed =
        make_config({0.8, 0.3, 0.6}, {0.1, 0.4, 0.0}, 1.3, -0.2, {0.7, 0.0});
    for (const NetworkConfig& c : {config, mixed})
        for (int j : {2, 3})
            for (double tau : {0.3, 1.1, 2.7, 4.9, 6.1})
                CHECK(std::abs(xi_phase(c, j, tau) - reference_phase(c, j, tau)) <
                      1e-12);
}

TEST_CASE("one-period phase collapses to the excitation-gap line") {
    // With lambda' = 0 and equal couplings the accumulated phase is
    // 4*pi*k*lambda*(E_1 - E_j), the quantity case_phases tabulates.
    const NetworkConfig config = driven_example();
    const cplx xi2 = xi_phase(config, 2, 2 * pi);
    const cplx xi3 = xi_phase(config, 3, 2 * pi);
    CHECK(std::abs(xi2.real()) < 1e-12);
    CHECK(xi2.imag() == doctest::Approx(4 * pi * 0.3).epsilon(1e-12));
    CHECK(xi3.imag() == doctest::Approx(4 * pi * 0.4).epsilon(1e-12));
}

TEST_CASE("amplitudes are periodic in the drive period") {
    const NetworkConfig config =
        make_config({0.4, 0.9}, {0.2, 0.0}, 1.0, -0.3, {0.5, 0.5});
    for (double tau : {0.2, 1.3, 3.0, 5.1})
        for (int j : {1, 2})
            for (int m : {1, 2})
                CHECK(std::abs(coherent_amplitude(config, j, m, tau + 2 * pi) -
                               coherent_amplitude(config, j, m, tau)) < 1e-13);
}

TEST_CASE("one-period state: mechanics returned, phases equal the reduction") {
    StroboscopicState strobe1 = stroboscopic_state(driven_example(), CaseId::Case1);
    CHECK(strobe1.phases.betas(0) == doctest::Approx(4 * pi));
    CHECK(strobe1.phases.phis(1) == doctest::Approx(0.4));
    const double norm = 1 / std::sqrt(3.0);
    CHECK(std::abs(strobe1.state.coefficients(0) - cplx(norm, 0)) < 1e-13);
    CHECK(std::abs(strobe1.state.coefficients(1) -
                   norm * std::exp(cplx(0, 4 * pi * 0.3))) < 1e-12);
    CHECK(std::abs(strobe1.state.coefficients(2) -
                   norm * std::exp(cplx(0, 4 * pi * 0.4))) < 1e-12);
    for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m)
            CHECK(std::abs(strobe1.state.amplitudes(j, m) - cplx(1.0, 0.0)) < 1e-13);

    StroboscopicState strobe2 = stroboscopic_state(undriven_example(), CaseId::Case2);
    CHECK(std::abs(strobe2.state.coefficients(1) -
                   norm * std::exp(cplx(0, -3.6 * pi * 0.2))) < 1e-12);
    CHECK(std::abs(strobe2.state.coefficients(2) -
                   norm * std::exp(cplx(0, -3.2 * pi * 0.4))) < 1e-12);

    // Identical nodes: the period returns the initial uniform superposition.
    NetworkConfig flat = make_config({1.0, 1.0, 1.0}, {0.2, 0.2, 0.2}, 1.0, 0.0);
    StroboscopicState trivial = stroboscopic_state(flat, CaseId::Case1);
    for (int j = 0; j < 3; ++j)
        CHECK(std::abs(trivial.state.coefficients(j) - cplx(norm, 0)) < 1e-13);

    CHECK_THROWS_AS(stroboscopic_state(driven_example(), CaseId::Case2),
                    CaseConditionViolated);
}

TEST_CASE("truncated-Fock cross-check at quarter-period points") {
    const NetworkConfig config =
        make_config({0.1, 0.2}, {0.05, 0.0}, 1.0, 0.0, {1.0, 0.0});
    for (double tau : {pi / 4, pi / 2, pi, 3 * pi / 2, 2 * pi}) {
        FockState numeric = evolve_numeric(config, 25, tau);
        CHECK(fidelity(numeric, evolve(config, tau)) >= 1.0 - 1e-8);
    }
}

} // TEST_SUITE("dynamics")
