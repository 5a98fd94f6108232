#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "strobe/estimation.hpp"
#include "strobe/measurement.hpp"
#include "strobe/sampler.hpp"
#include "test_util.hpp"

using namespace strobe;
using namespace strobe::testutil;
using std::numbers::pi;

namespace {

// Two-outcome projective set from the SLD eigenbasis of a two-node network,
// referenced at `phi_ref`.
ProjectorSet sld_projectors(const PhaseSet& ref_set) {
    SldEigenbasis eigen = sld_eigenbasis(ref_set, 2);
    ProjectorSet basis;
    basis.dim = 2;
    basis.vectors.resize(2, 2);
    basis.vectors.row(0) = eigen.vectors[0].transpose();
    basis.vectors.row(1) = eigen.vectors[1].transpose();
    basis.reference_phases = ref_set.phis;
    return basis;
}

} // namespace

TEST_SUITE("sampler") {

TEST_CASE("multinomial sampling reproduces the documented generator") {
    // Contract: mt19937_64, uniforms from the top 53 bits, one CDF walk per
    // shot. Re-derive the counts independently and compare exactly.
    auto reference_counts = [](const Eigen::VectorXd& p, long shots,
                               std::uint64_t seed) {
        std::mt19937_64 generator(seed);
        std::vector<long> counts(p.size(), 0);
        for (long s = 0; s < shots; ++s) {
            const double u = double(generator() >> 11) * 0x1.0p-53;
            double cumulative = 0.0;
            Eigen::Index drawn = p.size() - 1;
            for (Eigen::Index a = 0; a < p.size(); ++a) {
                cumulative += p(a);
                if (u < cumulative) {
                    drawn = a;
                    break;
                }
            }
            ++counts[drawn];
        }
        return counts;
    };

    const Eigen::VectorXd two = vec({0.3, 0.7});
    CHECK(sample_outcomes(two, 10, 42) == reference_counts(two, 10, 42));
    const Eigen::VectorXd three = vec({0.2, 0.5, 0.3});
    CHECK(sample_outcomes(three, 1000, 7) == reference_counts(three, 1000, 7));
}

TEST_CASE("sampling statistics and determinism") {
    const Eigen::VectorXd fair = vec({0.5, 0.5});
    std::vector<long> counts = sample_outcomes(fair, 1000000, 123);
    CHECK(counts[0] + counts[1] == 1000000);
    // 5 sigma around the mean of a fair binomial: 5 * sqrt(1e6)/2 = 2500.
    CHECK(std::abs(counts[0] - 500000l) < 2500);

    CHECK(sample_outcomes(fair, 10000, 1) == sample_outcomes(fair, 10000, 1));
    CHECK(sample_outcomes(fair, 10000, 1) != sample_outcomes(fair, 10000, 2));

    std::vector<long> all = sample_outcomes(vec({1.0}), 250, 9);
    CHECK(all[0] == 250);
}

TEST_CASE("sampling input validation") {
    CHECK_THROWS_AS(sample_outcomes(vec({-0.1, 1.1}), 10, 0), InvalidDistribution);
    CHECK_THROWS_AS(sample_outcomes(vec({0.6, 0.5}), 10, 0), InvalidDistribution);
    CHECK_THROWS_AS(sample_outcomes(vec({0.5, 0.5}), 0, 0), InvalidDistribution);
}

TEST_CASE("two-node SLD measurement: MLE equals the analytic inversion") {
    const double beta = 4.0 * pi;
    const double phi_ref = 0.20;
    const double phi_true = 0.25;
    PhaseSet ref_set =
        make_phase_set(CaseId::Case1, vec({beta}), vec({phi_ref}));
    ProjectorSet basis = sld_projectors(ref_set);

    const Eigen::VectorXd p_true =
        outcome_probabilities(basis, phase_encoded_state(vec({beta}), vec({phi_true})));
    CHECK(p_true(0) ==
          doctest::Approx(0.5 + 0.5 * std::sin(beta * (phi_true - phi_ref)))
              .epsilon(1e-12));

    const long mu = 100000;
    std::vector<long> counts = sample_outcomes(p_true, mu, 2024);

    // p_+ = 1/2 + 1/2 sin(beta (phi - ref)) inverts in closed form inside the
    // identifiability window.
    const double p_hat = double(counts[0]) / double(mu);
    const double analytic = phi_ref + std::asin(2.0 * p_hat - 1.0) / beta;

    MleModel model{basis, vec({beta})};
    Eigen::VectorXd estimate = mle_estimate(counts, model, vec({phi_ref}));
    REQUIRE(estimate.size() == 1);
    CHECK(std::abs(estimate(0) - analytic) < 5e-8);
    CHECK(std::abs(estimate(0) - phi_true) < 0.01);
}

TEST_CASE("matched basis with zero-count cells recovers the truth") {
    const Eigen::VectorXd betas = vec({4.0 * pi, 4.0 * pi});
    const Eigen::VectorXd truth = vec({0.3, 0.4});
    MleModel model{gram_schmidt_basis(3, betas, truth), betas};
    const Eigen::VectorXd p =
        outcome_probabilities(model.basis, phase_encoded_state(betas, truth));
    CHECK(p(0) == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<long> counts = sample_outcomes(p, 100000, 5);
    CHECK(counts[0] == 100000);  // the matched outcome absorbs every shot

    Eigen::VectorXd init = (truth.array() + 0.3 / (4.0 * pi)).matrix();
    Eigen::VectorXd estimate = mle_estimate(counts, model, init);
    CHECK(std::abs(estimate(0) - truth(0)) < 1e-6);
    CHECK(std::abs(estimate(1) - truth(1)) < 1e-6);
}

TEST_CASE("two detuned datasets give a 5-sigma-consistent joint MLE") {
    const double beta = 4.0 * pi;
    const Eigen::VectorXd betas = vec({beta, beta});
    const Eigen::VectorXd truth = vec({0.3, 0.4});

    const Eigen::VectorXd refs1 = (truth.array() - 0.05 / beta).matrix();
    const Eigen::VectorXd refs2 = (truth.array() + 0.08 / beta).matrix();
    MleModel model1{gram_schmidt_basis(3, betas, refs1), betas};
    MleModel model2{gram_schmidt_basis(3, betas, refs2), betas};
    const long mu = 100000;
    std::vector<MleData> data = {
        MleData{sample_outcomes(outcome_probabilities(
                                    model1.basis, phase_encoded_state(betas, truth)),
                                mu, 11),
                model1},
        MleData{sample_outcomes(outcome_probabilities(
                                    model2.basis, phase_encoded_state(betas, truth)),
                                mu, 12),
                model2}};

    // Distinct references break the reflection degeneracy, so ambiguity
    // detection must stay quiet here.
    Eigen::VectorXd estimate = mle_estimate(data, refs1);

    // 5 sigma per component from the quantum bound at 2 mu total shots.
    PhaseSet set = make_phase_set(CaseId::Case1, betas, truth);
    const Eigen::VectorXd sigma =
        (qfim_inverse(set).entries.diagonal() / double(2 * mu)).cwiseSqrt();
    CHECK(std::abs(estimate(0) - truth(0)) < 5.0 * sigma(0));
    CHECK(std::abs(estimate(1) - truth(1)) < 5.0 * sigma(1));
}

TEST_CASE("single-reference likelihood reports its exact mirror degeneracy") {
    const double beta = 4.0 * pi;
    const Eigen::VectorXd betas = vec({beta, beta});
    const Eigen::VectorXd truth = vec({0.3, 0.4});
    const Eigen::VectorXd refs = (truth.array() - 0.1 / beta).matrix();
    MleModel model{gram_schmidt_basis(3, betas, refs), betas};
    std::vector<long> counts = sample_outcomes(
        outcome_probabilities(model.basis, phase_encoded_state(betas, truth)),
        100000, 7);

    CHECK_THROWS_AS(mle_estimate(counts, model, refs), AmbiguousLikelihood);

    // With detection off the local search settles on one of the likelihood's
    // exactly degenerate global maxima. For three nodes and one reference set
    // these form a Z2 x Z2 orbit, not just the diagonal mirror pair: writing
    // delta_j = beta_j (Phi_j - ref_j), outcome 1 depends only on cos(delta_2)
    // and outcomes 0 and 2 depend on delta_3 only through
    // cos(delta_3) + cos(delta_2 - delta_3), so (delta_2, delta_3) ->
    // (delta_2, delta_2 - delta_3) and -> (-delta_2, delta_3 - delta_2) leave
    // every outcome probability unchanged, alongside the global sign flip.
    MleOptions options;
    options.detect_ambiguity = false;
    Eigen::VectorXd estimate = mle_estimate(counts, model, refs, options);
    const Eigen::VectorXd delta_est = betas.cwiseProduct(estimate - refs);
    const Eigen::VectorXd delta_truth = betas.cwiseProduct(truth - refs);
    const std::vector<Eigen::VectorXd> orbit = {
        delta_truth,
        vec({delta_truth(0), delta_truth(0) - delta_truth(1)}),
        vec({-delta_truth(0), -delta_truth(1)}),
        vec({-delta_truth(0), delta_truth(1) - delta_truth(0)}),
    };
    double nearest = std::numeric_limits<double>::infinity();
    for (const Eigen::VectorXd& image : orbit)
        nearest = std::min(nearest, (delta_est - image).cwiseAbs().maxCoeff());
    CHECK(nearest < 0.05);
}

TEST_CASE("likelihood search failure modes") {
    const Eigen::VectorXd betas = vec({4.0 * pi, 4.0 * pi});
    const Eigen::VectorXd truth = vec({0.3, 0.4});
    const Eigen::VectorXd refs = (truth.array() - 0.1 / (4.0 * pi)).matrix();
    MleModel model{gram_schmidt_basis(3, betas, refs), betas};
    std::vector<long> counts = sample_outcomes(
        outcome_probabilities(model.basis, phase_encoded_state(betas, truth)),
        10000, 3);

    MleOptions strangled;
    strangled.max_iterations = 3;
    CHECK_THROWS_AS(mle_estimate(counts, model, refs, strangled), NotConverged);

    std::vector<long> short_counts = {5000, 5000};
    CHECK_THROWS_AS(mle_estimate(short_counts, model, refs), DimensionMismatch);
    CHECK_THROWS_AS(mle_estimate(counts, model, vec({0.3})), DimensionMismatch);
    CHECK_THROWS_AS(mle_estimate(std::vector<MleData>{}, refs), DimensionMismatch);
    std::vector<long> negative = {-1, 5000, 5000};
    CHECK_THROWS_AS(mle_estimate(negative, model, refs), InvalidDistribution);
}

TEST_CASE("two-stage experiment sits at the precision bound") {
    NetworkConfig config = driven_example();
    SaturationReport report =
        saturation_experiment(config, CaseId::Case1, 2000, 100, 1);

    CHECK(report.mu == 2000);
    CHECK(report.trials == 100);
    CHECK(report.seed == 1);
    CHECK(report.stage_split == 0.5);

    PhaseSet phases = case_phases(config, CaseId::Case1);
    CHECK(report.bound_trace ==
          doctest::Approx(trace_inverse_qfim(phases) / 2000.0).epsilon(1e-12));
    CHECK(report.ratio ==
          doctest::Approx(report.empirical_trace / report.bound_trace)
              .epsilon(1e-12));

    // Unbiased-estimator floor with 3/sqrt(trials) sampling slack, and a
    // loose efficiency ceiling for this smoke-sized run.
    CHECK(report.ratio >= 1.0 - 3.0 / std::sqrt(100.0));
    // At mu = 2000 the side cells collect only a handful of counts per stage,
    // so the MSE sits a factor ~2 above the bound; 3.0 leaves ~1-sigma slack
    // for the 100-trial estimate of that ratio.
    CHECK(report.ratio < 3.0);

    REQUIRE(report.mean_bias.size() == 2);
    CHECK(std::abs(report.mean_bias(0)) < 1.5e-3);
    CHECK(std::abs(report.mean_bias(1)) < 1.5e-3);

    SaturationReport again =
        saturation_experiment(config, CaseId::Case1, 2000, 100, 1);
    CHECK(again.ratio == report.ratio);  // bitwise reproducible
    CHECK(again.empirical_trace == report.empirical_trace);
    CHECK(again.mean_bias == report.mean_bias);
}

TEST_CASE("saturation preconditions") {
    NetworkConfig config = driven_example();
    CHECK_THROWS_AS(saturation_experiment(config, CaseId::Case1, 999, 100, 1),
                    InvalidResourceCount);
    CHECK_THROWS_AS(saturation_experiment(config, CaseId::Case1, 2000, 99, 1),
                    InvalidResourceCount);
}

} // TEST_SUITE("sampler")
