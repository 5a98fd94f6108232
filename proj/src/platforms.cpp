#include "strobe/platforms.hpp"

#include <cmath>
#include <string>

#include "strobe/errors.hpp"

namespace strobe {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_device(const PlatformPreset& preset) {
    if (preset.omega <= 0.0 || preset.mass <= 0.0 || preset.coupling <= 0.0)
        throw NonPositiveInput("platform '" + preset.name +
                               "' needs positive omega, mass and coupling");
}

void check_resources(int n_nodes, int n_exc, long mu, int min_exc) {
    if (n_nodes < 2)
        throw InvalidResourceCount("a network needs at least 2 nodes, got " +
                                   std::to_string(n_nodes));
    if (n_exc < min_exc)
        throw InvalidResourceCount("excitation number must be >= " + std::to_string(min_exc) +
                                   ", got " + std::to_string(n_exc) +
                                   (min_exc == 2 ? " (a single spin-1/2 pins lambda' = -lambda "
                                                   "and the Fisher matrix degenerates)"
                                                 : ""));
    if (mu < 1)
        throw InvalidResourceCount("measurement count mu must be >= 1, got " +
                                   std::to_string(mu));
}

SiBound make_bound(double variance) {
    return SiBound{variance, std::sqrt(variance)};
}

} // namespace

const std::vector<PlatformPreset>& platform_presets() {
    static const std::vector<PlatformPreset> presets = {
        {"fabry-perot", 1e3, 1e-6, 2.3},
        {"levitated", 1e2, 1e-14, 1963.0},
        {"cold-atoms", 1e2, 1e-25, 2.3e6},
        {"spin-mechanical", 1e3, 1e-12, 1.0},
    };
    return presets;
}

PlatformPreset find_platform(const std::string& name) {
    for (const PlatformPreset& preset : platform_presets())
        if (preset.name == name)
            return preset;
    std::string known;
    for (const PlatformPreset& preset : platform_presets())
        known += (known.empty() ? "" : ", ") + preset.name;
    throw ConfigInvalid("unknown platform '" + name + "'; known presets: " + known);
}

double zero_point(double mass, double omega) {
    if (mass <= 0.0)
        throw NonPositiveInput("mass must be positive, got " + std::to_string(mass));
    if (omega <= 0.0)
        throw NonPositiveInput("omega must be positive, got " + std::to_string(omega));
    return std::sqrt(kHbar / (2.0 * mass * omega));
}

SiBound case1_gravimetry_bound(const PlatformPreset& preset, int n_nodes, int n_exc,
                               long mu) {
    check_device(preset);
    check_resources(n_nodes, n_exc, mu, 1);
    const double x0 = zero_point(preset.mass, preset.omega);
    const double accel_per_phase = preset.omega * kHbar / (x0 * preset.mass);  // m/s^2
    const double n = double(n_nodes);
    const double k = preset.coupling;
    const double exc = double(n_exc);
    const double variance = n * (n - 1.0) / (32.0 * kPi * kPi * k * k * exc * exc) *
                            accel_per_phase * accel_per_phase / double(mu);
    return make_bound(variance);
}

SiBound case2_coupling_bound(double omega, double coupling_scale, int n_nodes, int n_exc,
                             long mu) {
    if (omega <= 0.0 || coupling_scale <= 0.0)
        throw NonPositiveInput("omega and coupling scale must be positive");
    check_resources(n_nodes, n_exc, mu, 2);
    const double n = double(n_nodes);
    const double exc = double(n_exc);
    const double variance = omega * omega * n * (n - 1.0) /
                            (2.0 * kPi * kPi * coupling_scale * coupling_scale *
                             exc * exc * exc * exc) / double(mu);
    return make_bound(variance);
}

SiBound case2_coupling_bound_exact(double omega, const Eigen::VectorXd& k_plus, int n_exc,
                                   long mu) {
    if (omega <= 0.0)
        throw NonPositiveInput("omega must be positive");
    const int n_nodes = static_cast<int>(k_plus.size()) + 1;
    check_resources(n_nodes, n_exc, mu, 2);
    for (Eigen::Index j = 0; j < k_plus.size(); ++j)
        if (k_plus(j) == 0.0)
            throw SingularBeta("coupling sum k_" + std::to_string(j + 2) +
                               "^+ = 0 makes the bound diverge");
    const double n = double(n_nodes);
    const double exc = double(n_exc);
    const double variance = 2.0 * omega * omega * n / (kPi * kPi * exc * exc * exc * exc) *
                            k_plus.cwiseAbs2().cwiseInverse().sum() / double(mu);
    return make_bound(variance);
}

int resource_tradeoff(CaseId case_id, int n_nodes) {
    if (n_nodes < 2)
        throw InvalidResourceCount("a network needs at least 2 nodes, got " +
                                   std::to_string(n_nodes));
    const double target = double(n_nodes) * (double(n_nodes) - 1.0);
    const int order = (case_id == CaseId::Case1) ? 2 : 4;
    int n_exc = 1;
    while (std::pow(double(n_exc), order) < target)
        ++n_exc;
    return n_exc;
}

} // namespace strobe
