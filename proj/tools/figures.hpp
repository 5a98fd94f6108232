#pragma once

// Sweep tables shared by the figure2/figure3 CLI subcommands and the
// order-of-magnitude acceptance checks: the dimensionless resource factor
// N(N-1)/N_exc^r over the (N, N_exc) grid, per-platform SI bounds versus
// network size, and per-platform SI bounds versus excitation number. Rows
// are emitted sorted by grid coordinates so output is deterministic.

#include <cmath>
#include <string>
#include <vector>

#include "strobe/platforms.hpp"
#include "strobe/probe.hpp"

namespace strobe::figures {

// Shot budget for every published sweep.
inline constexpr long kShots = 10000;

struct FactorRow {
    int n = 0;
    int n_exc = 0;
    double factor = 0.0;
};

struct BoundRow {
    int n = 0;
    int n_exc = 0;
    std::string platform;
    double variance = 0.0;
    double delta_rms = 0.0;
};

// Platforms plotted per case. The spin-mechanical device only enters the
// coupling-estimation sweeps.
inline const std::vector<std::string>& case1_platforms() {
    static const std::vector<std::string> names = {"fabry-perot", "levitated",
                                                   "cold-atoms"};
    return names;
}

inline const std::vector<std::string>& case2_platforms() {
    static const std::vector<std::string> names = {
        "fabry-perot", "levitated", "cold-atoms", "spin-mechanical"};
    return names;
}

inline const std::vector<std::string>& sweep_platforms(CaseId case_id) {
    return case_id == CaseId::Case1 ? case1_platforms() : case2_platforms();
}

// Case 2 needs n_exc >= 2: a single spin-1/2 excitation has no m = 0 level,
// which forces lambda' = -lambda and a singular phase prefactor.
inline int min_excitations(CaseId case_id) {
    return case_id == CaseId::Case1 ? 1 : 2;
}

inline SiBound platform_bound(CaseId case_id, const PlatformPreset& preset,
                              int n_nodes, int n_exc) {
    if (case_id == CaseId::Case1)
        return case1_gravimetry_bound(preset, n_nodes, n_exc, kShots);
    return case2_coupling_bound(preset.omega, preset.coupling, n_nodes, n_exc,
                                kShots);
}

// Panel (a): N(N-1)/N_exc^r over N = 2..30, N_exc = min..30, with r = 2
// (gravimetry) or r = 4 (coupling estimation).
inline std::vector<FactorRow> factor_sweep(CaseId case_id) {
    const double order = case_id == CaseId::Case1 ? 2.0 : 4.0;
    std::vector<FactorRow> rows;
    for (int n = 2; n <= 30; ++n)
        for (int exc = min_excitations(case_id); exc <= 30; ++exc)
            rows.push_back(
                {n, exc,
                 double(n) * double(n - 1) / std::pow(double(exc), order)});
    return rows;
}

// Panel (b): per-platform bound versus N at the smallest admissible N_exc.
inline std::vector<BoundRow> node_sweep(CaseId case_id) {
    const int exc = min_excitations(case_id);
    std::vector<BoundRow> rows;
    for (int n = 2; n <= 30; ++n)
        for (const std::string& name : sweep_platforms(case_id)) {
            const SiBound bound =
                platform_bound(case_id, find_platform(name), n, exc);
            rows.push_back({n, exc, name, bound.variance_bound,
                            bound.delta_rms});
        }
    return rows;
}

// Panel (c) grid: N_exc = min..30; the coupling case extends into the
// hundreds because its quartic gain keeps paying there (the gravimetry gain
// is only quadratic and the dense part of the grid already shows it).
inline std::vector<int> excitation_grid(CaseId case_id) {
    std::vector<int> grid;
    for (int exc = min_excitations(case_id); exc <= 30; ++exc)
        grid.push_back(exc);
    if (case_id == CaseId::Case2)
        for (int exc : {40, 60, 100, 150, 220, 330, 470, 680, 1000})
            grid.push_back(exc);
    return grid;
}

// Panel (c): per-platform bound versus N_exc at fixed N = 10.
inline std::vector<BoundRow> excitation_sweep(CaseId case_id) {
    constexpr int n_nodes = 10;
    std::vector<BoundRow> rows;
    for (int exc : excitation_grid(case_id))
        for (const std::string& name : sweep_platforms(case_id)) {
            const SiBound bound =
                platform_bound(case_id, find_platform(name), n_nodes, exc);
            rows.push_back({n_nodes, exc, name, bound.variance_bound,
                            bound.delta_rms});
        }
    return rows;
}

} // namespace strobe::figures
