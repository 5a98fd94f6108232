// Command-line surface for the stroboscopic sensing toolkit: config
// ingestion, one subcommand per computation, CSV emission for the published
// sweeps, and a self-validation command pitting the closed-form dynamics
// against the truncated-Fock propagator.
//
// Exit codes:
//   0  success
//   1  configuration / input-shape errors (also CLI parse errors)
//   2  numerical-quality failures (truncation, non-convergence, ambiguity)
//   3  case-condition violations and singular phase prefactors

#include <cstdint>
#include <cstdio>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "figures.hpp"
#include "strobe/dynamics.hpp"
#include "strobe/entanglement.hpp"
#include "strobe/errors.hpp"
#include "strobe/estimation.hpp"
#include "strobe/measurement.hpp"
#include "strobe/oracle.hpp"
#include "strobe/platforms.hpp"
#include "strobe/probe.hpp"
#include "strobe/sampler.hpp"

#ifndef STROBE_VERSION
#define STROBE_VERSION "0.0.0"
#endif

namespace {

using namespace strobe;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Deterministic formatting helpers. All floating-point output uses %.17g so
// that identical invocations produce byte-identical files.

std::string fmt(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

std::string fmt_int(long long x) { return std::to_string(x); }

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string hash_tag(const std::string& bytes) {
    char buffer[24];
    std::snprintf(buffer, sizeof buffer, "%016llx",
                  static_cast<unsigned long long>(fnv1a(bytes)));
    return std::string("fnv1a:") + buffer;
}

// Metadata comment stamped into every CSV: version, an FNV-1a hash of the
// input (config file bytes, or the canonical parameter string for commands
// without a config file), the Planck constant used for SI conversions, and
// the frequency-interpretation flag.
std::string metadata_line(const std::string& input_bytes) {
    std::string line = "# strobe ";
    line += STROBE_VERSION;
    line += " | config=" + hash_tag(input_bytes);
    line += " | hbar=" + fmt(kHbar) + " J*s";
    line += " | omega-interpretation=angular(rad/s)";
    line += "\n";
    return line;
}

void emit_stdout(const std::string& text) { std::fputs(text.c_str(), stdout); }

void emit_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ConfigInvalid("cannot open output file for writing: " +
                            path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw ConfigInvalid("short write to output file: " + path.string());
}

// ---------------------------------------------------------------------------
// Config ingestion: slurp once so the metadata hash covers exactly the bytes
// that were parsed.

struct LoadedConfig {
    NetworkConfig config;
    std::string bytes;
};

LoadedConfig slurp_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigInvalid("config file not readable: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    LoadedConfig loaded;
    loaded.bytes = buffer.str();
    loaded.config = parse_network_config(loaded.bytes, path);
    return loaded;
}

CaseId to_case(int value) {
    if (value == 1) return CaseId::Case1;
    if (value == 2) return CaseId::Case2;
    throw ConfigInvalid("--case must be 1 or 2, got " + std::to_string(value));
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns the full output text (and emits files for
// the sweep commands), so success always ends with a single write.

std::string run_state(const LoadedConfig& loaded, double tau) {
    const BranchState state = evolve(loaded.config, tau);
    std::string csv = metadata_line(loaded.bytes);
    csv += "quantity,branch,mode,value_re,value_im\n";
    for (int j = 1; j <= state.n_nodes; ++j) {
        const std::complex<double> c = state.coefficients(j - 1);
        csv += "coefficient," + fmt_int(j) + ",," + fmt(c.real()) + "," +
               fmt(c.imag()) + "\n";
    }
    for (int j = 1; j <= state.n_nodes; ++j)
        for (int m = 1; m <= state.n_nodes; ++m) {
            const std::complex<double> a = state.amplitudes(j - 1, m - 1);
            csv += "amplitude," + fmt_int(j) + "," + fmt_int(m) + "," +
                   fmt(a.real()) + "," + fmt(a.imag()) + "\n";
        }
    return csv;
}

std::vector<double> parse_grid(const std::string& spec) {
    double start = 0.0, stop = 0.0, step = 0.0;
    char tail = '\0';
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step,
                    &tail) != 3)
        throw ConfigInvalid("--tau-grid must be START:STOP:STEP, got '" +
                            spec + "'");
    if (step <= 0.0)
        throw ConfigInvalid("--tau-grid step must be positive, got " +
                            fmt(step));
    if (stop < start)
        throw ConfigInvalid("--tau-grid stop must be >= start");
    std::vector<double> grid;
    const double slack = 0.5 * step;
    for (long i = 0;; ++i) {
        const double tau = start + double(i) * step;
        if (tau > stop + 1e-9 * slack) break;
        grid.push_back(tau);
        if (grid.size() > 1000000)
            throw ConfigInvalid("--tau-grid produces more than 1e6 points");
    }
    return grid;
}

std::string run_entropy(const LoadedConfig& loaded, const std::string& spec) {
    std::string csv = metadata_line(loaded.bytes);
    csv += "tau,entropy_closed,entropy_gram\n";
    for (double tau : parse_grid(spec)) {
        const double closed = linear_entropy_closed(loaded.config, tau);
        const double gram = linear_entropy_from_state(evolve(loaded.config, tau));
        csv += fmt(tau) + "," + fmt(closed) + "," + fmt(gram) + "\n";
    }
    return csv;
}

void append_matrix(std::string& csv, const std::string& name,
                   const Eigen::MatrixXd& matrix) {
    for (Eigen::Index i = 0; i < matrix.rows(); ++i)
        for (Eigen::Index j = 0; j < matrix.cols(); ++j)
            csv += name + "," + fmt_int(i + 2) + "," + fmt_int(j + 2) + "," +
                   fmt(matrix(i, j)) + "\n";
}

std::string run_qfim(const LoadedConfig& loaded, int case_value, bool numeric,
                     long mu) {
    const CaseId case_id = to_case(case_value);
    const PhaseSet phases = case_phases(loaded.config, case_id);
    Eigen::MatrixXd matrix;
    Eigen::MatrixXd inverse;
    if (numeric) {
        matrix = qfim_numeric(loaded.config, case_id).entries;
        inverse = matrix.inverse();
    } else {
        matrix = qfim_analytic(phases).entries;
        inverse = qfim_inverse(phases).entries;
    }
    std::string csv = metadata_line(loaded.bytes);
    csv += "quantity,i,j,value\n";
    append_matrix(csv, "qfim", matrix);
    append_matrix(csv, "qfim_inverse", inverse);
    csv += "trace_inverse,,," + fmt(inverse.trace()) + "\n";
    for (int j = 2; j <= phases.n_nodes(); ++j) {
        csv += "single_param_qfi," + fmt_int(j) + ",," +
               fmt(single_param_qfi(phases, j)) + "\n";
        csv += "multiparameter_variance_bound," + fmt_int(j) + ",," +
               fmt(inverse(j - 2, j - 2) / double(mu)) + "\n";
        csv += "nuisance_variance_bound," + fmt_int(j) + ",," +
               fmt(nuisance_variance_bound(phases, j, mu)) + "\n";
    }
    return csv;
}

std::string run_crb(const std::string& platform, int case_value, int n_nodes,
                    int n_exc, long mu) {
    const CaseId case_id = to_case(case_value);
    const PlatformPreset preset = find_platform(platform);
    const SiBound bound =
        case_id == CaseId::Case1
            ? case1_gravimetry_bound(preset, n_nodes, n_exc, mu)
            : case2_coupling_bound(preset.omega, preset.coupling, n_nodes,
                                   n_exc, mu);
    const std::string canonical = "crb|" + platform + "|case=" +
                                  std::to_string(case_value) + "|n=" +
                                  std::to_string(n_nodes) + "|exc=" +
                                  std::to_string(n_exc) + "|mu=" +
                                  std::to_string(mu);
    std::string csv = metadata_line(canonical);
    csv += "platform,case,n_nodes,n_exc,mu,variance_bound,delta_rms,"
           "variance_units,rms_units\n";
    csv += platform + "," + fmt_int(case_value) + "," + fmt_int(n_nodes) +
           "," + fmt_int(n_exc) + "," + fmt_int(mu) + "," +
           fmt(bound.variance_bound) + "," + fmt(bound.delta_rms) + ",";
    csv += case_id == CaseId::Case1 ? "m^2/s^4,m/s^2" : "Hz^2,Hz";
    csv += "\n";
    return csv;
}

std::string run_measure(const LoadedConfig& loaded, int case_value,
                        const std::vector<double>& refs) {
    const CaseId case_id = to_case(case_value);
    const PhaseSet phases = case_phases(loaded.config, case_id);
    if (static_cast<int>(refs.size()) != phases.n_nodes() - 1)
        throw DimensionMismatch(
            "--refs needs one value per node 2..N (" +
            std::to_string(phases.n_nodes() - 1) + " values), got " +
            std::to_string(refs.size()));
    Eigen::VectorXd reference =
        Eigen::Map<const Eigen::VectorXd>(refs.data(),
                                          static_cast<Eigen::Index>(refs.size()));
    const ProjectorSet basis =
        gram_schmidt_basis(phases.n_nodes(), phases.betas, reference);
    const Eigen::VectorXd probabilities = outcome_probabilities(
        basis, phase_encoded_state(phases.betas, phases.phis));
    const Eigen::MatrixXd classical = cfim(basis, phases).entries;
    const Eigen::MatrixXd gap = qfim_analytic(phases).entries - classical;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gap);

    std::string csv = metadata_line(loaded.bytes);
    csv += "quantity,i,j,value\n";
    for (Eigen::Index a = 0; a < probabilities.size(); ++a)
        csv += "probability," + fmt_int(a) + ",," + fmt(probabilities(a)) +
               "\n";
    append_matrix(csv, "cfim", classical);
    for (Eigen::Index idx = 0; idx < solver.eigenvalues().size(); ++idx)
        csv += "qfim_minus_cfim_eigenvalue," + fmt_int(idx) + ",," +
               fmt(solver.eigenvalues()(idx)) + "\n";
    return csv;
}

std::string run_sample(const LoadedConfig& loaded, int case_value, long mu,
                       int trials, std::uint64_t seed) {
    const CaseId case_id = to_case(case_value);
    const SaturationReport report =
        saturation_experiment(loaded.config, case_id, mu, trials, seed);
    std::string csv = metadata_line(loaded.bytes);
    csv += "field,index,value\n";
    csv += "mu,," + fmt_int(report.mu) + "\n";
    csv += "trials,," + fmt_int(report.trials) + "\n";
    csv += "seed,," + std::to_string(report.seed) + "\n";
    csv += "stage_split,," + fmt(report.stage_split) + "\n";
    csv += "bound_trace,," + fmt(report.bound_trace) + "\n";
    csv += "empirical_trace,," + fmt(report.empirical_trace) + "\n";
    csv += "ratio,," + fmt(report.ratio) + "\n";
    for (Eigen::Index j = 0; j < report.mean_bias.size(); ++j)
        csv += "mean_bias," + fmt_int(j + 2) + "," +
               fmt(report.mean_bias(j)) + "\n";
    return csv;
}

std::string factor_csv(const std::string& canonical, CaseId case_id) {
    std::string csv = metadata_line(canonical);
    csv += "n,n_exc,factor\n";
    for (const figures::FactorRow& row : figures::factor_sweep(case_id))
        csv += fmt_int(row.n) + "," + fmt_int(row.n_exc) + "," +
               fmt(row.factor) + "\n";
    return csv;
}

std::string bound_csv(const std::string& canonical,
                      const std::vector<figures::BoundRow>& rows) {
    std::string csv = metadata_line(canonical);
    csv += "n,n_exc,platform,variance_bound,delta_rms\n";
    for (const figures::BoundRow& row : rows)
        csv += fmt_int(row.n) + "," + fmt_int(row.n_exc) + "," +
               row.platform + "," + fmt(row.variance) + "," +
               fmt(row.delta_rms) + "\n";
    return csv;
}

std::string plot_script(int figure_number) {
    const std::string tag = "figure" + std::to_string(figure_number);
    std::string py;
    py += "#!/usr/bin/env python3\n";
    py += "\"\"\"Render " + tag +
          "a/b/c.csv (written by the strobe CLI) as a three-panel plot.\"\"\"\n";
    py += "import csv\n";
    py += "from collections import defaultdict\n";
    py += "import matplotlib.pyplot as plt\n";
    py += "\n";
    py += "def rows(name):\n";
    py += "    with open(name) as handle:\n";
    py += "        return list(csv.DictReader(\n";
    py += "            line for line in handle if not line.startswith('#')))\n";
    py += "\n";
    py += "fig, axes = plt.subplots(1, 3, figsize=(15, 4))\n";
    py += "factor = rows('" + tag + "a.csv')\n";
    py += "axes[0].tricontourf([int(r['n']) for r in factor],\n";
    py += "                    [int(r['n_exc']) for r in factor],\n";
    py += "                    [float(r['factor']) for r in factor], 30)\n";
    py += "axes[0].set(xlabel='N', ylabel='N_exc', title='resource factor')\n";
    py += "for panel, name in ((1, '" + tag + "b.csv'), (2, '" + tag +
          "c.csv')):\n";
    py += "    series = defaultdict(list)\n";
    py += "    for r in rows(name):\n";
    py += "        x = int(r['n']) if panel == 1 else int(r['n_exc'])\n";
    py += "        series[r['platform']].append((x, float(r['variance_bound'])))\n";
    py += "    for platform, points in sorted(series.items()):\n";
    py += "        points.sort()\n";
    py += "        axes[panel].plot([p[0] for p in points],\n";
    py += "                         [p[1] for p in points], label=platform)\n";
    py += "    axes[panel].set(yscale='log',\n";
    py += "                    xlabel='N' if panel == 1 else 'N_exc',\n";
    py += "                    ylabel='total variance bound')\n";
    py += "    axes[panel].legend()\n";
    py += "fig.tight_layout()\n";
    py += "fig.savefig('" + tag + ".png', dpi=160)\n";
    return py;
}

void run_figure(int figure_number, const std::string& out_dir,
                bool with_plot_script) {
    const CaseId case_id =
        figure_number == 2 ? CaseId::Case1 : CaseId::Case2;
    const std::string canonical = "figure" + std::to_string(figure_number) +
                                  "|mu=" + std::to_string(figures::kShots);
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    const std::string tag = "figure" + std::to_string(figure_number);
    emit_file(dir / (tag + "a.csv"), factor_csv(canonical, case_id));
    emit_file(dir / (tag + "b.csv"),
              bound_csv(canonical, figures::node_sweep(case_id)));
    emit_file(dir / (tag + "c.csv"),
              bound_csv(canonical, figures::excitation_sweep(case_id)));
    if (with_plot_script)
        emit_file(dir / (tag + "_plot.py"), plot_script(figure_number));
}

// The self-validation matrix: closed-form branch states against the
// truncated-Fock propagator for two driven heterogeneous networks, over a
// 16-point stroboscopic period, plus entanglement-entropy agreement and the
// mechanical return at tau = 2*pi.
std::string run_oracle_check(int fock_dim) {
    struct CheckCase {
        int n_nodes;
        std::vector<double> couplings;
        std::vector<double> drivings;
    };
    const std::vector<CheckCase> cases = {
        {2, {0.1, 0.2}, {0.05, 0.0}},
        {3, {0.1, 0.15, 0.2}, {0.05, 0.0, 0.02}},
    };
    constexpr double kFidelityFloor = 1.0 - 1e-8;
    constexpr double kEntropyTolerance = 1e-7;
    constexpr double kReturnFloor = 1.0 - 1e-8;

    std::string csv =
        metadata_line("oracle-check|fock_dim=" + std::to_string(fock_dim));
    csv += "n_nodes,tau,fidelity,entropy_closed,entropy_numeric,"
           "return_overlap\n";
    bool all_pass = true;
    for (const CheckCase& check : cases) {
        NetworkConfig config;
        config.n_nodes = check.n_nodes;
        config.lambda = 1.0;
        config.lambda_prime = 0.0;
        config.couplings = Eigen::Map<const Eigen::VectorXd>(
            check.couplings.data(),
            static_cast<Eigen::Index>(check.couplings.size()));
        config.drivings = Eigen::Map<const Eigen::VectorXd>(
            check.drivings.data(),
            static_cast<Eigen::Index>(check.drivings.size()));
        config.alpha = {1.0, 0.0};
        for (int i = 0; i <= 15; ++i) {
            const double tau = kTwoPi * double(i) / 15.0;
            const FockState numeric = evolve_numeric(config, fock_dim, tau);
            const double fid = fidelity(numeric, evolve(config, tau));
            const double closed = linear_entropy_closed(config, tau);
            const double fock_entropy = 1.0 - purity_numeric(numeric);
            const double return_overlap =
                i == 15 ? mode_return_overlap(numeric, config.alpha) : -1.0;
            csv += fmt_int(check.n_nodes) + "," + fmt(tau) + "," + fmt(fid) +
                   "," + fmt(closed) + "," + fmt(fock_entropy) + "," +
                   fmt(return_overlap) + "\n";
            if (fid < kFidelityFloor) all_pass = false;
            if (std::abs(closed - fock_entropy) > kEntropyTolerance)
                all_pass = false;
            if (i == 15 && return_overlap < kReturnFloor) all_pass = false;
        }
    }
    if (!all_pass)
        throw TruncationInsufficient(
            "oracle-check: closed form and truncated-Fock propagation "
            "disagree beyond tolerance (fidelity >= 1-1e-8, entropy within "
            "1e-7, return overlap >= 1-1e-8); see the emitted rows");
    csv += "# oracle-check: PASS\n";
    return csv;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "strobe — stroboscopic distributed-sensing toolkit.\n"
        "Exact branch-state dynamics, entanglement tracking, Fisher\n"
        "information, SI precision bounds, and Monte Carlo bound-saturation\n"
        "checks. Every CSV starts with a metadata comment (version, input\n"
        "hash, hbar, frequency interpretation) followed by a header row;\n"
        "identical invocations produce byte-identical output. All\n"
        "computation is single-threaded and deterministic."};
    app.require_subcommand(1);

    std::string config_path;
    double tau = 0.0;
    std::string grid_spec;
    int case_value = 1;
    bool numeric = false;
    long mu = 10000;
    std::string platform;
    int n_nodes = 2;
    int n_exc = 1;
    std::vector<double> refs;
    int trials = 100;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    bool with_plot_script = false;
    int fock_dim = 30;

    std::string output;

    CLI::App* state = app.add_subcommand(
        "state", "Branch coefficients and coherent amplitudes at time tau "
                 "(CSV: quantity,branch,mode,value_re,value_im)");
    state->add_option("--config", config_path, "network config file")
        ->required();
    state->add_option("--tau", tau, "dimensionless time Omega*t")->required();
    state->callback([&] { output = run_state(slurp_config(config_path), tau); });

    CLI::App* entropy = app.add_subcommand(
        "entropy", "Probe-mechanics linear entropy over a tau grid "
                   "(CSV: tau,entropy_closed,entropy_gram)");
    entropy->add_option("--config", config_path, "network config file")
        ->required();
    entropy
        ->add_option("--tau-grid", grid_spec,
                     "START:STOP:STEP grid of tau values")
        ->required();
    entropy->callback(
        [&] { output = run_entropy(slurp_config(config_path), grid_spec); });

    CLI::App* qfim = app.add_subcommand(
        "qfim", "Quantum Fisher information matrix, its closed-form inverse, "
                "the scalar bound Tr[Q^-1], and per-parameter variance bounds "
                "(CSV: quantity,i,j,value; i,j are node labels 2..N)");
    qfim->add_option("--config", config_path, "network config file")
        ->required();
    qfim->add_option("--case", case_value, "sensing scenario: 1 or 2")
        ->required();
    qfim->add_flag("--numeric", numeric,
                   "use the finite-difference matrix instead of the closed "
                   "form (per-parameter bounds stay closed-form)");
    qfim->add_option("--mu", mu, "shot budget for the variance bounds")
        ->default_val(10000);
    qfim->callback([&] {
        output = run_qfim(slurp_config(config_path), case_value, numeric, mu);
    });

    CLI::App* crb = app.add_subcommand(
        "crb", "SI-unit precision floor for a device preset "
               "(CSV: one row with variance bound and delta_rms)");
    crb->add_option("--platform", platform,
                    "preset name: fabry-perot, levitated, cold-atoms, "
                    "spin-mechanical")
        ->required();
    crb->add_option("--case", case_value, "sensing scenario: 1 or 2")
        ->required();
    crb->add_option("--n-nodes", n_nodes, "network size N >= 2")->required();
    crb->add_option("--n-exc", n_exc, "initial probe excitations")->required();
    crb->add_option("--mu", mu, "shot budget")->default_val(10000);
    crb->callback([&] {
        output = run_crb(platform, case_value, n_nodes, n_exc, mu);
    });

    CLI::App* measure = app.add_subcommand(
        "measure", "Outcome probabilities, classical Fisher matrix, and "
                   "QFIM-CFIM gap eigenvalues of the optimal basis built at "
                   "the given reference phases (CSV: quantity,i,j,value)");
    measure->add_option("--config", config_path, "network config file")
        ->required();
    measure->add_option("--case", case_value, "sensing scenario: 1 or 2")
        ->required();
    measure
        ->add_option("--refs", refs,
                     "reference phases vartheta_2..vartheta_N (N-1 values)")
        ->required()
        ->expected(-1);
    measure->callback([&] {
        output = run_measure(slurp_config(config_path), case_value, refs);
    });

    CLI::App* sample = app.add_subcommand(
        "sample", "Two-stage adaptive Monte Carlo saturation report "
                  "(CSV: field,index,value)");
    sample->add_option("--config", config_path, "network config file")
        ->required();
    sample->add_option("--case", case_value, "sensing scenario: 1 or 2")
        ->required();
    sample->add_option("--mu", mu, "shots per trial (>= 1000)")->required();
    sample->add_option("--trials", trials, "Monte Carlo trials (>= 100)")
        ->required();
    sample->add_option("--seed", seed, "base RNG seed")->required();
    sample->callback([&] {
        output = run_sample(slurp_config(config_path), case_value, mu, trials,
                            seed);
    });

    CLI::App* figure2 = app.add_subcommand(
        "figure2", "Write the gravimetry sweep tables figure2a/b/c.csv "
                   "(resource factor, N-sweep, N_exc-sweep; mu = 10^4)");
    figure2->add_option("--out-dir", out_dir, "output directory")
        ->default_val(".");
    figure2->add_flag("--plot-script", with_plot_script,
                      "also write figure2_plot.py");
    figure2->callback([&] { run_figure(2, out_dir, with_plot_script); });

    CLI::App* figure3 = app.add_subcommand(
        "figure3", "Write the coupling-estimation sweep tables "
                   "figure3a/b/c.csv (resource factor, N-sweep, N_exc-sweep; "
                   "mu = 10^4)");
    figure3->add_option("--out-dir", out_dir, "output directory")
        ->default_val(".");
    figure3->add_flag("--plot-script", with_plot_script,
                      "also write figure3_plot.py");
    figure3->callback([&] { run_figure(3, out_dir, with_plot_script); });

    CLI::App* oracle_check = app.add_subcommand(
        "oracle-check", "Validate closed-form dynamics against truncated-Fock "
                        "propagation for N in {2,3} over a stroboscopic "
                        "period; nonzero exit on any tolerance failure");
    oracle_check
        ->add_option("--fock-dim", fock_dim,
                     "Fock levels per mode (default 30)")
        ->default_val(30);
    oracle_check->callback([&] { output = run_oracle_check(fock_dim); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const CaseConditionViolated& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const SingularBeta& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const StepTooSmall& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const TruncationInsufficient& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const NotConverged& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const AmbiguousLikelihood& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    if (!output.empty()) emit_stdout(output);
    return 0;
}
