// Command-line runner: search trajectories, figure data, validation and
// physics reports. Exit codes: 0 success, 1 failed checks, 2 usage error.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "ionpair/engine.hpp"
#include "ionpair/oracle.hpp"
#include "ionpair/physics.hpp"
#include "ionpair/trajectory_io.hpp"
#include "ionpair/validation.hpp"

using namespace ionpair;
namespace phys = ionpair::physics;

namespace {

struct SearchOptions {
    int q = 2;
    std::string marked;
    std::uint64_t marked_index = 0;  // 1-based; 1 labels the all-ones state
    int iters = 18;
    std::string scheme = "paper";
    std::string out;
    std::string format = "csv";
};

struct PhysicsOptions {
    double omega = 0.05;
    double eta = 0.05;
    double delta = 0.95;
    int fock_cutoff = phys::kDefaultFockCutoff;
    double tol = phys::kDefaultOdeTol;
    std::uint64_t seed = 12345;
    std::string format = "csv";
};

TargetIndex resolve_marked(const SearchOptions& opts) {
    if (!opts.marked.empty()) {
        if (static_cast<int>(opts.marked.size()) != opts.q)
            throw CLI::ValidationError("--marked", "bitstring length must equal --q");
        return TargetIndex::from_bitstring(opts.marked);
    }
    if (opts.marked_index > 0) return TargetIndex::from_one_based(opts.q, opts.marked_index);
    return TargetIndex::from_one_based(opts.q, 1);  // default: all-ones state
}

Trajectory run_scheme(const std::string& scheme, int q, const TargetIndex& marked, int iters) {
    if (scheme == "standard") return oracle::standard_grover_run(q, marked, iters);
    return run_search(q, marked, iters);
}

void write_to(const std::string& path, const Trajectory& traj, const std::string& scheme,
              const std::string& format) {
    const auto emit = [&](std::ostream& out) {
        if (format == "json")
            write_trajectory_json(out, traj, scheme);
        else
            write_trajectory_csv(out, traj, scheme);
    };
    if (path.empty()) {
        emit(std::cout);
        return;
    }
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    emit(file);
    if (!file.good()) throw std::runtime_error("write failed for '" + path + "'");
}

void print_report(std::ostream& out, const Trajectory& traj) {
    const SearchReport r = search_report(traj);
    out << "peak: P(" << traj.marked.bitstring() << ") = " << r.peak_probability
        << " at iteration " << r.peak_iteration << "\n";
    out << "co-maximal states at the peak:";
    for (std::uint64_t b : r.comaximal) {
        std::string bits(static_cast<std::size_t>(traj.qubits), '0');
        for (int k = 0; k < traj.qubits; ++k)
            if (b >> (traj.qubits - 1 - k) & 1) bits[static_cast<std::size_t>(k)] = '1';
        out << ' ' << bits;
    }
    out << "\n";
    if (r.recurrence)
        out << "recurrence period: " << *r.recurrence << "\n";
    else
        out << "recurrence period: none within the recorded window\n";
    out << "optimal iteration estimate for one solution: "
        << optimal_iterations(std::uint64_t{1} << traj.qubits, 1) << "\n";
}

int cmd_search(const SearchOptions& opts) {
    const TargetIndex marked = resolve_marked(opts);
    const Trajectory traj = run_scheme(opts.scheme, opts.q, marked, opts.iters);
    write_to(opts.out, traj, opts.scheme, opts.format);
    print_report(opts.out.empty() ? std::cerr : std::cout, traj);
    return 0;
}

int cmd_figures(const std::string& out_dir, const std::string& format) {
    const std::string names[3] = {"fig1", "fig2", "fig3"};
    for (int k = 0; k < 3; ++k) {
        const int q = 3 + k;
        const Trajectory traj = run_search(q, TargetIndex::from_one_based(q, 1), 18);
        const std::string base = out_dir + "/" + names[k];
        write_to(base + ".csv", traj, "paper", "csv");
        if (format == "json") write_to(base + ".json", traj, "paper", "json");
        std::cout << base << ".csv: q = " << q << ", marked " << traj.marked.bitstring()
                  << ", " << traj.records.size() << " iterations recorded\n";
    }
    return 0;
}

int cmd_validate(const ValidationOptions& opts) {
    int failures = 0;
    for (const CheckResult& r : run_validation_checks(opts)) {
        std::printf("[%s] %-55s measured %.3e vs %.1e %s\n", r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.measured, r.threshold,
                    r.detail.empty() ? "" : ("(" + r.detail + ")").c_str());
        if (!r.passed) ++failures;
    }
    std::printf("%d check(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}

int cmd_physics(const PhysicsOptions& opts) {
    phys::PulseParams p{opts.omega, opts.eta, 1.0, opts.delta};
    p.validate();

    std::printf("pulse parameters: omega = %g, eta = %g, nu = 1, delta = %g\n", p.rabi,
                p.lamb_dicke, p.detuning);
    if (p.regime_violated())
        std::printf("warning: nu - delta <= eta * omega; the perturbative picture is invalid\n");
    if (p.lamb_dicke_marginal())
        std::printf("warning: eta > 0.1 stretches the Lamb-Dicke expansion\n");

    const double formula = phys::effective_rabi(p);
    std::printf("effective Rabi frequency (formula): %.6e\n", formula);
    std::printf("pulse duration for theta = 7pi/4: %.6e\n",
                phys::pulse_duration_for(p, Angle{7.0 * std::numbers::pi / 4.0}));

    std::printf("fit table (start |ge,n>, fit of P(|eg,n>) to sin^2(w t / 2)):\n");
    std::printf("  %3s  %14s  %14s  %9s  %9s\n", "n", "fitted", "formula", "rel err", "residual");
    double fit0 = 0.0;
    phys::SampledPopulations run0;
    for (int n : {0, 2}) {
        const phys::RabiFit fit = phys::extract_effective_rabi(p, n, opts.fock_cutoff, opts.tol);
        std::printf("  %3d  %14.6e  %14.6e  %8.3f%%  %9.2e%s\n", n, fit.fitted, fit.formula,
                    100.0 * std::abs(fit.fitted - fit.formula) / std::abs(fit.formula),
                    fit.residual_rms, fit.regime_ok ? "" : "  [regime violation]");
        if (n == 0) fit0 = fit.fitted;
    }

    // effective-propagator vs full-dynamics comparison over one period
    {
        const double window = 2.0 * std::numbers::pi / std::abs(formula);
        const phys::SampledPopulations run = phys::sample_population(
            p, phys::FullSystemState(opts.fock_cutoff, phys::PairState::kGE, 0),
            phys::PairState::kEG, 0, window, 200, opts.tol);
        double worst = 0.0;
        for (std::size_t k = 0; k <= 100; ++k) {  // up to the transfer time pi/|w|
            const double s = std::sin(0.5 * std::abs(formula) * run.times[k]);
            worst = std::max(worst, std::abs(run.population[k] - s * s));
        }
        std::printf("effective vs full dynamics: max |P - sin^2| = %.3e up to t = pi/|w|\n", worst);
        std::printf("population at t = pi/|w|: %.6f\n", run.population[100]);
    }

    // dephasing invariance, Monte-Carlo over collective phase kicks
    {
        std::mt19937 rng(opts.seed);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        phys::PairState s;
        for (int j = 0; j < 4; ++j) s.amp[j] = 0.5;
        cplx logical{}, coherence{};
        constexpr int kDraws = 10000;
        for (int k = 0; k < kDraws; ++k) {
            const phys::PairState d = phys::collective_dephase(s, Angle{angle(rng)});
            logical += std::conj(d.amp[phys::PairState::kGE]) * d.amp[phys::PairState::kEG] /
                       double(kDraws);
            coherence += std::conj(d.amp[phys::PairState::kEE]) * d.amp[phys::PairState::kGG] /
                         double(kDraws);
        }
        std::printf("dephasing channel (seed %llu, %d draws): logical coherence %.6f, "
                    "gg/ee coherence %.2e\n",
                    static_cast<unsigned long long>(opts.seed), kDraws, std::abs(logical),
                    std::abs(coherence));
    }

    // cutoff convergence at a probe window
    {
        const double probe = std::min(5000.0, 0.1 * std::numbers::pi / std::abs(formula));
        int cutoff = opts.fock_cutoff;
        double change = phys::cutoff_convergence(p, phys::PairState::kGE, 0, cutoff, probe, opts.tol);
        while (change >= 1e-6 && cutoff < 128) {
            cutoff *= 2;
            change = phys::cutoff_convergence(p, phys::PairState::kGE, 0, cutoff, probe, opts.tol);
        }
        std::printf("cutoff convergence: doubling %d changes final amplitudes by %.2e\n", cutoff,
                    change);
    }
    (void)fit0;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ion-pair encoded search simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value configuration file; flags win");

    SearchOptions s;
    CLI::App* search = app.add_subcommand("search", "run one search and emit its trajectory");
    search->add_option("--q", s.q, "qubit count")->check(CLI::Range(2, 20));
    search->add_option("--marked", s.marked, "marked state as a bitstring, first pair first");
    search->add_option("--marked-index", s.marked_index,
                       "1-based label counting down from the all-ones state");
    search->add_option("--iters", s.iters, "search iterations")->check(CLI::Range(0, 10000));
    search->add_option("--scheme", s.scheme)->check(CLI::IsMember({"paper", "standard"}));
    search->add_option("--out", s.out, "output path (default: stdout)");
    search->add_option("--format", s.format)->check(CLI::IsMember({"csv", "json"}));

    std::string fig_dir = ".";
    std::string fig_format = "csv";
    CLI::App* figures =
        app.add_subcommand("figures", "write the q = 3, 4, 5 all-ones trajectories");
    figures->add_option("--out", fig_dir, "output directory");
    figures->add_option("--format", fig_format, "csv, or json for an extra mirror")
        ->check(CLI::IsMember({"csv", "json"}));

    ValidationOptions v;
    CLI::App* validate = app.add_subcommand("validate", "run the self-check suite");
    validate->add_option("--qmin", v.q_min)->check(CLI::Range(2, 10));
    validate->add_option("--qmax", v.q_max)->check(CLI::Range(2, 10));
    validate->add_option("--tol", v.tol, "oracle-equivalence tolerance");
    validate->add_flag("--inject-fault", v.inject_fault,
                       "corrupt one inversion sign (harness self-test; must fail)");

    PhysicsOptions ph;
    CLI::App* physics = app.add_subcommand("physics", "drive-level validation report");
    physics->add_option("--omega", ph.omega, "summed two-tone Rabi frequency, units of nu");
    physics->add_option("--eta", ph.eta, "Lamb-Dicke parameter");
    physics->add_option("--delta", ph.delta, "laser detuning, units of nu");
    physics->add_option("--fock-cutoff", ph.fock_cutoff)->check(CLI::Range(2, 128));
    physics->add_option("--tol", ph.tol, "integrator local tolerance");
    physics->add_option("--seed", ph.seed, "seed for the dephasing average");

    try {
        app.parse(argc, argv);
        if (*search) return cmd_search(s);
        if (*figures) return cmd_figures(fig_dir, fig_format);
        if (*validate) return cmd_validate(v);
        if (*physics) return cmd_physics(ph);
        return 2;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
