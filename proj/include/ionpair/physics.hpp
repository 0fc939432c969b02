#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ionpair/angle.hpp"
#include "ionpair/matrix.hpp"

namespace ionpair::physics {

// Units: trap frequency nu == 1; every frequency is a multiple of nu and
// every time a multiple of 1/nu.

inline constexpr int kDefaultFockCutoff = 15;   // highest phonon number kept
inline constexpr double kLeakageThreshold = 1e-6;
inline constexpr double kDefaultOdeTol = 1e-10;

/// Drive parameters of the bichromatic field (tones at +/- detuning around
/// the internal transition).
struct PulseParams {
    double rabi = 0.05;        // Omega, summed two-tone Rabi frequency
    double lamb_dicke = 0.05;  // eta
    double trap = 1.0;         // nu
    double detuning = 0.95;    // delta

    // Throws unless eta <= 0.2, Omega < nu and nu - delta > 0.
    void validate() const;

    bool lamb_dicke_marginal() const { return lamb_dicke > 0.1; }
    // Perturbative validity needs nu - delta >> eta * Omega.
    bool regime_violated() const { return trap - detuning <= lamb_dicke * rabi; }
};

/// -(Omega*eta)^2 / (2 (nu - delta)); negative for delta < nu.
/// Throws on nu == delta (resonant with the sideband).
double effective_rabi(const PulseParams& p);

/// T = 2 theta / |effective_rabi|. The realized rotation angle of a pulse of
/// duration T is |effective_rabi| * T / 2 reduced mod 2*pi; the sign of the
/// effective Rabi frequency only conjugates the rotation and is not
/// observable in populations.
double pulse_duration_for(const PulseParams& p, Angle theta);
Angle realized_rotation(const PulseParams& p, double duration);

/// Two-ion internal state, amplitudes over {|gg>, |ge>, |eg>, |ee>}.
/// Logical encoding: |0> = |eg>, |1> = |ge>.
struct PairState {
    std::array<cplx, 4> amp{};

    static constexpr int kGG = 0, kGE = 1, kEG = 2, kEE = 3;

    static PairState logical(cplx zero_amp, cplx one_amp);

    double logical_population() const;
    double norm_squared() const;
};

/// Effective drive propagator: rotation_x(theta) on span{|gg>,|ee>} and the
/// same rotation on span{|eg>,|ge>} (both pairs of levels are resonantly
/// coupled by the two-photon process).
CMatrix effective_pair_propagator(Angle theta);

/// Multiplies each component by exp(-i E t) with E the summed single-ion
/// energies. The logical subspace is degenerate, so it only picks up a
/// global phase.
PairState free_evolution(const PairState& s, double t, double energy_e, double energy_g);

/// Phase kick exp(i phi) on the |e> level of both ions: |gg> unchanged,
/// |ge>, |eg> get e^{i phi}, |ee> gets e^{2 i phi}.
PairState collective_dephase(const PairState& s, Angle phi);

/// |<a_L|b_L>|^2 / (|a_L|^2 |b_L|^2) on the logical span{|eg>,|ge>}.
/// Throws undefined_fidelity when either projection vanishes.
double logical_fidelity(const PairState& a, const PairState& b);

struct undefined_fidelity : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct cutoff_too_small : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct integrator_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two-ion internal states tensor a truncated phonon ladder.
/// Layout: amp[block * levels + n], blocks ordered gg, ge, eg, ee.
struct FullSystemState {
    int fock_levels;  // cutoff + 1
    std::vector<cplx> amp;

    FullSystemState(int fock_cutoff, int internal_block, int phonon);

    int cutoff() const { return fock_levels - 1; }
    double population(int internal_block, int phonon) const;
    double block_population(int internal_block) const;
    double top_layer_population() const;
    double norm_squared() const;
};

/// Interaction-picture bichromatic Hamiltonian at time t, materialized on the
/// truncated space (dimension 4 * (cutoff+1)):
///   H(t) = sum_j c * sigma+_j * exp[i eta (a e^{-i nu t} + a^dag e^{i nu t})]
///              * (e^{-i delta t} + e^{i delta t})  + h.c.
/// The Lamb-Dicke exponential is evaluated exactly on the truncated ladder,
/// not expanded in eta. The drive amplitude Omega is shared between the two
/// tones, so each couples at c = Omega / (2 sqrt(2)); under this split the
/// logical block realizes rotation_x(effective_rabi * t / 2).
CMatrix bichromatic_hamiltonian(const PulseParams& p, double t, int fock_cutoff);

/// H(t) |psi>, computed by the same fused kernel the integrator uses.
FullSystemState apply_hamiltonian(const PulseParams& p, double t, const FullSystemState& psi);

struct IntegrationStats {
    long steps = 0;
    long rejected = 0;
    double norm_drift = 0.0;
    double max_top_layer = 0.0;
};

/// Integrates i dpsi/dt = H(t) psi from 0 to duration with an adaptive
/// embedded Runge-Kutta 5(4) scheme at local tolerance tol. Throws
/// cutoff_too_small if the top phonon layer ever exceeds the leakage
/// threshold, integrator_failure if the step size underflows or the norm
/// drifts beyond 10 * tol * steps.
FullSystemState simulate_full(const PulseParams& p, const FullSystemState& initial,
                              double duration, double tol = kDefaultOdeTol,
                              IntegrationStats* stats = nullptr);

/// One population record per sample time (used by the fit and the CLI).
struct SampledPopulations {
    std::vector<double> times;
    std::vector<double> population;  // of the requested (block, phonon) level
};

SampledPopulations sample_population(const PulseParams& p, const FullSystemState& initial,
                                     int internal_block, int phonon, double duration,
                                     int samples, double tol = kDefaultOdeTol);

struct RabiFit {
    double fitted;        // signed like the formula value
    double formula;
    double residual_rms;  // rms of P - sin^2(fit * t / 2) over the window
    bool regime_ok;       // params in regime and residual <= 5%
};

/// Least-squares fit of sin^2(omega t / 2) to sampled populations; the search
/// is seeded with |seed_omega| and the returned sign copies the seed's.
RabiFit fit_rabi_frequency(const SampledPopulations& run, double seed_omega);

/// Starts from |ge, n>, samples P(|eg, n>) over one full effective period
/// (200 samples) and least-squares fits sin^2(omega t / 2). Requires
/// n <= cutoff - 3.
RabiFit extract_effective_rabi(const PulseParams& p, int phonon,
                               int fock_cutoff = kDefaultFockCutoff,
                               double tol = kDefaultOdeTol);

/// Max absolute change of any final amplitude when the cutoff is doubled.
double cutoff_convergence(const PulseParams& p, int internal_block, int phonon,
                          int fock_cutoff, double duration, double tol = kDefaultOdeTol);

}  // namespace ionpair::physics
