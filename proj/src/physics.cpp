#include "ionpair/physics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ionpair::physics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(i eta (a + a^dag)) on the truncated ladder via scaled Taylor series.
// The truncated generator is hermitian, so the result is exactly unitary on
// the kept levels.
std::vector<cplx> displacement_exponential(double eta, int levels) {
    const int n = levels;
    std::vector<double> x(static_cast<std::size_t>(n) * n, 0.0);
    double norm1 = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
        const double v = eta * std::sqrt(static_cast<double>(k + 1));
        x[static_cast<std::size_t>(k) * n + k + 1] = v;
        x[static_cast<std::size_t>(k + 1) * n + k] = v;
        norm1 = std::max(norm1, 2.0 * std::abs(v));
    }
    int squarings = 0;
    while (norm1 > 1.0) {
        norm1 *= 0.5;
        ++squarings;
    }
    const double scale = std::ldexp(1.0, -squarings);

    std::vector<cplx> acc(static_cast<std::size_t>(n) * n), term(acc.size()), tmp(acc.size());
    for (int j = 0; j < n; ++j) acc[static_cast<std::size_t>(j) * n + j] = term[static_cast<std::size_t>(j) * n + j] = 1.0;
    for (int k = 1; k <= 60; ++k) {
        const cplx f = kI * scale / static_cast<double>(k);
        double mx = 0.0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                cplx s{};
                for (int m = std::max(0, c - 1); m <= std::min(n - 1, c + 1); ++m)
                    s += term[static_cast<std::size_t>(r) * n + m] * x[static_cast<std::size_t>(m) * n + c];
                s *= f;
                tmp[static_cast<std::size_t>(r) * n + c] = s;
                mx = std::max(mx, std::abs(s));
            }
        term.swap(tmp);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
        if (mx < 1e-22) break;
    }
    for (int s = 0; s < squarings; ++s) {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                cplx v{};
                for (int m = 0; m < n; ++m)
                    v += acc[static_cast<std::size_t>(r) * n + m] * acc[static_cast<std::size_t>(m) * n + c];
                tmp[static_cast<std::size_t>(r) * n + c] = v;
            }
        acc.swap(tmp);
    }
    return acc;
}

// Precomputed drive data; applies H(t) without materializing it. The time
// dependence of the Lamb-Dicke exponential is a Fock-space phase conjugation:
// G(t) = P(t) E0 P(t)^dag with P(t) = diag(e^{i nu t n}).
class DriveModel {
public:
    DriveModel(const PulseParams& p, int fock_cutoff) : p_(p), nf_(fock_cutoff + 1) {
        if (fock_cutoff < 2) throw std::invalid_argument("fock cutoff must be at least 2");
        p.validate();
        e0_ = displacement_exponential(p.lamb_dicke, nf_);
        e0d_.resize(e0_.size());
        for (int r = 0; r < nf_; ++r)
            for (int c = 0; c < nf_; ++c)
                e0d_[static_cast<std::size_t>(r) * nf_ + c] =
                    std::conj(e0_[static_cast<std::size_t>(c) * nf_ + r]);
        phases_.resize(static_cast<std::size_t>(nf_));
        scratch_.resize(4 * static_cast<std::size_t>(nf_));
    }

    int fock_levels() const { return nf_; }
    const std::vector<cplx>& lamb_dicke_exponential() const { return e0_; }

    // The drive amplitude Omega is shared between the two tones: each couples
    // at Omega/(2 sqrt 2), so the summed envelope is (Omega/sqrt 2) cos(delta t).
    double envelope(double t) const {
        return p_.rabi / std::numbers::sqrt2 * std::cos(p_.detuning * t);
    }

    // out = -i H(t) in; blocks ordered gg, ge, eg, ee.
    void schrodinger_rhs(double t, const cplx* in, cplx* out) const {
        const int nf = nf_;
        const cplx* gg = in;
        const cplx* ge = in + nf;
        const cplx* eg = in + 2 * nf;
        const cplx* ee = in + 3 * nf;
        const double amp = envelope(t);

        const cplx ph = std::exp(cplx{0.0, p_.trap * t});
        phases_[0] = 1.0;
        for (int n = 1; n < nf; ++n) phases_[static_cast<std::size_t>(n)] = phases_[static_cast<std::size_t>(n - 1)] * ph;

        // x~ = P(t)^dag x, then F x = amp * P(t) (E0 x~); same with E0^dag.
        cplx* xa = scratch_.data();            // P^dag gg
        cplx* xb = scratch_.data() + nf;       // P^dag (ge + eg)
        cplx* ya = scratch_.data() + 2 * nf;   // F gg
        cplx* yb = scratch_.data() + 3 * nf;   // used twice below
        for (int n = 0; n < nf; ++n) {
            const cplx c = std::conj(phases_[static_cast<std::size_t>(n)]);
            xa[n] = c * gg[n];
            xb[n] = c * (ge[n] + eg[n]);
        }
        cplx* ogg = out;
        cplx* oge = out + nf;
        cplx* oeg = out + 2 * nf;
        cplx* oee = out + 3 * nf;
        for (int m = 0; m < nf; ++m) {
            const cplx* re = &e0_[static_cast<std::size_t>(m) * nf];
            const cplx* rd = &e0d_[static_cast<std::size_t>(m) * nf];
            cplx fa{}, fb{}, gb{};
            for (int n = 0; n < nf; ++n) {
                fa += re[n] * xa[n];  // E0 (P^dag gg)
                fb += re[n] * xb[n];  // E0 (P^dag (ge+eg))
                gb += rd[n] * xb[n];  // E0^dag (P^dag (ge+eg))
            }
            const cplx f = amp * phases_[static_cast<std::size_t>(m)];
            ya[m] = f * fa;
            yb[m] = f * gb;
            oee[m] = f * fb;  // F (ge+eg), rotated below
        }
        // second adjoint product: E0^dag (P^dag ee)
        for (int n = 0; n < nf; ++n)
            xa[n] = std::conj(phases_[static_cast<std::size_t>(n)]) * ee[n];
        for (int m = 0; m < nf; ++m) {
            const cplx* rd = &e0d_[static_cast<std::size_t>(m) * nf];
            cplx fd{};
            for (int n = 0; n < nf; ++n) fd += rd[n] * xa[n];
            const cplx f = amp * phases_[static_cast<std::size_t>(m)];
            const cplx fdagee = f * fd;
            const cplx fgg = ya[m];
            ogg[m] = -kI * yb[m];             // F^dag (ge + eg)
            oge[m] = -kI * (fgg + fdagee);    // F gg + F^dag ee
            oeg[m] = -kI * (fgg + fdagee);
            oee[m] = -kI * oee[m];            // F (ge + eg)
        }
    }

private:
    PulseParams p_;
    int nf_;
    std::vector<cplx> e0_, e0d_;
    mutable std::vector<cplx> phases_;
    mutable std::vector<cplx> scratch_;
};

// Embedded Dormand-Prince 5(4) with a standard proportional step controller.
class AdaptiveRK {
public:
    AdaptiveRK(const DriveModel& model, double tol)
        : model_(model), tol_(tol), dim_(4 * static_cast<std::size_t>(model.fock_levels())) {
        for (auto* v : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &ytmp_, &y5_}) v->resize(dim_);
    }

    IntegrationStats& stats() { return stats_; }

    void advance(std::vector<cplx>& psi, double t0, double t1) {
        if (t1 <= t0) return;
        double t = t0;
        double h = std::min(0.05, t1 - t0);
        model_.schrodinger_rhs(t, psi.data(), k1_.data());
        long limit = 100'000'000;
        while (t < t1) {
            if (--limit < 0) throw integrator_failure("step budget exhausted");
            const bool clipped = t + h >= t1;
            if (clipped) h = t1 - t;
            step(psi, t, h);
            double enorm = error_norm(h);
            if (enorm <= 1.0) {
                t = clipped ? t1 : t + h;
                psi.swap(y5_);
                k1_.swap(k7_);
                ++stats_.steps;
                check_leakage(psi);
            } else {
                ++stats_.rejected;
            }
            const double fac = 0.9 * std::pow(enorm > 1e-14 ? 1.0 / enorm : 1e14, 0.2);
            h *= std::clamp(fac, 0.2, 5.0);
            if (h < 1e-12 && t1 - t > 1e-10) throw integrator_failure("step size underflow");
        }
    }

    void check_norm_drift(const std::vector<cplx>& psi) {
        double n2 = 0.0;
        for (const cplx& a : psi) n2 += std::norm(a);
        stats_.norm_drift = std::abs(std::sqrt(n2) - 1.0);
        const double bound = 10.0 * tol_ * static_cast<double>(std::max<long>(stats_.steps, 1));
        if (stats_.norm_drift > bound) throw integrator_failure("norm drift exceeds contract");
    }

private:
    void step(const std::vector<cplx>& y, double t, double h) {
        auto stage = [&](std::vector<cplx>& k, double c,
                         std::initializer_list<std::pair<const std::vector<cplx>*, double>> terms) {
            for (std::size_t i = 0; i < dim_; ++i) {
                cplx s = y[i];
                for (const auto& [kv, a] : terms) s += h * a * (*kv)[i];
                ytmp_[i] = s;
            }
            model_.schrodinger_rhs(t + c * h, ytmp_.data(), k.data());
        };
        stage(k2_, 1.0 / 5, {{&k1_, 1.0 / 5}});
        stage(k3_, 3.0 / 10, {{&k1_, 3.0 / 40}, {&k2_, 9.0 / 40}});
        stage(k4_, 4.0 / 5, {{&k1_, 44.0 / 45}, {&k2_, -56.0 / 15}, {&k3_, 32.0 / 9}});
        stage(k5_, 8.0 / 9,
              {{&k1_, 19372.0 / 6561}, {&k2_, -25360.0 / 2187}, {&k3_, 64448.0 / 6561}, {&k4_, -212.0 / 729}});
        stage(k6_, 1.0,
              {{&k1_, 9017.0 / 3168}, {&k2_, -355.0 / 33}, {&k3_, 46732.0 / 5247}, {&k4_, 49.0 / 176}, {&k5_, -5103.0 / 18656}});
        for (std::size_t i = 0; i < dim_; ++i)
            y5_[i] = y[i] + h * (35.0 / 384 * k1_[i] + 500.0 / 1113 * k3_[i] + 125.0 / 192 * k4_[i] -
                                 2187.0 / 6784 * k5_[i] + 11.0 / 84 * k6_[i]);
        model_.schrodinger_rhs(t + h, y5_.data(), k7_.data());
    }

    double error_norm(double h) {
        double e2 = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            const cplx e = h * ((35.0 / 384 - 5179.0 / 57600) * k1_[i] +
                                (500.0 / 1113 - 7571.0 / 16695) * k3_[i] +
                                (125.0 / 192 - 393.0 / 640) * k4_[i] +
                                (-2187.0 / 6784 + 92097.0 / 339200) * k5_[i] +
                                (11.0 / 84 - 187.0 / 2100) * k6_[i] - 1.0 / 40 * k7_[i]);
            e2 += std::norm(e);
        }
        return std::sqrt(e2) / tol_;
    }

    void check_leakage(const std::vector<cplx>& psi) {
        const int nf = model_.fock_levels();
        double top = 0.0;
        for (int b = 0; b < 4; ++b) top += std::norm(psi[static_cast<std::size_t>(b) * nf + nf - 1]);
        stats_.max_top_layer = std::max(stats_.max_top_layer, top);
        if (top > kLeakageThreshold)
            throw cutoff_too_small("top phonon layer population exceeds the leakage threshold");
    }

    const DriveModel& model_;
    double tol_;
    std::size_t dim_;
    IntegrationStats stats_;
    std::vector<cplx> k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_, y5_;
};

}  // namespace

void PulseParams::validate() const {
    if (!(trap > 0.0)) throw std::invalid_argument("trap frequency must be positive");
    if (!(lamb_dicke >= 0.0) || lamb_dicke > 0.2)
        throw std::invalid_argument("Lamb-Dicke parameter must be in [0, 0.2]");
    if (!(rabi >= 0.0) || rabi >= trap)
        throw std::invalid_argument("weak excitation requires Omega < nu");
    if (!(trap - detuning > 0.0)) throw std::invalid_argument("detuning must satisfy delta < nu");
}

double effective_rabi(const PulseParams& p) {
    if (p.trap == p.detuning)
        throw std::invalid_argument("effective_rabi: resonant with the sideband (nu == delta)");
    const double g = p.rabi * p.lamb_dicke;
    return -g * g / (2.0 * (p.trap - p.detuning));
}

double pulse_duration_for(const PulseParams& p, Angle theta) {
    const double f = effective_rabi(p);
    if (f == 0.0) throw std::invalid_argument("pulse_duration_for: zero effective Rabi frequency");
    return 2.0 * theta.radians() / std::abs(f);
}

Angle realized_rotation(const PulseParams& p, double duration) {
    return Angle{std::abs(effective_rabi(p)) * duration / 2.0};
}

PairState PairState::logical(cplx zero_amp, cplx one_amp) {
    PairState s;
    s.amp[kEG] = zero_amp;
    s.amp[kGE] = one_amp;
    return s;
}

double PairState::logical_population() const { return std::norm(amp[kEG]) + std::norm(amp[kGE]); }

double PairState::norm_squared() const {
    double n = 0.0;
    for (const cplx& a : amp) n += std::norm(a);
    return n;
}

CMatrix effective_pair_propagator(Angle theta) {
    const double c = std::cos(theta.radians());
    const cplx ms{0.0, -std::sin(theta.radians())};
    CMatrix u(4);
    u(PairState::kGG, PairState::kGG) = c;
    u(PairState::kGG, PairState::kEE) = ms;
    u(PairState::kEE, PairState::kGG) = ms;
    u(PairState::kEE, PairState::kEE) = c;
    u(PairState::kGE, PairState::kGE) = c;
    u(PairState::kGE, PairState::kEG) = ms;
    u(PairState::kEG, PairState::kGE) = ms;
    u(PairState::kEG, PairState::kEG) = c;
    return u;
}

PairState free_evolution(const PairState& s, double t, double energy_e, double energy_g) {
    PairState out = s;
    out.amp[PairState::kGG] *= std::exp(cplx{0.0, -2.0 * energy_g * t});
    const cplx mixed = std::exp(cplx{0.0, -(energy_e + energy_g) * t});
    out.amp[PairState::kGE] *= mixed;
    out.amp[PairState::kEG] *= mixed;
    out.amp[PairState::kEE] *= std::exp(cplx{0.0, -2.0 * energy_e * t});
    return out;
}

PairState collective_dephase(const PairState& s, Angle phi) {
    PairState out = s;
    const cplx kick = std::exp(cplx{0.0, phi.radians()});
    out.amp[PairState::kGE] *= kick;
    out.amp[PairState::kEG] *= kick;
    out.amp[PairState::kEE] *= kick * kick;
    return out;
}

double logical_fidelity(const PairState& a, const PairState& b) {
    const double na = a.logical_population();
    const double nb = b.logical_population();
    if (na < 1e-30 || nb < 1e-30)
        throw undefined_fidelity("logical_fidelity: no population in the logical subspace");
    const cplx overlap = std::conj(a.amp[PairState::kEG]) * b.amp[PairState::kEG] +
                         std::conj(a.amp[PairState::kGE]) * b.amp[PairState::kGE];
    return std::norm(overlap) / (na * nb);
}

FullSystemState::FullSystemState(int fock_cutoff, int internal_block, int phonon)
    : fock_levels(fock_cutoff + 1), amp(4 * static_cast<std::size_t>(fock_cutoff + 1)) {
    if (fock_cutoff < 2) throw std::invalid_argument("FullSystemState: cutoff must be at least 2");
    if (internal_block < 0 || internal_block > 3)
        throw std::invalid_argument("FullSystemState: bad internal block");
    if (phonon < 0 || phonon > fock_cutoff)
        throw std::invalid_argument("FullSystemState: phonon number beyond cutoff");
    amp[static_cast<std::size_t>(internal_block) * fock_levels + phonon] = 1.0;
}

double FullSystemState::population(int internal_block, int phonon) const {
    return std::norm(amp[static_cast<std::size_t>(internal_block) * fock_levels + phonon]);
}

double FullSystemState::block_population(int internal_block) const {
    double p = 0.0;
    for (int n = 0; n < fock_levels; ++n) p += population(internal_block, n);
    return p;
}

double FullSystemState::top_layer_population() const {
    double p = 0.0;
    for (int b = 0; b < 4; ++b) p += population(b, fock_levels - 1);
    return p;
}

double FullSystemState::norm_squared() const {
    double n = 0.0;
    for (const cplx& a : amp) n += std::norm(a);
    return n;
}

CMatrix bichromatic_hamiltonian(const PulseParams& p, double t, int fock_cutoff) {
    DriveModel model(p, fock_cutoff);
    const int nf = model.fock_levels();
    const auto& e0 = model.lamb_dicke_exponential();
    const double amp = model.envelope(t);

    // F(t) = amp * P(t) E0 P(t)^dag
    CMatrix f(nf);
    for (int m = 0; m < nf; ++m)
        for (int n = 0; n < nf; ++n)
            f(m, n) = amp * std::exp(cplx{0.0, p.trap * t * (m - n)}) *
                      e0[static_cast<std::size_t>(m) * nf + n];

    CMatrix h(4 * nf);
    auto add_block = [&](int row_block, int col_block, const CMatrix& blk, bool dagger) {
        for (int m = 0; m < nf; ++m)
            for (int n = 0; n < nf; ++n) {
                const cplx v = dagger ? std::conj(blk(n, m)) : blk(m, n);
                h(row_block * nf + m, col_block * nf + n) += v;
            }
    };
    // sigma+_1: gg->eg, ge->ee ; sigma+_2: gg->ge, eg->ee ; plus conjugates
    add_block(PairState::kEG, PairState::kGG, f, false);
    add_block(PairState::kEE, PairState::kGE, f, false);
    add_block(PairState::kGE, PairState::kGG, f, false);
    add_block(PairState::kEE, PairState::kEG, f, false);
    add_block(PairState::kGG, PairState::kEG, f, true);
    add_block(PairState::kGE, PairState::kEE, f, true);
    add_block(PairState::kGG, PairState::kGE, f, true);
    add_block(PairState::kEG, PairState::kEE, f, true);
    return h;
}

FullSystemState apply_hamiltonian(const PulseParams& p, double t, const FullSystemState& psi) {
    DriveModel model(p, psi.cutoff());
    FullSystemState out = psi;
    model.schrodinger_rhs(t, psi.amp.data(), out.amp.data());
    for (cplx& a : out.amp) a *= kI;  // the kernel returns -i H psi
    return out;
}

FullSystemState simulate_full(const PulseParams& p, const FullSystemState& initial,
                              double duration, double tol, IntegrationStats* stats) {
    if (duration < 0.0) throw std::invalid_argument("simulate_full: negative duration");
    DriveModel model(p, initial.cutoff());
    AdaptiveRK integ(model, tol);
    FullSystemState out = initial;
    integ.advance(out.amp, 0.0, duration);
    integ.check_norm_drift(out.amp);
    if (stats) *stats = integ.stats();
    return out;
}

SampledPopulations sample_population(const PulseParams& p, const FullSystemState& initial,
                                     int internal_block, int phonon, double duration,
                                     int samples, double tol) {
    if (samples < 2) throw std::invalid_argument("sample_population: need at least 2 samples");
    DriveModel model(p, initial.cutoff());
    AdaptiveRK integ(model, tol);
    FullSystemState state = initial;

    SampledPopulations run;
    run.times.reserve(static_cast<std::size_t>(samples) + 1);
    run.population.reserve(static_cast<std::size_t>(samples) + 1);
    run.times.push_back(0.0);
    run.population.push_back(state.population(internal_block, phonon));
    for (int s = 1; s <= samples; ++s) {
        const double t0 = duration * (s - 1) / samples;
        const double t1 = duration * s / samples;
        integ.advance(state.amp, t0, t1);
        run.times.push_back(t1);
        run.population.push_back(state.population(internal_block, phonon));
    }
    integ.check_norm_drift(state.amp);
    return run;
}

namespace {

double fit_ssr(const SampledPopulations& run, double omega) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < run.times.size(); ++i) {
        const double s = std::sin(0.5 * omega * run.times[i]);
        const double d = run.population[i] - s * s;
        ssr += d * d;
    }
    return ssr;
}

// Coarse scan then golden-section refinement; deterministic, single minimum
// near the seed in practice.
double fit_frequency(const SampledPopulations& run, double seed) {
    double lo = 0.25 * seed, hi = 4.0 * seed;
    double best = seed, best_ssr = fit_ssr(run, seed);
    const int grid = 512;
    for (int i = 0; i <= grid; ++i) {
        const double w = lo + (hi - lo) * i / grid;
        const double ssr = fit_ssr(run, w);
        if (ssr < best_ssr) {
            best = w;
            best_ssr = ssr;
        }
    }
    double a = best - (hi - lo) / grid, b = best + (hi - lo) / grid;
    constexpr double kPhi = 0.61803398874989484820;
    double x1 = b - kPhi * (b - a), x2 = a + kPhi * (b - a);
    double f1 = fit_ssr(run, x1), f2 = fit_ssr(run, x2);
    while (b - a > 1e-9 * seed) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kPhi * (b - a);
            f1 = fit_ssr(run, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kPhi * (b - a);
            f2 = fit_ssr(run, x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

RabiFit fit_rabi_frequency(const SampledPopulations& run, double seed_omega) {
    const double fitted_mag = fit_frequency(run, std::abs(seed_omega));
    RabiFit fit;
    fit.fitted = std::copysign(fitted_mag, seed_omega);
    fit.formula = seed_omega;
    fit.residual_rms =
        std::sqrt(fit_ssr(run, fitted_mag) / static_cast<double>(run.times.size()));
    fit.regime_ok = fit.residual_rms <= 0.05;
    return fit;
}

RabiFit extract_effective_rabi(const PulseParams& p, int phonon, int fock_cutoff, double tol) {
    if (phonon > fock_cutoff - 3)
        throw std::invalid_argument("extract_effective_rabi: phonon number too close to the cutoff");
    const double formula = effective_rabi(p);
    const double window = kTwoPi / std::abs(formula);  // one full population period

    FullSystemState initial(fock_cutoff, PairState::kGE, phonon);
    const SampledPopulations run =
        sample_population(p, initial, PairState::kEG, phonon, window, 200, tol);

    RabiFit fit = fit_rabi_frequency(run, formula);
    fit.regime_ok = fit.regime_ok && !p.regime_violated();
    return fit;
}

double cutoff_convergence(const PulseParams& p, int internal_block, int phonon, int fock_cutoff,
                          double duration, double tol) {
    const FullSystemState a =
        simulate_full(p, FullSystemState(fock_cutoff, internal_block, phonon), duration, tol);
    const FullSystemState b =
        simulate_full(p, FullSystemState(2 * fock_cutoff, internal_block, phonon), duration, tol);
    double mx = 0.0;
    for (int blk = 0; blk < 4; ++blk)
        for (int n = 0; n <= fock_cutoff; ++n)
            mx = std::max(mx, std::abs(a.amp[static_cast<std::size_t>(blk) * a.fock_levels + n] -
                                       b.amp[static_cast<std::size_t>(blk) * b.fock_levels + n]));
    return mx;
}

}  // namespace ionpair::physics
