#include "ionpair/validation.hpp"

#include <cmath>

#include "ionpair/engine.hpp"
#include "ionpair/oracle.hpp"

namespace ionpair {

namespace {

std::string q_label(const std::string& base, int q) { return base + " (q=" + std::to_string(q) + ")"; }

}  // namespace

std::vector<CheckResult> run_validation_checks(const ValidationOptions& opts) {
    std::vector<CheckResult> results;
    auto add = [&](std::string name, double measured, double threshold, std::string detail = {}) {
        results.push_back({std::move(name), measured <= threshold, measured, threshold, std::move(detail)});
    };

    constexpr double kMatrixTol = 1e-12;
    const int iterations = 18;

    for (int q = opts.q_min; q <= std::min(opts.q_max, kMaxDenseQubits); ++q) {
        double worst = unitarity_defect(build_w(q));
        worst = std::max(worst, unitarity_defect(build_v(q)));
        worst = std::max(worst, unitarity_defect(build_diffusion(q)));
        double conj_dev = 0.0;
        for (std::uint64_t basis = 0; basis < (std::uint64_t{1} << q); ++basis) {
            const TargetIndex t = TargetIndex::from_basis(q, basis);
            worst = std::max(worst, unitarity_defect(build_m(t)));
            worst = std::max(worst, unitarity_defect(build_p(t)));
            conj_dev = std::max(conj_dev, build_p(t).max_abs_diff(build_p_conjugated(t)));
        }
        add(q_label("unitarity of all gate constructions", q), worst, kMatrixTol);
        add(q_label("phase flip equals its conjugation route", q), conj_dev, kMatrixTol);
    }

    for (int q = opts.q_min; q <= std::min(opts.q_max, kMaxDenseQubits); ++q) {
        const TargetIndex marked = TargetIndex::from_one_based(q, 1);
        const Trajectory fast = run_search(q, marked, iterations, opts.policy);
        const Trajectory dense = oracle::dense_run(q, marked, iterations);
        add(q_label("factored engine matches dense evolution", q),
            oracle::max_deviation(fast, dense), opts.tol);
    }

    // Twin-amplitude lock when searching |111>: amp(|000>) = -i amp(|111>) at
    // every iteration; the fault switch corrupts one inversion sign to prove
    // the check can fail.
    {
        const TargetIndex marked = TargetIndex::from_one_based(3, 1);
        StateVector state = prepare_initial(3, opts.policy);
        double worst = 0.0;
        for (int n = 0; n <= iterations; ++n) {
            worst = std::max(worst,
                             std::abs(state.amplitude(0) + kI * state.amplitude(7)));
            if (n == iterations) break;
            invert_marked(state, marked);
            if (opts.inject_fault && n == 0) negate_amplitude(state, 0);
            apply_diffusion(state, opts.policy);
        }
        add("3-qubit twin-amplitude lock amp(000) = -i amp(111)", worst, kMatrixTol);
    }

    {
        const Trajectory two = run_search(2, TargetIndex::from_one_based(2, 1), iterations, opts.policy);
        const auto period = recurrence_period(two, 1e-9);
        results.push_back({"2-qubit search recurs with period 3",
                           period.has_value() && *period == 3,
                           period ? static_cast<double>(*period) : -1.0, 3.0,
                           "distribution period at tol 1e-9"});

        const Trajectory three = run_search(3, TargetIndex::from_one_based(3, 1), iterations, opts.policy);
        const auto p3 = recurrence_period(three, 1e-9);
        results.push_back({"3-qubit search is not periodic within 18 iterations",
                           !p3.has_value(), p3 ? static_cast<double>(*p3) : 0.0, 0.0,
                           "no distribution period at tol 1e-9"});
    }

    return results;
}

}  // namespace ionpair
