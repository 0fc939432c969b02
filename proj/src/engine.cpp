#include "ionpair/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ionpair {

namespace {

// Cached W = rotation_x(7*pi/4) entries: diag 1/sqrt2, off-diag i/sqrt2.
const CMatrix& walsh_gate() {
    static const CMatrix w = rotation_x(Angle{7.0 * std::numbers::pi / 4.0});
    return w;
}

void apply_w_all(StateVector& state, Exec policy) {
    for (int qb = 0; qb < state.qubits(); ++qb) apply_single_qubit(state, walsh_gate(), qb, policy);
}

void check_engine_qubits(int qubits) {
    if (qubits < 2) throw std::invalid_argument("search needs at least 2 qubits");
    if (qubits > kMaxSearchQubits) throw std::invalid_argument("search capped at 20 qubits");
}

double max_abs_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double mx = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) mx = std::max(mx, std::abs(a[i] - b[i]));
    return mx;
}

}  // namespace

StateVector prepare_initial(int qubits, Exec policy) {
    check_engine_qubits(qubits);
    return prepare_initial(qubits, (std::uint64_t{1} << qubits) - 1, policy);
}

StateVector prepare_initial(int qubits, std::uint64_t start_basis, Exec policy) {
    check_engine_qubits(qubits);
    StateVector state = StateVector::basis_state(qubits, start_basis);
    apply_w_all(state, policy);
    return state;
}

void invert_marked(StateVector& state, const TargetIndex& target) {
    if (target.qubits != state.qubits())
        throw std::invalid_argument("invert_marked: qubit count mismatch");
    negate_amplitude(state, target.basis);
}

void apply_diffusion(StateVector& state, Exec policy) {
    apply_w_all(state, policy);
    negate_amplitude(state, state.dim() - 1);
    apply_w_all(state, policy);
}

Trajectory run_search(int qubits, const TargetIndex& marked, int iterations, Exec policy) {
    check_engine_qubits(qubits);
    if (marked.qubits != qubits) throw std::invalid_argument("run_search: qubit count mismatch");
    if (iterations < 0) throw std::invalid_argument("run_search: negative iteration count");

    Trajectory traj{qubits, marked, {}};
    traj.records.reserve(static_cast<std::size_t>(iterations) + 1);
    StateVector state = prepare_initial(qubits, policy);
    traj.records.push_back(state.probabilities());
    for (int n = 0; n < iterations; ++n) {
        invert_marked(state, marked);
        apply_diffusion(state, policy);
        traj.records.push_back(state.probabilities());
    }
    return traj;
}

std::vector<StateVector> run_search_states(int qubits, const TargetIndex& marked, int iterations,
                                           Exec policy) {
    check_engine_qubits(qubits);
    if (marked.qubits != qubits) throw std::invalid_argument("run_search_states: qubit count mismatch");
    std::vector<StateVector> states;
    states.reserve(static_cast<std::size_t>(iterations) + 1);
    states.push_back(prepare_initial(qubits, policy));
    for (int n = 0; n < iterations; ++n) {
        StateVector next = states.back();
        invert_marked(next, marked);
        apply_diffusion(next, policy);
        states.push_back(std::move(next));
    }
    return states;
}

std::optional<int> recurrence_period(const Trajectory& traj, double tol) {
    const int count = static_cast<int>(traj.records.size());
    if (count < 2) throw std::invalid_argument("recurrence_period: need at least 2 records");
    for (int p = 1; p < count; ++p) {
        bool ok = true;
        for (int n = 0; n + p < count; ++n) {
            if (max_abs_distance(traj.records[static_cast<std::size_t>(n)],
                                 traj.records[static_cast<std::size_t>(n + p)]) > tol) {
                ok = false;
                break;
            }
        }
        if (ok) return p;
    }
    return std::nullopt;
}

std::optional<int> state_recurrence_period(std::span<const StateVector> states, double tol) {
    const int count = static_cast<int>(states.size());
    if (count < 2) throw std::invalid_argument("state_recurrence_period: need at least 2 states");
    for (int p = 1; p < count; ++p) {
        bool ok = true;
        for (int n = 0; n + p < count; ++n) {
            cplx overlap{};
            const auto a = states[static_cast<std::size_t>(n)].amplitudes();
            const auto b = states[static_cast<std::size_t>(n + p)].amplitudes();
            for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(a[i]) * b[i];
            if (std::norm(overlap) < 1.0 - tol) {
                ok = false;
                break;
            }
        }
        if (ok) return p;
    }
    return std::nullopt;
}

int optimal_iterations(std::uint64_t n_items, std::uint64_t n_solutions) {
    if (n_items == 0 || std::popcount(n_items) != 1)
        throw std::invalid_argument("optimal_iterations: item count must be a power of two");
    if (n_solutions < 1 || n_solutions > n_items)
        throw std::invalid_argument("optimal_iterations: solution count out of range");
    const double ratio = static_cast<double>(n_items) / static_cast<double>(n_solutions);
    return static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(ratio)));
}

SearchReport search_report(const Trajectory& traj) {
    if (traj.records.empty()) throw std::invalid_argument("search_report: empty trajectory");
    const std::size_t marked = traj.marked.basis;

    int peak_n = 0;
    double peak_p = traj.records[0][marked];
    for (std::size_t n = 1; n < traj.records.size(); ++n) {
        const double p = traj.records[n][marked];
        if (n == 1 || p > peak_p) {  // peak is taken over n >= 1 when iterations exist
            peak_n = static_cast<int>(n);
            peak_p = p;
        }
    }

    constexpr double kTieTol = 1e-9;
    const auto& dist = traj.records[static_cast<std::size_t>(peak_n)];
    double mx = 0.0;
    for (double p : dist) mx = std::max(mx, p);
    std::vector<std::uint64_t> ties;
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist[i] >= mx - kTieTol) ties.push_back(static_cast<std::uint64_t>(i));

    SearchReport report{peak_n, peak_p, std::nullopt, std::move(ties)};
    if (traj.records.size() >= 2) report.recurrence = recurrence_period(traj, 1e-9);
    return report;
}

}  // namespace ionpair
