#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ionpair/gates.hpp"
#include "ionpair/state.hpp"

namespace ionpair {

// Full distributions are stored per iteration, so searches are capped here.
inline constexpr int kMaxSearchQubits = 20;

/// Per-iteration probability distributions of one search run. Record 0 is the
/// prepared state, before any amplitude inversion.
struct Trajectory {
    int qubits;
    TargetIndex marked;
    std::vector<std::vector<double>> records;
};

struct SearchReport {
    int peak_iteration;
    double peak_probability;
    std::optional<int> recurrence;
    std::vector<std::uint64_t> comaximal;  // basis states sharing the peak-iteration maximum
};

/// W applied to every qubit of |1...1>.
StateVector prepare_initial(int qubits, Exec policy = Exec::Auto);

/// Same preparation from an arbitrary start state; anything other than the
/// canonical all-ones start is an extension of the scheme.
StateVector prepare_initial(int qubits, std::uint64_t start_basis, Exec policy = Exec::Auto);

/// Negates the marked amplitude (equals applying the dense build_p).
void invert_marked(StateVector& state, const TargetIndex& target);

/// W on every qubit, sign flip at |1...1>, W on every qubit; O(q 2^q).
void apply_diffusion(StateVector& state, Exec policy = Exec::Auto);

/// Runs `iterations` (invert, diffuse) pairs from the prepared state and
/// records the distribution after each, including iteration 0.
Trajectory run_search(int qubits, const TargetIndex& marked, int iterations,
                      Exec policy = Exec::Auto);

/// Same walk, but keeps the state vectors (for amplitude-level diagnostics).
std::vector<StateVector> run_search_states(int qubits, const TargetIndex& marked,
                                           int iterations, Exec policy = Exec::Auto);

/// Smallest p >= 1 with max-norm distance(record n, record n+p) <= tol for
/// every recorded n; absent if none exists within the trajectory.
std::optional<int> recurrence_period(const Trajectory& traj, double tol);

/// Amplitude-level variant: smallest p with global-phase-invariant fidelity
/// |<s_n|s_{n+p}>|^2 >= 1 - tol at every n.
std::optional<int> state_recurrence_period(std::span<const StateVector> states, double tol);

/// floor((pi/4) sqrt(n_items / n_solutions)); n_items must be a power of two.
int optimal_iterations(std::uint64_t n_items, std::uint64_t n_solutions);

/// Peak of P(marked) over n >= 1, the basis states tied with the maximum of
/// that iteration's distribution (within 1e-9), and the recurrence period.
SearchReport search_report(const Trajectory& traj);

}  // namespace ionpair
