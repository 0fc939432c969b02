#pragma once

#include "ionpair/engine.hpp"

namespace ionpair::oracle {

// Brute-force ground truth, deliberately built from different code paths than
// gates.cpp / the factored kernels: Kronecker recursion instead of the
// popcount closed form, explicit matrix-vector products instead of bit masks.
// Serial throughout; clarity over speed.

/// Kronecker product, dims multiply.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// q-fold Kronecker power of (1/sqrt2)[[1,i],[i,1]].
CMatrix walsh_dense(int qubits);

/// Dense identity with -1 at (basis, basis).
CMatrix phase_flip_dense(int qubits, std::uint64_t basis);

/// Precomputed dense evolution: one iteration is the explicit matrix
/// G = D_q * P_marked.
struct DenseEvolution {
    int qubits;
    TargetIndex marked;
    CMatrix walsh;
    CMatrix grover_op;

    DenseEvolution(int qubits, const TargetIndex& marked);
};

/// Same contract as run_search, via dense matrix-vector products. q <= 10.
Trajectory dense_run(int qubits, const TargetIndex& marked, int iterations);

/// Textbook comparator: real Hadamard, phase oracle, 2|s><s| - I diffusion,
/// started from the uniform superposition H^q |0...0>.
Trajectory standard_grover_run(int qubits, const TargetIndex& marked, int iterations);

/// Max over records and basis states of |P_a - P_b|; shapes must match.
double max_deviation(const Trajectory& a, const Trajectory& b);

}  // namespace ionpair::oracle
