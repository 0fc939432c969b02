#include "ionpair/state.hpp"

#include <cstdint>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ionpair {

namespace {

bool go_parallel(Exec policy, std::uint64_t dim) {
    switch (policy) {
        case Exec::Serial: return false;
        case Exec::Parallel: return true;
        case Exec::Auto: return dim >= kParallelCutover;
    }
    return false;
}

}  // namespace

StateVector::StateVector(int qubits, std::vector<cplx> amplitudes)
    : qubits_(qubits), amps_(std::move(amplitudes)) {
    if (qubits < 1 || qubits > 30) throw std::invalid_argument("StateVector: bad qubit count");
    if (amps_.size() != (std::uint64_t{1} << qubits))
        throw std::invalid_argument("StateVector: amplitude count must be 2^q");
}

StateVector StateVector::basis_state(int qubits, std::uint64_t index) {
    if (qubits < 1 || qubits > 30) throw std::invalid_argument("StateVector: bad qubit count");
    std::vector<cplx> amps(std::uint64_t{1} << qubits);
    if (index >= amps.size()) throw std::invalid_argument("StateVector: basis index out of range");
    amps[index] = 1.0;
    return StateVector(qubits, std::move(amps));
}

double StateVector::norm_squared(Exec policy) const {
    const std::int64_t n = static_cast<std::int64_t>(amps_.size());
    const bool par = go_parallel(policy, amps_.size());
    double acc = 0.0;
#pragma omp parallel for reduction(+ : acc) if (par)
    for (std::int64_t i = 0; i < n; ++i) acc += std::norm(amps_[static_cast<std::size_t>(i)]);
    return acc;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
    return p;
}

void apply_single_qubit(StateVector& state, const CMatrix& gate, int qubit, Exec policy) {
    if (gate.dim() != 2) throw std::invalid_argument("apply_single_qubit: gate must be 2x2");
    if (qubit < 0 || qubit >= state.qubits())
        throw std::invalid_argument("apply_single_qubit: qubit index out of range");

    // Qubit 0 is the most significant bit of the basis index.
    const int bit = state.qubits() - 1 - qubit;
    const std::uint64_t mask = std::uint64_t{1} << bit;
    const std::uint64_t lo_mask = mask - 1;
    const std::uint64_t hi_mask = ~lo_mask;
    const std::int64_t pairs = static_cast<std::int64_t>(state.dim() >> 1);

    const cplx g00 = gate(0, 0), g01 = gate(0, 1), g10 = gate(1, 0), g11 = gate(1, 1);
    cplx* amps = &state.amplitude(0);
    const bool par = go_parallel(policy, state.dim());

#pragma omp parallel for if (par)
    for (std::int64_t i = 0; i < pairs; ++i) {
        const std::uint64_t u = static_cast<std::uint64_t>(i);
        const std::uint64_t i0 = ((u & hi_mask) << 1) | (u & lo_mask);
        const std::uint64_t i1 = i0 | mask;
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i1];
        amps[i0] = g00 * a0 + g01 * a1;
        amps[i1] = g10 * a0 + g11 * a1;
    }
}

void negate_amplitude(StateVector& state, std::uint64_t basis) {
    if (basis >= state.dim()) throw std::invalid_argument("negate_amplitude: index out of range");
    state.amplitude(basis) = -state.amplitude(basis);
}

}  // namespace ionpair
