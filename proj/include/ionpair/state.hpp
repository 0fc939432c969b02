#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ionpair/matrix.hpp"

namespace ionpair {

/// Kernel execution policy. Auto parallelizes once the state is large enough
/// for the loop to outweigh thread startup; Serial is the reference path the
/// parallel kernels are tested against.
enum class Exec { Auto, Serial, Parallel };

inline constexpr std::uint64_t kParallelCutover = std::uint64_t{1} << 14;

/// Complex amplitudes over 2^q basis states, most significant qubit first.
class StateVector {
public:
    StateVector(int qubits, std::vector<cplx> amplitudes);

    static StateVector basis_state(int qubits, std::uint64_t index);

    int qubits() const { return qubits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << qubits_; }

    std::span<const cplx> amplitudes() const { return amps_; }
    cplx amplitude(std::uint64_t index) const { return amps_[index]; }
    cplx& amplitude(std::uint64_t index) { return amps_[index]; }

    double norm_squared(Exec policy = Exec::Auto) const;
    std::vector<double> probabilities() const;

private:
    int qubits_;
    std::vector<cplx> amps_;
};

/// Applies a 2x2 gate to one qubit in place, O(2^q) amplitude updates.
/// Qubit 0 is the most significant bit of the basis index.
void apply_single_qubit(StateVector& state, const CMatrix& gate, int qubit,
                        Exec policy = Exec::Auto);

/// Flips the sign of a single amplitude (the phase-flip operator P, O(1)).
void negate_amplitude(StateVector& state, std::uint64_t basis);

}  // namespace ionpair
