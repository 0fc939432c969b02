#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ionpair/angle.hpp"
#include "ionpair/matrix.hpp"

namespace ionpair {

// Dense matrices are only materialized up to this many qubits; beyond it the
// engine's factored kernels are the only route.
inline constexpr int kMaxDenseQubits = 10;

/// A marked basis state. Basis indices are 0-based with the most significant
/// qubit first (|0...0> = 0, |1...1> = 2^q - 1). The alternative 1-based
/// labeling counts down from the all-ones state: one_based == 2^q - basis.
struct TargetIndex {
    int qubits;
    std::uint64_t basis;

    static TargetIndex from_basis(int qubits, std::uint64_t basis);
    static TargetIndex from_one_based(int qubits, std::uint64_t index);
    static TargetIndex from_bitstring(std::string_view bits);

    std::uint64_t one_based() const { return (std::uint64_t{1} << qubits) - basis; }
    std::string bitstring() const;
};

/// [[cos t, -i sin t], [-i sin t, cos t]] in the basis |0> = (1,0), |1> = (0,1).
CMatrix rotation_x(Angle theta);

/// The superposition gate: q-fold tensor power of rotation_x(7*pi/4).
/// Entry (j,k) is 2^(-q/2) * i^popcount(j xor k).
CMatrix build_w(int qubits);

/// Identity except on the two-dimensional block {2b, 2b+1}, b = basis/2:
/// [[0,-i],[i,0]] for odd basis, [[0,i],[-i,0]] for even, so that conjugation
/// by build_v yields the -1 phase flip exactly at `basis`.
CMatrix build_m(const TargetIndex& target);

/// Identity on the first q-1 qubits, rotation_x(7*pi/4) on the last.
CMatrix build_v(int qubits);

/// Diagonal phase flip: +1 everywhere except -1 at `basis`.
CMatrix build_p(const TargetIndex& target);

/// Same operator via the V^-1 * M * V route; kept as a second code path.
CMatrix build_p_conjugated(const TargetIndex& target);

/// Inversion-about-average operator W_q * P_1 * W_q, where P_1 flips |1...1>.
CMatrix build_diffusion(int qubits);

bool is_unitary(const CMatrix& m, double tol);

}  // namespace ionpair
