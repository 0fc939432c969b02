#include "ionpair/gates.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ionpair {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dense_qubits(int qubits, int min_qubits) {
    if (qubits < min_qubits) throw std::invalid_argument("qubit count too small");
    if (qubits > kMaxDenseQubits) throw std::length_error("dense matrices are capped at 10 qubits");
}

// i^k for k in [0,4)
cplx i_pow(unsigned k) {
    switch (k & 3u) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

TargetIndex TargetIndex::from_basis(int qubits, std::uint64_t basis) {
    if (qubits < 2) throw std::invalid_argument("TargetIndex: need at least 2 qubits");
    if (qubits > 62) throw std::invalid_argument("TargetIndex: qubit count too large");
    if (basis >= (std::uint64_t{1} << qubits))
        throw std::invalid_argument("TargetIndex: basis index out of range");
    return {qubits, basis};
}

TargetIndex TargetIndex::from_one_based(int qubits, std::uint64_t index) {
    if (qubits < 2) throw std::invalid_argument("TargetIndex: need at least 2 qubits");
    const std::uint64_t dim = std::uint64_t{1} << qubits;
    if (index < 1 || index > dim)
        throw std::invalid_argument("TargetIndex: 1-based index out of range");
    return from_basis(qubits, dim - index);
}

TargetIndex TargetIndex::from_bitstring(std::string_view bits) {
    const int q = static_cast<int>(bits.size());
    if (q < 2) throw std::invalid_argument("TargetIndex: bitstring needs at least 2 characters");
    std::uint64_t basis = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("TargetIndex: bitstring must be 0/1");
        basis = (basis << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return from_basis(q, basis);
}

std::string TargetIndex::bitstring() const {
    std::string s(static_cast<std::size_t>(qubits), '0');
    for (int b = 0; b < qubits; ++b)
        if (basis >> (qubits - 1 - b) & 1) s[static_cast<std::size_t>(b)] = '1';
    return s;
}

CMatrix rotation_x(Angle theta) {
    const double c = std::cos(theta.radians());
    const double s = std::sin(theta.radians());
    CMatrix m(2);
    m(0, 0) = c;
    m(0, 1) = cplx{0.0, -s};
    m(1, 0) = cplx{0.0, -s};
    m(1, 1) = c;
    return m;
}

CMatrix build_w(int qubits) {
    check_dense_qubits(qubits, 1);
    const std::uint64_t dim = std::uint64_t{1} << qubits;
    const double scale = std::pow(2.0, -0.5 * qubits);
    CMatrix m(static_cast<int>(dim));
    for (std::uint64_t j = 0; j < dim; ++j)
        for (std::uint64_t k = 0; k < dim; ++k)
            m(static_cast<int>(j), static_cast<int>(k)) =
                scale * i_pow(static_cast<unsigned>(std::popcount(j ^ k)));
    return m;
}

CMatrix build_m(const TargetIndex& target) {
    check_dense_qubits(target.qubits, 2);
    const std::uint64_t dim = std::uint64_t{1} << target.qubits;
    CMatrix m = CMatrix::identity(static_cast<int>(dim));
    const int lo = static_cast<int>(target.basis & ~std::uint64_t{1});
    const int hi = lo + 1;
    const cplx s = (target.basis & 1) ? kI : -kI;  // [[0, -s],[s, 0]] block
    m(lo, lo) = 0.0;
    m(hi, hi) = 0.0;
    m(lo, hi) = -s;
    m(hi, lo) = s;
    return m;
}

CMatrix build_v(int qubits) {
    check_dense_qubits(qubits, 2);
    const std::uint64_t dim = std::uint64_t{1} << qubits;
    const CMatrix w = rotation_x(Angle{7.0 * kPi / 4.0});
    CMatrix m(static_cast<int>(dim));
    for (std::uint64_t j = 0; j < dim; ++j)
        for (std::uint64_t k = 0; k < dim; ++k)
            if ((j >> 1) == (k >> 1))
                m(static_cast<int>(j), static_cast<int>(k)) =
                    w(static_cast<int>(j & 1), static_cast<int>(k & 1));
    return m;
}

CMatrix build_p(const TargetIndex& target) {
    check_dense_qubits(target.qubits, 2);
    const std::uint64_t dim = std::uint64_t{1} << target.qubits;
    CMatrix m = CMatrix::identity(static_cast<int>(dim));
    m(static_cast<int>(target.basis), static_cast<int>(target.basis)) = -1.0;
    return m;
}

CMatrix build_p_conjugated(const TargetIndex& target) {
    const CMatrix v = build_v(target.qubits);
    return v.adjoint() * build_m(target) * v;
}

CMatrix build_diffusion(int qubits) {
    check_dense_qubits(qubits, 2);
    const CMatrix w = build_w(qubits);
    const TargetIndex all_ones = TargetIndex::from_one_based(qubits, 1);
    return w * build_p(all_ones) * w;
}

bool is_unitary(const CMatrix& m, double tol) { return unitarity_defect(m) <= tol; }

}  // namespace ionpair
