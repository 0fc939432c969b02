#include "ionpair/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ionpair::oracle {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

CMatrix single_walsh() {
    CMatrix w(2);
    w(0, 0) = kInvSqrt2;
    w(0, 1) = cplx{0.0, kInvSqrt2};
    w(1, 0) = cplx{0.0, kInvSqrt2};
    w(1, 1) = kInvSqrt2;
    return w;
}

CMatrix single_hadamard() {
    CMatrix h(2);
    h(0, 0) = kInvSqrt2;
    h(0, 1) = kInvSqrt2;
    h(1, 0) = kInvSqrt2;
    h(1, 1) = -kInvSqrt2;
    return h;
}

void check_oracle_qubits(int qubits) {
    if (qubits < 2) throw std::invalid_argument("oracle: need at least 2 qubits");
    if (qubits > kMaxDenseQubits) throw std::length_error("oracle: dense evolution capped at 10 qubits");
}

std::vector<double> probabilities_of(std::span<const cplx> amps) {
    std::vector<double> p(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) p[i] = std::norm(amps[i]);
    return p;
}

Trajectory iterate(int qubits, const TargetIndex& marked, int iterations,
                   std::vector<cplx> psi, const CMatrix& step_op) {
    Trajectory traj{qubits, marked, {}};
    traj.records.reserve(static_cast<std::size_t>(iterations) + 1);
    traj.records.push_back(probabilities_of(psi));
    for (int n = 0; n < iterations; ++n) {
        psi = step_op.apply(psi);
        traj.records.push_back(probabilities_of(psi));
    }
    return traj;
}

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const int da = a.dim(), db = b.dim();
    CMatrix out(da * db);
    for (int ra = 0; ra < da; ++ra)
        for (int ca = 0; ca < da; ++ca) {
            const cplx f = a(ra, ca);
            if (f == cplx{}) continue;
            for (int rb = 0; rb < db; ++rb)
                for (int cb = 0; cb < db; ++cb)
                    out(ra * db + rb, ca * db + cb) = f * b(rb, cb);
        }
    return out;
}

CMatrix walsh_dense(int qubits) {
    if (qubits < 1) throw std::invalid_argument("walsh_dense: need at least 1 qubit");
    if (qubits > kMaxDenseQubits) throw std::length_error("walsh_dense: capped at 10 qubits");
    CMatrix m = single_walsh();
    for (int k = 1; k < qubits; ++k) m = kron(m, single_walsh());
    return m;
}

CMatrix phase_flip_dense(int qubits, std::uint64_t basis) {
    check_oracle_qubits(qubits);
    CMatrix m = CMatrix::identity(1 << qubits);
    m(static_cast<int>(basis), static_cast<int>(basis)) = -1.0;
    return m;
}

DenseEvolution::DenseEvolution(int q, const TargetIndex& m)
    : qubits(q), marked(m), walsh(walsh_dense(q)), grover_op(1 << q) {
    check_oracle_qubits(q);
    if (m.qubits != q) throw std::invalid_argument("DenseEvolution: qubit count mismatch");
    const CMatrix diffusion =
        walsh * phase_flip_dense(q, (std::uint64_t{1} << q) - 1) * walsh;
    grover_op = diffusion * phase_flip_dense(q, m.basis);
}

Trajectory dense_run(int qubits, const TargetIndex& marked, int iterations) {
    DenseEvolution evo(qubits, marked);
    std::vector<cplx> start(std::size_t{1} << qubits);
    start.back() = 1.0;
    return iterate(qubits, marked, iterations, evo.walsh.apply(start), evo.grover_op);
}

Trajectory standard_grover_run(int qubits, const TargetIndex& marked, int iterations) {
    check_oracle_qubits(qubits);
    if (marked.qubits != qubits) throw std::invalid_argument("standard_grover_run: qubit count mismatch");
    const std::uint64_t dim = std::uint64_t{1} << qubits;

    CMatrix hadamard = single_hadamard();
    for (int k = 1; k < qubits; ++k) hadamard = kron(hadamard, single_hadamard());

    std::vector<cplx> start(dim);
    start.front() = 1.0;
    std::vector<cplx> psi = hadamard.apply(start);

    // 2|s><s| - I with |s> the uniform superposition
    CMatrix reflect(static_cast<int>(dim));
    const double two_over_n = 2.0 / static_cast<double>(dim);
    for (std::uint64_t r = 0; r < dim; ++r)
        for (std::uint64_t c = 0; c < dim; ++c)
            reflect(static_cast<int>(r), static_cast<int>(c)) =
                two_over_n - (r == c ? 1.0 : 0.0);

    const CMatrix step_op = reflect * phase_flip_dense(qubits, marked.basis);
    return iterate(qubits, marked, iterations, std::move(psi), step_op);
}

double max_deviation(const Trajectory& a, const Trajectory& b) {
    if (a.qubits != b.qubits || a.marked.basis != b.marked.basis ||
        a.records.size() != b.records.size())
        throw std::invalid_argument("max_deviation: trajectory shapes differ");
    double mx = 0.0;
    for (std::size_t n = 0; n < a.records.size(); ++n)
        for (std::size_t i = 0; i < a.records[n].size(); ++i)
            mx = std::max(mx, std::abs(a.records[n][i] - b.records[n][i]));
    return mx;
}

}  // namespace ionpair::oracle
