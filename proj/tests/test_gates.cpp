#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ionpair/gates.hpp"
#include "ionpair/oracle.hpp"
#include "ionpair/state.hpp"

using namespace ionpair;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752440;

double max_dev(const CMatrix& m, std::initializer_list<std::initializer_list<cplx>> rows) {
    return m.max_abs_diff(CMatrix::from_rows(rows));
}

}  // namespace

TEST_CASE("rotation_x at the angles the scheme uses") {
    CHECK(rotation_x(Angle{0.0}).max_abs_diff(CMatrix::identity(2)) < 1e-15);

    const cplx i2{0.0, kInvSqrt2};
    CHECK(max_dev(rotation_x(Angle{7.0 * kPi / 4.0}), {{kInvSqrt2, i2}, {i2, kInvSqrt2}}) < 1e-15);

    CHECK(max_dev(rotation_x(Angle{3.0 * kPi / 2.0}), {{0.0, kI}, {kI, 0.0}}) < 1e-15);
    CHECK(max_dev(rotation_x(Angle{kPi / 2.0}), {{0.0, -kI}, {-kI, 0.0}}) < 1e-15);
}

TEST_CASE("rotation_x forms a one-parameter group") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int k = 0; k < 50; ++k) {
        const double a = angle(rng), b = angle(rng);
        const CMatrix lhs = rotation_x(Angle{a}) * rotation_x(Angle{b});
        CHECK(lhs.max_abs_diff(rotation_x(Angle{a + b})) < 1e-12);
    }
}

TEST_CASE("Angle reduces to [0, 2pi) and rejects non-finite input") {
    CHECK(Angle{2.0 * kPi}.radians() == doctest::Approx(0.0));
    CHECK(Angle{-kPi / 2.0}.radians() == doctest::Approx(3.0 * kPi / 2.0));
    CHECK(Angle{9.0 * kPi}.radians() == doctest::Approx(kPi));
    CHECK_THROWS_AS(Angle{std::nan("")}, std::invalid_argument);
    CHECK_THROWS_AS(Angle{INFINITY}, std::invalid_argument);
}

TEST_CASE("build_w q=1,2 explicit matrices") {
    const cplx i2{0.0, kInvSqrt2};
    CHECK(max_dev(build_w(1), {{kInvSqrt2, i2}, {i2, kInvSqrt2}}) < 1e-15);

    const cplx h{0.5, 0.0}, ih{0.0, 0.5};
    CHECK(max_dev(build_w(2), {{h, ih, ih, -h},
                               {ih, h, -h, ih},
                               {ih, -h, h, ih},
                               {-h, ih, ih, h}}) < 1e-15);
}

TEST_CASE("build_w matches the Kronecker-recursion construction") {
    for (int q : {3, 5, 7}) CHECK(build_w(q).max_abs_diff(oracle::walsh_dense(q)) < 1e-13);
}

TEST_CASE("build_w columns equal factored per-qubit sweeps") {
    for (int q : {2, 3, 6}) {
        const CMatrix w = build_w(q);
        const CMatrix gate = rotation_x(Angle{7.0 * kPi / 4.0});
        for (std::uint64_t j = 0; j < (std::uint64_t{1} << q); ++j) {
            StateVector s = StateVector::basis_state(q, j);
            for (int qb = 0; qb < q; ++qb) apply_single_qubit(s, gate, qb);
            double dev = 0.0;
            for (std::uint64_t r = 0; r < s.dim(); ++r)
                dev = std::max(dev, std::abs(s.amplitude(r) -
                                             w(static_cast<int>(r), static_cast<int>(j))));
            CHECK(dev < 1e-12);
        }
    }
}

TEST_CASE("two-qubit amplitude-swap operators") {
    CHECK(max_dev(build_m(TargetIndex::from_one_based(2, 1)),
                  {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, -kI}, {0, 0, kI, 0}}) == 0.0);
    CHECK(max_dev(build_m(TargetIndex::from_one_based(2, 2)),
                  {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, kI}, {0, 0, -kI, 0}}) == 0.0);
    CHECK(max_dev(build_m(TargetIndex::from_one_based(2, 3)),
                  {{0, -kI, 0, 0}, {kI, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}) == 0.0);
    CHECK(max_dev(build_m(TargetIndex::from_one_based(2, 4)),
                  {{0, kI, 0, 0}, {-kI, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}) == 0.0);
}

TEST_CASE("three-qubit amplitude swap acts on the bottom block") {
    const CMatrix m = build_m(TargetIndex::from_one_based(3, 1));
    CMatrix expected = CMatrix::identity(8);
    expected(6, 6) = expected(7, 7) = 0.0;
    expected(6, 7) = -kI;
    expected(7, 6) = kI;
    CHECK(m.max_abs_diff(expected) == 0.0);
}

TEST_CASE("controlled-rotation reading of the swap block") {
    // The active block sends |0> to i|1> and |1> to -i|0>, which is exactly
    // what rotation_x(3pi/2) and rotation_x(pi/2) do to those inputs.
    const CMatrix m = build_m(TargetIndex::from_one_based(2, 1));
    const CMatrix r32 = rotation_x(Angle{3.0 * kPi / 2.0});
    const CMatrix r12 = rotation_x(Angle{kPi / 2.0});
    CHECK(std::abs(m(2, 2) - r32(0, 0)) < 1e-15);
    CHECK(std::abs(m(3, 2) - r32(1, 0)) < 1e-15);  // column |0> of the block
    CHECK(std::abs(m(2, 3) - r12(0, 1)) < 1e-15);  // column |1> of the block
    CHECK(std::abs(m(3, 3) - r12(1, 1)) < 1e-15);
}

TEST_CASE("build_v is identity except the last qubit") {
    const cplx i2{0.0, kInvSqrt2};
    CHECK(max_dev(build_v(2), {{kInvSqrt2, i2, 0, 0},
                               {i2, kInvSqrt2, 0, 0},
                               {0, 0, kInvSqrt2, i2},
                               {0, 0, i2, kInvSqrt2}}) < 1e-15);

    // applied to |11>
    std::vector<cplx> e3{0, 0, 0, 1};
    const auto v = build_v(2).apply(e3);
    CHECK(std::abs(v[0]) < 1e-15);
    CHECK(std::abs(v[1]) < 1e-15);
    CHECK(std::abs(v[2] - i2) < 1e-15);
    CHECK(std::abs(v[3] - kInvSqrt2) < 1e-15);

    // q=3: four identical 2x2 blocks along the diagonal
    const CMatrix v3 = build_v(3);
    const CMatrix w = rotation_x(Angle{7.0 * kPi / 4.0});
    CMatrix expected(8);
    for (int b = 0; b < 4; ++b)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) expected(2 * b + r, 2 * b + c) = w(r, c);
    CHECK(v3.max_abs_diff(expected) < 1e-15);
    CHECK(v3.max_abs_diff(oracle::kron(CMatrix::identity(4), w)) < 1e-15);
}

TEST_CASE("phase flips: explicit two-qubit forms") {
    CHECK(max_dev(build_p(TargetIndex::from_one_based(2, 1)),
                  {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}) == 0.0);
    CHECK(max_dev(build_p(TargetIndex::from_one_based(2, 3)),
                  {{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}) == 0.0);
}

TEST_CASE("phase flip equals the conjugation route") {
    SUBCASE("every target up to four qubits") {
        for (int q = 2; q <= 4; ++q)
            for (std::uint64_t basis = 0; basis < (std::uint64_t{1} << q); ++basis) {
                const TargetIndex t = TargetIndex::from_basis(q, basis);
                CHECK(build_p(t).max_abs_diff(build_p_conjugated(t)) < 1e-12);
            }
    }
    SUBCASE("sampled targets at larger sizes") {
        std::mt19937 rng(11);
        for (int q = 5; q <= 8; ++q) {
            std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << q) - 1);
            for (int k = 0; k < 4; ++k) {
                const TargetIndex t = TargetIndex::from_basis(q, pick(rng));
                CHECK(build_p(t).max_abs_diff(build_p_conjugated(t)) < 1e-12);
            }
        }
    }
    SUBCASE("the named q=4 case") {
        const TargetIndex t = TargetIndex::from_basis(4, 5);
        const CMatrix p = build_p(t);
        for (int j = 0; j < 16; ++j) CHECK(p(j, j) == (j == 5 ? cplx{-1.0} : cplx{1.0}));
        CHECK(p.max_abs_diff(build_p_conjugated(t)) < 1e-12);
    }
}

TEST_CASE("diffusion operator: explicit two-qubit matrix") {
    const cplx h{0.5, 0.0}, ih{0.0, 0.5};
    CHECK(max_dev(build_diffusion(2), {{-h, ih, ih, -h},
                                       {ih, h, -h, -ih},
                                       {ih, -h, h, -ih},
                                       {-h, -ih, -ih, -h}}) < 1e-15);
}

TEST_CASE("diffusion operator: three-qubit first row") {
    // Row pattern (1, -i, -i, -1, -i, -1, -1, -3i) at the unitary scale 1/4.
    const CMatrix d = build_diffusion(3);
    const cplx pattern[8] = {1.0, -kI, -kI, -1.0, -kI, -1.0, -1.0, {0.0, -3.0}};
    for (int j = 0; j < 8; ++j) CHECK(std::abs(d(0, j) - 0.25 * pattern[j]) < 1e-15);
}

TEST_CASE("unitarity across the construction family") {
    for (int q = 2; q <= 8; ++q) {
        CHECK(is_unitary(build_w(q), 1e-12));
        CHECK(is_unitary(build_v(q), 1e-12));
        CHECK(is_unitary(build_diffusion(q), 1e-12));
        const TargetIndex t = TargetIndex::from_basis(q, (std::uint64_t{1} << q) / 3);
        CHECK(is_unitary(build_m(t), 1e-12));
        CHECK(is_unitary(build_p(t), 1e-12));
    }
    CHECK(is_unitary(rotation_x(Angle{1.234}), 1e-12));

    CMatrix perturbed = build_w(2);
    perturbed(1, 2) += 1e-6;
    CHECK_FALSE(is_unitary(perturbed, 1e-12));
}

TEST_CASE("TargetIndex labelings agree") {
    const TargetIndex t = TargetIndex::from_one_based(2, 1);
    CHECK(t.basis == 3);
    CHECK(t.one_based() == 1);
    CHECK(t.bitstring() == "11");
    CHECK(TargetIndex::from_one_based(2, 4).basis == 0);
    CHECK(TargetIndex::from_bitstring("101").basis == 5);
    CHECK(TargetIndex::from_bitstring("101").qubits == 3);
    CHECK(TargetIndex::from_basis(3, 5).bitstring() == "101");

    CHECK_THROWS_AS(TargetIndex::from_basis(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(TargetIndex::from_basis(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(TargetIndex::from_one_based(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(TargetIndex::from_one_based(2, 5), std::invalid_argument);
    CHECK_THROWS_AS(TargetIndex::from_bitstring("1x1"), std::invalid_argument);
    CHECK_THROWS_AS(TargetIndex::from_bitstring("1"), std::invalid_argument);
}

TEST_CASE("construction bounds") {
    CHECK_THROWS_AS(build_w(0), std::invalid_argument);
    CHECK_THROWS_AS(build_v(1), std::invalid_argument);
    CHECK_THROWS_AS(build_diffusion(1), std::invalid_argument);
    CHECK_THROWS_AS(build_w(11), std::length_error);
    CHECK_THROWS_AS(CMatrix::from_rows({{1.0, 0.0}, {0.0}}), std::invalid_argument);
}
