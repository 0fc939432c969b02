#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ionpair/engine.hpp"
#include "ionpair/oracle.hpp"

using namespace ionpair;

namespace {

const TargetIndex kMarked11 = TargetIndex::from_one_based(2, 1);

double max_amp_dev(const StateVector& s, std::initializer_list<cplx> expected) {
    double mx = 0.0;
    std::uint64_t i = 0;
    for (cplx e : expected) mx = std::max(mx, std::abs(s.amplitude(i++) - e));
    return mx;
}

}  // namespace

TEST_CASE("prepared state for two qubits") {
    const StateVector s = prepare_initial(2);
    CHECK(max_amp_dev(s, {-0.5, cplx{0.0, 0.5}, cplx{0.0, 0.5}, 0.5}) < 1e-15);
}

TEST_CASE("preparation from another start state is the matching W column") {
    // extension beyond the canonical all-ones start
    const StateVector s = prepare_initial(2, 0);
    const CMatrix w = build_w(2);
    for (std::uint64_t i = 0; i < 4; ++i)
        CHECK(std::abs(s.amplitude(i) - w(static_cast<int>(i), 0)) < 1e-14);
}

TEST_CASE("prepared state amplitudes at larger sizes") {
    const StateVector s3 = prepare_initial(3);
    CHECK(std::norm(s3.amplitude(7)) == doctest::Approx(0.125).epsilon(1e-12));

    const StateVector s5 = prepare_initial(5);
    const auto dense = build_w(5).apply(StateVector::basis_state(5, 31).amplitudes());
    for (std::uint64_t i = 0; i < 32; ++i)
        CHECK(std::abs(s5.amplitude(i) - dense[i]) < 1e-12);
}

TEST_CASE("amplitude inversion of the marked state") {
    StateVector s = prepare_initial(2);
    invert_marked(s, kMarked11);
    CHECK(max_amp_dev(s, {-0.5, cplx{0.0, 0.5}, cplx{0.0, 0.5}, -0.5}) < 1e-15);

    SUBCASE("zero amplitude stays zero") {
        StateVector z = StateVector::basis_state(2, 0);
        invert_marked(z, kMarked11);
        CHECK(z.amplitude(3) == cplx{});
    }
    SUBCASE("dimension mismatch") {
        StateVector z = StateVector::basis_state(3, 0);
        CHECK_THROWS_AS(invert_marked(z, kMarked11), std::invalid_argument);
    }
    SUBCASE("matches the dense phase flip on a random state") {
        std::mt19937 rng(41);
        std::normal_distribution<double> gauss;
        std::vector<cplx> amps(128);
        for (cplx& a : amps) a = {gauss(rng), gauss(rng)};
        StateVector s7(7, amps);
        const TargetIndex t = TargetIndex::from_basis(7, 77);
        invert_marked(s7, t);
        const auto expected = build_p(t).apply(std::span<const cplx>(amps));
        for (std::uint64_t i = 0; i < 128; ++i)
            CHECK(std::abs(s7.amplitude(i) - expected[i]) < 1e-12);
    }
}

TEST_CASE("diffusion finds the marked two-qubit state in one pass") {
    StateVector s = prepare_initial(2);
    invert_marked(s, kMarked11);
    apply_diffusion(s);
    CHECK(max_amp_dev(s, {0.0, 0.0, 0.0, 1.0}) < 1e-14);
}

TEST_CASE("diffusion on a basis vector reproduces the dense column") {
    StateVector s = StateVector::basis_state(3, 0);
    apply_diffusion(s);
    const cplx pattern[8] = {1.0, -kI, -kI, -1.0, -kI, -1.0, -1.0, {0.0, -3.0}};
    for (std::uint64_t j = 0; j < 8; ++j)
        CHECK(std::abs(s.amplitude(j) - 0.25 * pattern[j]) < 1e-14);
}

TEST_CASE("diffusion matches the dense operator on a random state") {
    std::mt19937 rng(43);
    std::normal_distribution<double> gauss;
    std::vector<cplx> amps(256);
    for (cplx& a : amps) a = {gauss(rng), gauss(rng)};

    StateVector s(8, amps);
    apply_diffusion(s);
    const auto expected = build_diffusion(8).apply(std::span<const cplx>(amps));
    for (std::uint64_t i = 0; i < 256; ++i)
        CHECK(std::abs(s.amplitude(i) - expected[i]) < 1e-10);
}

TEST_CASE("two-qubit search is exact and recurs every third step") {
    const Trajectory traj = run_search(2, kMarked11, 18);
    CHECK(traj.records[1][3] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(traj.records[2][3] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(traj.records[4][3] == doctest::Approx(1.0).epsilon(1e-14));

    const auto states = run_search_states(2, kMarked11, 6);
    const StateVector& prepared = states[0];
    for (int n : {3, 6}) {
        double dev = 0.0;
        for (std::uint64_t i = 0; i < 4; ++i)
            dev = std::max(dev, std::abs(states[static_cast<std::size_t>(n)].amplitude(i) -
                                         prepared.amplitude(i)));
        CHECK(dev < 1e-13);
    }

    const auto period = recurrence_period(traj, 1e-9);
    REQUIRE(period.has_value());
    CHECK(*period == 3);
}

TEST_CASE("every two-qubit marked state is found in one iteration") {
    for (std::uint64_t basis = 0; basis < 4; ++basis) {
        const Trajectory traj = run_search(2, TargetIndex::from_basis(2, basis), 1);
        CHECK(traj.records[1][basis] == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("three-qubit twin-amplitude lock") {
    // Searching |111> from |111>: amp(|000>) stays equal to -i amp(|111>).
    const auto states = run_search_states(3, TargetIndex::from_one_based(3, 1), 18);
    for (const StateVector& s : states)
        CHECK(std::abs(s.amplitude(0) + kI * s.amplitude(7)) < 1e-13);
}

TEST_CASE("three-qubit search has no short recurrence") {
    const Trajectory traj = run_search(3, TargetIndex::from_one_based(3, 1), 18);
    CHECK_FALSE(recurrence_period(traj, 1e-9).has_value());

    const auto states = run_search_states(3, TargetIndex::from_one_based(3, 1), 18);
    CHECK_FALSE(state_recurrence_period(states, 1e-9).has_value());
}

TEST_CASE("recurrence of a constant trajectory is 1") {
    Trajectory traj{2, kMarked11, {}};
    const std::vector<double> dist{0.25, 0.25, 0.25, 0.25};
    for (int k = 0; k < 5; ++k) traj.records.push_back(dist);
    const auto period = recurrence_period(traj, 1e-12);
    REQUIRE(period.has_value());
    CHECK(*period == 1);

    Trajectory single{2, kMarked11, {dist}};
    CHECK_THROWS_AS(recurrence_period(single, 1e-12), std::invalid_argument);
}

TEST_CASE("optimal iteration counts") {
    CHECK(optimal_iterations(4, 1) == 1);
    CHECK(optimal_iterations(16, 1) == 3);
    CHECK(optimal_iterations(8, 2) == 1);
    CHECK_THROWS_AS(optimal_iterations(12, 1), std::invalid_argument);
    CHECK_THROWS_AS(optimal_iterations(8, 0), std::invalid_argument);
    CHECK_THROWS_AS(optimal_iterations(8, 9), std::invalid_argument);
}

TEST_CASE("search reports") {
    SUBCASE("two qubits: exact peak, single winner") {
        const SearchReport r = search_report(run_search(2, kMarked11, 18));
        CHECK(r.peak_iteration == 1);
        CHECK(r.peak_probability == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(r.comaximal == std::vector<std::uint64_t>{3});
        REQUIRE(r.recurrence.has_value());
        CHECK(*r.recurrence == 3);
    }
    SUBCASE("three qubits: the co-maximal pair") {
        const SearchReport r = search_report(run_search(3, TargetIndex::from_one_based(3, 1), 18));
        CHECK(r.comaximal == std::vector<std::uint64_t>{0, 7});
        CHECK_FALSE(r.recurrence.has_value());
    }
    SUBCASE("four qubits: above one half within sqrt(N), single winner") {
        const Trajectory traj = run_search(4, TargetIndex::from_one_based(4, 1), 18);
        bool above = false;
        for (int n = 1; n <= 4; ++n) above = above || traj.records[static_cast<std::size_t>(n)][15] > 0.5;
        CHECK(above);
        const SearchReport r = search_report(traj);
        CHECK(r.comaximal == std::vector<std::uint64_t>{15});
    }
}

TEST_CASE("global phase of the prepared state changes nothing observable") {
    const TargetIndex marked = TargetIndex::from_one_based(3, 2);
    StateVector plain = prepare_initial(3);
    StateVector rotated = plain;
    const cplx phase = std::exp(cplx{0.0, 1.1});
    for (std::uint64_t i = 0; i < rotated.dim(); ++i)
        rotated.amplitude(i) = phase * rotated.amplitude(i);

    for (int n = 0; n < 18; ++n) {
        invert_marked(plain, marked);
        apply_diffusion(plain);
        invert_marked(rotated, marked);
        apply_diffusion(rotated);
    }
    const auto pp = plain.probabilities();
    const auto rp = rotated.probabilities();
    for (std::size_t i = 0; i < pp.size(); ++i) CHECK(std::abs(pp[i] - rp[i]) < 1e-12);
}

TEST_CASE("norm stays unit over a long run") {
    const auto states = run_search_states(6, TargetIndex::from_basis(6, 17), 100);
    CHECK(std::abs(states.back().norm_squared() - 1.0) < 1e-10);
}

TEST_CASE("engine bounds") {
    CHECK_THROWS_AS(run_search(1, kMarked11, 3), std::invalid_argument);
    CHECK_THROWS_AS(run_search(2, kMarked11, -1), std::invalid_argument);
    CHECK_THROWS_AS(run_search(3, kMarked11, 3), std::invalid_argument);
    CHECK_THROWS_AS(prepare_initial(21), std::invalid_argument);
}
