// Times the OpenMP kernels against the serial reference, and the factored
// engine against the dense oracle.
#include <chrono>
#include <cstdio>
#include <numbers>
#include <random>

#include "ionpair/engine.hpp"
#include "ionpair/oracle.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace ionpair;

namespace {

double time_of(int repeats, auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / repeats;
}

StateVector random_state(int qubits, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    std::vector<cplx> amps(std::uint64_t{1} << qubits);
    double n2 = 0.0;
    for (cplx& a : amps) {
        a = {gauss(rng), gauss(rng)};
        n2 += std::norm(a);
    }
    for (cplx& a : amps) a /= std::sqrt(n2);
    return StateVector(qubits, std::move(amps));
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel policy falls back to serial\n");
#endif

    std::mt19937 rng(2024);
    const CMatrix w = rotation_x(Angle{7.0 * std::numbers::pi / 4.0});

    std::printf("\nsingle-qubit kernel, one full sweep over all qubits\n");
    std::printf("%4s %12s %12s %9s\n", "q", "serial (ms)", "parallel (ms)", "speedup");
    for (int q : {12, 14, 16, 18, 20}) {
        StateVector s = random_state(q, rng);
        const int repeats = q <= 16 ? 20 : 5;
        const double serial = time_of(repeats, [&] {
            for (int qb = 0; qb < q; ++qb) apply_single_qubit(s, w, qb, Exec::Serial);
        });
        const double parallel = time_of(repeats, [&] {
            for (int qb = 0; qb < q; ++qb) apply_single_qubit(s, w, qb, Exec::Parallel);
        });
        std::printf("%4d %12.3f %12.3f %8.2fx\n", q, serial * 1e3, parallel * 1e3,
                    serial / parallel);
    }

    std::printf("\ndiffusion pass (W sweep, flip, W sweep)\n");
    std::printf("%4s %12s %12s %9s\n", "q", "serial (ms)", "parallel (ms)", "speedup");
    for (int q : {16, 18, 20}) {
        StateVector s = random_state(q, rng);
        const double serial = time_of(5, [&] { apply_diffusion(s, Exec::Serial); });
        const double parallel = time_of(5, [&] { apply_diffusion(s, Exec::Parallel); });
        std::printf("%4d %12.3f %12.3f %8.2fx\n", q, serial * 1e3, parallel * 1e3,
                    serial / parallel);
    }

    std::printf("\n18-iteration search, factored engine vs dense oracle\n");
    std::printf("%4s %14s %12s\n", "q", "factored (ms)", "dense (ms)");
    for (int q : {6, 8, 10}) {
        const TargetIndex marked = TargetIndex::from_one_based(q, 1);
        const double fast = time_of(10, [&] { run_search(q, marked, 18); });
        const double dense = time_of(q >= 10 ? 1 : 3, [&] { oracle::dense_run(q, marked, 18); });
        std::printf("%4d %14.3f %12.3f\n", q, fast * 1e3, dense * 1e3);
    }
    return 0;
}
