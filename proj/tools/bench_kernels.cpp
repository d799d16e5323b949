// Timing comparison of the serial reference kernels against the OpenMP ones,
// on the array sizes the solver actually touches.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "mixphase/kernels.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <class F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        f();
        const auto t1 = clock_type::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main() {
    using namespace mixphase;
    std::printf("threads: %d\n", kernels::thread_count());
    std::printf("%-10s %-14s %12s %12s %8s\n", "n", "kernel", "serial[ms]", "openmp[ms]",
                "speedup");

    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    for (std::size_t n : {std::size_t(1) << 16, std::size_t(1) << 20, std::size_t(1) << 24}) {
        std::vector<double> a(n), b(n), c(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = dist(gen);
            b[i] = dist(gen);
        }

        const int reps = n > (1u << 22) ? 3 : 10;

        auto saxpy_serial = [&] {
            kernels::for_each_serial(n, [&](std::size_t i) { c[i] = 2.0 * a[i] + b[i]; });
        };
        auto saxpy_omp = [&] {
            kernels::for_each_openmp(n, [&](std::size_t i) { c[i] = 2.0 * a[i] + b[i]; });
        };
        const double ts = time_best_of(reps, saxpy_serial);
        const double tp = time_best_of(reps, saxpy_omp);
        std::printf("%-10zu %-14s %12.3f %12.3f %8.2f\n", n, "axpy", ts * 1e3, tp * 1e3,
                    ts / tp);

        volatile double sink = 0.0;
        const double ts2 = time_best_of(reps, [&] { sink = kernels::sum_serial(a); });
        const double tp2 = time_best_of(reps, [&] { sink = kernels::sum_openmp(a); });
        std::printf("%-10zu %-14s %12.3f %12.3f %8.2f\n", n, "sum", ts2 * 1e3, tp2 * 1e3,
                    ts2 / tp2);

        const double ts3 = time_best_of(reps, [&] { sink = kernels::dot_serial(a, b); });
        const double tp3 = time_best_of(reps, [&] { sink = kernels::dot_openmp(a, b); });
        std::printf("%-10zu %-14s %12.3f %12.3f %8.2f\n", n, "dot", ts3 * 1e3, tp3 * 1e3,
                    ts3 / tp3);

        const double ts4 = time_best_of(reps, [&] { sink = kernels::max_abs_serial(a); });
        const double tp4 = time_best_of(reps, [&] { sink = kernels::max_abs_openmp(a); });
        std::printf("%-10zu %-14s %12.3f %12.3f %8.2f\n", n, "max_abs", ts4 * 1e3,
                    tp4 * 1e3, ts4 / tp4);
        (void)sink;
    }
    return 0;
}
