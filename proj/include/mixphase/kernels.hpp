#pragma once

// Data-parallel building blocks used by the field and solver loops.
// Every kernel has a serial reference implementation and an OpenMP one;
// for_each/reductions dispatch on the runtime backend. Reductions combine
// fixed-size chunks in index order, so results do not depend on the number
// of threads.

#include <cstddef>
#include <span>

namespace mixphase::kernels {

enum class Backend { serial, openmp };

// Active backend: OpenMP when compiled in and MIXPHASE_THREADS != 1,
// serial otherwise. MIXPHASE_THREADS=<n> caps the thread count.
Backend active_backend();
int thread_count();
void set_backend(Backend b);  // override, mainly for tests/bench

namespace detail {
constexpr std::size_t reduce_chunks = 256;
}

template <class F>
void for_each_serial(std::size_t n, F&& f) {
    for (std::size_t i = 0; i < n; ++i) f(i);
}

template <class F>
void for_each_openmp(std::size_t n, F&& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        f(static_cast<std::size_t>(i));
#else
    for_each_serial(n, f);
#endif
}

template <class F>
void for_each(std::size_t n, F&& f) {
    if (active_backend() == Backend::openmp)
        for_each_openmp(n, f);
    else
        for_each_serial(n, f);
}

double sum_serial(std::span<const double> a);
double sum_openmp(std::span<const double> a);
double sum(std::span<const double> a);

double dot_serial(std::span<const double> a, std::span<const double> b);
double dot_openmp(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);

double max_abs_serial(std::span<const double> a);
double max_abs_openmp(std::span<const double> a);
double max_abs(std::span<const double> a);

double min_serial(std::span<const double> a);
double min_openmp(std::span<const double> a);
double min(std::span<const double> a);

double max_serial(std::span<const double> a);
double max_openmp(std::span<const double> a);
double max(std::span<const double> a);

}  // namespace mixphase::kernels
