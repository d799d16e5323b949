#include "mixphase/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mixphase::kernels {

namespace {

int read_thread_env() {
#ifdef _OPENMP
    if (const char* env = std::getenv("MIXPHASE_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return std::min(n, omp_get_max_threads());
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Backend g_backend = [] {
#ifdef _OPENMP
    return read_thread_env() > 1 ? Backend::openmp : Backend::serial;
#else
    return Backend::serial;
#endif
}();

int g_threads = read_thread_env();

// Reductions accumulate per fixed chunk and combine in index order, so the
// result is bitwise independent of the thread count.
double sum_impl(std::span<const double> a, bool parallel) {
    const std::size_t n = a.size();
    const std::size_t nchunk = std::min<std::size_t>(detail::reduce_chunks, n ? n : 1);
    std::vector<double> partial(nchunk, 0.0);
    auto body = [&](std::size_t c) {
        const std::size_t lo = c * n / nchunk, hi = (c + 1) * n / nchunk;
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += a[i];
        partial[c] = acc;
    };
    parallel ? for_each_openmp(nchunk, body) : for_each_serial(nchunk, body);
    double acc = 0.0;
    for (double p : partial) acc += p;
    return acc;
}

double dot_impl(std::span<const double> a, std::span<const double> b, bool parallel) {
    const std::size_t n = a.size();
    const std::size_t nchunk = std::min<std::size_t>(detail::reduce_chunks, n ? n : 1);
    std::vector<double> partial(nchunk, 0.0);
    auto body = [&](std::size_t c) {
        const std::size_t lo = c * n / nchunk, hi = (c + 1) * n / nchunk;
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += a[i] * b[i];
        partial[c] = acc;
    };
    parallel ? for_each_openmp(nchunk, body) : for_each_serial(nchunk, body);
    double acc = 0.0;
    for (double p : partial) acc += p;
    return acc;
}

template <class Cmp>
double extreme_impl(std::span<const double> a, double init, Cmp better, bool parallel) {
    const std::size_t n = a.size();
    const std::size_t nchunk = std::min<std::size_t>(detail::reduce_chunks, n ? n : 1);
    std::vector<double> partial(nchunk, init);
    auto body = [&](std::size_t c) {
        const std::size_t lo = c * n / nchunk, hi = (c + 1) * n / nchunk;
        double acc = init;
        for (std::size_t i = lo; i < hi; ++i) acc = better(acc, a[i]);
        partial[c] = acc;
    };
    parallel ? for_each_openmp(nchunk, body) : for_each_serial(nchunk, body);
    double acc = init;
    for (double p : partial) acc = better(acc, p);
    return acc;
}

}  // namespace

Backend active_backend() { return g_backend; }
int thread_count() { return g_threads; }
void set_backend(Backend b) { g_backend = b; }

double sum_serial(std::span<const double> a) { return sum_impl(a, false); }
double sum_openmp(std::span<const double> a) { return sum_impl(a, true); }
double sum(std::span<const double> a) {
    return sum_impl(a, active_backend() == Backend::openmp);
}

double dot_serial(std::span<const double> a, std::span<const double> b) {
    return dot_impl(a, b, false);
}
double dot_openmp(std::span<const double> a, std::span<const double> b) {
    return dot_impl(a, b, true);
}
double dot(std::span<const double> a, std::span<const double> b) {
    return dot_impl(a, b, active_backend() == Backend::openmp);
}

namespace {
double take_max_abs(double acc, double x) { return std::max(acc, std::abs(x)); }
double take_min(double acc, double x) { return std::min(acc, x); }
double take_max(double acc, double x) { return std::max(acc, x); }
}  // namespace

double max_abs_serial(std::span<const double> a) {
    return extreme_impl(a, 0.0, take_max_abs, false);
}
double max_abs_openmp(std::span<const double> a) {
    return extreme_impl(a, 0.0, take_max_abs, true);
}
double max_abs(std::span<const double> a) {
    return extreme_impl(a, 0.0, take_max_abs, active_backend() == Backend::openmp);
}

double min_serial(std::span<const double> a) {
    return extreme_impl(a, std::numeric_limits<double>::infinity(), take_min, false);
}
double min_openmp(std::span<const double> a) {
    return extreme_impl(a, std::numeric_limits<double>::infinity(), take_min, true);
}
double min(std::span<const double> a) {
    return extreme_impl(a, std::numeric_limits<double>::infinity(), take_min,
                        active_backend() == Backend::openmp);
}

double max_serial(std::span<const double> a) {
    return extreme_impl(a, -std::numeric_limits<double>::infinity(), take_max, false);
}
double max_openmp(std::span<const double> a) {
    return extreme_impl(a, -std::numeric_limits<double>::infinity(), take_max, true);
}
double max(std::span<const double> a) {
    return extreme_impl(a, -std::numeric_limits<double>::infinity(), take_max,
                        active_backend() == Backend::openmp);
}

}  // namespace mixphase::kernels
