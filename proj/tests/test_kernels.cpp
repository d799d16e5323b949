#include "doctest.h"

#include <random>
#include <vector>

#include "mixphase/kernels.hpp"

using namespace mixphase;

TEST_CASE("elementwise kernels agree bitwise between backends") {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> a(100000), b(a.size());
    for (auto& x : a) x = dist(gen);

    std::vector<double> out_s(a.size()), out_p(a.size());
    kernels::for_each_serial(a.size(), [&](std::size_t i) { out_s[i] = 3.0 * a[i] - 1.0; });
    kernels::for_each_openmp(a.size(), [&](std::size_t i) { out_p[i] = 3.0 * a[i] - 1.0; });
    CHECK(out_s == out_p);
}

TEST_CASE("reductions are bitwise identical across backends") {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (std::size_t n : {std::size_t(1), std::size_t(255), std::size_t(256),
                          std::size_t(100003)}) {
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = dist(gen);
            b[i] = dist(gen);
        }
        CHECK(kernels::sum_serial(a) == kernels::sum_openmp(a));
        CHECK(kernels::dot_serial(a, b) == kernels::dot_openmp(a, b));
        CHECK(kernels::max_abs_serial(a) == kernels::max_abs_openmp(a));
        CHECK(kernels::min_serial(a) == kernels::min_openmp(a));
        CHECK(kernels::max_serial(a) == kernels::max_openmp(a));
    }
}

TEST_CASE("reduction values are correct on small inputs") {
    std::vector<double> a{1.0, -2.0, 3.5, 0.25};
    CHECK(kernels::sum(a) == doctest::Approx(2.75));
    CHECK(kernels::max_abs(a) == 3.5);
    CHECK(kernels::min(a) == -2.0);
    CHECK(kernels::max(a) == 3.5);
    std::vector<double> b{2.0, 1.0, 0.0, 4.0};
    CHECK(kernels::dot(a, b) == doctest::Approx(2.0 - 2.0 + 0.0 + 1.0));
}
