#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace mixphase {

// Uniform periodic grid on [0, length)^2, samples at (ix*h, iy*h) stored
// row-major with x fastest: index = iy*n + ix.
struct Grid2 {
    int n = 0;             // samples per axis, power of two, >= 8
    double length = 2.0 * std::numbers::pi;

    void validate() const {
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid2: n must be a power of two >= 8");
        if (!(length > 0.0))
            throw std::invalid_argument("Grid2: length must be positive");
    }

    double spacing() const { return length / n; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n; }

    // Signed integer frequency for axis index i in [0, n).
    int freq_int(int i) const { return i <= n / 2 ? i : i - n; }
    // Physical wavenumber for an integer frequency.
    double wavenumber(int k_int) const {
        return 2.0 * std::numbers::pi / length * k_int;
    }
    double max_wavenumber() const {
        // corner of the Fourier grid
        return wavenumber(n / 2) * std::numbers::sqrt2;
    }
    double x(int ix) const { return spacing() * ix; }
    double y(int iy) const { return spacing() * iy; }

    bool operator==(const Grid2&) const = default;
};

}  // namespace mixphase
