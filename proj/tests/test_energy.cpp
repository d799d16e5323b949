#include "doctest.h"

#include <cmath>
#include <random>

#include "mixphase/energy.hpp"
#include "mixphase/solver.hpp"
#include "mixphase/spectral.hpp"
#include "test_helpers.hpp"

using namespace mixphase;
using namespace mixphase::energy;

namespace {

const Grid2 kGrid{32, 2.0 * std::numbers::pi};
const ModelConstants kConstants{1.0, 2.0, 1.0, 1.0};

ScalarField cosine_mode(const Grid2& g, int kx, int ky, double amp) {
    ScalarField f(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
            f(ix, iy) =
                amp * std::cos(2.0 * std::numbers::pi * (kx * ix + ky * iy) / g.n);
    return f;
}

}  // namespace

TEST_CASE("sobolev norm: zero field, s=0, single mode") {
    MixedState zero(kGrid);
    CHECK(sobolev_norm(zero, 3.0) == 0.0);

    std::mt19937_64 gen(81);
    const MixedState v = testutil::random_mixed(kGrid, gen, 0.3);
    CHECK(sobolev_norm(v, 0.0) == doctest::Approx(l2_norm(v)).epsilon(1e-13));

    // single cosine mode: ||f||^2 = a^2/2 under the mean-square convention,
    // so the H^s norm is (a/sqrt(2)) (1+k0^2)^(s/2)
    const double a = 0.7, s = 2.5;
    const int k0 = 3;
    MixedState m(kGrid);
    m.B = cosine_mode(kGrid, k0, 0, a);
    const double expect = a / std::numbers::sqrt2 * std::pow(1.0 + k0 * k0, s / 2.0);
    CHECK(sobolev_norm(m, s) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("sobolev norm agrees with an independent direct summation") {
    std::mt19937_64 gen(82);
    const MixedState v = testutil::random_mixed(kGrid, gen, 0.2);
    const double s = 3.0;

    // independent route: second summation over explicitly conjugate-completed
    // full-lattice coefficients
    const SpectralField comps[5] = {forward(v.B), forward(v.w.x), forward(v.w.y),
                                    forward(v.z.x), forward(v.z.y)};
    double acc = 0.0;
    const int n = kGrid.n;
    for (int ky = -n / 2; ky < n / 2; ++ky) {
        for (int kx = -n / 2; kx < n / 2; ++kx) {
            const double w = std::pow(
                1.0 + kGrid.wavenumber(kx) * kGrid.wavenumber(kx) +
                    kGrid.wavenumber(ky) * kGrid.wavenumber(ky),
                s);
            for (const auto& f : comps) {
                std::complex<double> c;
                if (kx >= 0)
                    c = f.at(kx, (ky + n) % n);
                else
                    c = std::conj(f.at(-kx, ((-ky) + n) % n));
                acc += w * std::norm(c);
            }
        }
    }
    CHECK(sobolev_norm(v, s) == doctest::Approx(std::sqrt(acc)).epsilon(1e-12));
}

TEST_CASE("sigma energy equals the Sobolev energy on low modes") {
    // data supported at |kappa| <= lambda only: theta = 1 there, Sigma = I
    const double lambda = 4.0;
    MixedState v(kGrid);
    v.B = cosine_mode(kGrid, 2, 1, 0.4);
    v.z.x = cosine_mode(kGrid, 0, 3, 0.2);
    const auto frozen = frozen_at_equilibrium(kConstants);
    const double s = 3.0;
    const double e = sigma_energy(v, frozen, s, lambda);
    const double hs = sobolev_norm(v, s);
    CHECK(e == doctest::Approx(hs * hs).epsilon(1e-12));
}

TEST_CASE("sigma energy is bounded by the equivalence constants") {
    std::mt19937_64 gen(83);
    const auto frozen = frozen_at_equilibrium(kConstants);
    const double s = 3.0, lambda = 2.0;
    const auto [clo, chi] = norm_equivalence_constants(frozen, s, lambda, kGrid);
    CHECK(clo > 0.0);
    CHECK(chi >= clo);

    for (int trial = 0; trial < 5; ++trial) {
        const MixedState v = testutil::random_mixed(kGrid, gen, 0.2);
        const double e = sigma_energy(v, frozen, s, lambda);
        const double hs2 = std::pow(sobolev_norm(v, s), 2);
        CHECK(e >= clo * hs2 * (1.0 - 1e-10));
        CHECK(e <= chi * hs2 * (1.0 + 1e-10));
    }
}

TEST_CASE("equivalence constants: refinement stability and low-mode identity") {
    const auto frozen = frozen_at_equilibrium(kConstants);
    const double s = 3.0, lambda = 2.0;
    const auto [c1lo, c1hi] = norm_equivalence_constants(frozen, s, lambda, kGrid);
    const auto [c2lo, c2hi] =
        norm_equivalence_constants(frozen, s, lambda, Grid2{64, kGrid.length});
    CHECK(std::abs(c2lo - c1lo) <= 0.01 * c1lo);
    CHECK(std::abs(c2hi - c1hi) <= 0.01 * c1hi);

    // a grid resolving only modes below the cutoff has Sigma = I identically:
    // n = 8, length chosen so the largest wavenumber is under lambda
    const Grid2 tiny{8, 16.0 * std::numbers::pi};
    const auto [tlo, thi] =
        norm_equivalence_constants(frozen, s, /*lambda=*/16.0, tiny);
    CHECK(tlo == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(thi == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sigma symbol is positive definite modewise") {
    const auto frozen = frozen_at_equilibrium(kConstants);
    const auto [clo, chi] = norm_equivalence_constants(frozen, 3.0, 2.0, kGrid);
    CHECK(clo > 0.0);  // min eigenvalue over all modes
}

TEST_CASE("gronwall fit: equilibrium flagged degenerate") {
    SimConfig cfg;
    cfg.grid = kGrid;
    cfg.constants = kConstants;
    cfg.epsilon = 0.1;
    cfg.dt = 0.4 * kGrid.spacing() / 1.5;
    cfg.t_end = 15 * cfg.dt;
    const TrajectoryRecord rec = integrate(MixedState(kGrid), cfg);
    const GronwallFit fit = gronwall_fit(rec);
    CHECK(fit.degenerate);
    CHECK(fit.c == 0.0);
    CHECK(std::isinf(fit.predicted_T));
}

TEST_CASE("gronwall fit: envelope dominates the trajectory") {
    SimConfig cfg;
    cfg.grid = kGrid;
    cfg.constants = kConstants;
    cfg.epsilon = 0.2;
    cfg.dt = 0.4 * kGrid.spacing() / 1.5;
    cfg.t_end = 60 * cfg.dt;
    cfg.record_every = 2;
    const MixedState v0 = make_initial_data(kGrid, kConstants, 1e-3, 23, 3.0);
    const TrajectoryRecord rec = integrate(v0, cfg);
    REQUIRE(rec.reason == TrajectoryRecord::Stop::completed);
    const GronwallFit fit = gronwall_fit(rec);
    CHECK_FALSE(fit.degenerate);
    CHECK(fit.M == doctest::Approx(rec.samples.front().hs_norm));
    // envelope property: log norm <= log M + c t at every sample
    for (const auto& s : rec.samples)
        CHECK(std::log(s.hs_norm) <= std::log(fit.M) + fit.c * s.t + 1e-12);
}

TEST_CASE("gronwall fit requires enough records") {
    TrajectoryRecord rec;
    rec.samples.resize(4);
    CHECK_THROWS_AS(gronwall_fit(rec), validation_error);
}

TEST_CASE("epsilon convergence study on a short horizon") {
    SimConfig cfg;
    cfg.grid = kGrid;
    cfg.constants = kConstants;
    cfg.dt = 0.4 * kGrid.spacing() / 1.5;
    cfg.t_end = 20 * cfg.dt;
    cfg.record_every = 4;
    const MixedState v0 = make_initial_data(kGrid, kConstants, 1e-3, 29, 3.0);

    const std::vector<double> eps{0.4, 0.2, 0.1, 0.05};
    const auto rows = epsilon_convergence_study(cfg, v0, eps);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].distance > rows[1].distance);
    CHECK(rows[1].distance > rows[2].distance);
    CHECK(rows[0].order >= 1.0);
    CHECK(rows[1].order >= 1.0);
    CHECK(std::isnan(rows[2].order));

    // amplitude-0 data: all distances zero
    const auto rows0 =
        epsilon_convergence_study(cfg, MixedState(kGrid), {0.4, 0.2, 0.1});
    for (const auto& r : rows0) CHECK(r.distance == 0.0);

    CHECK_THROWS_AS(epsilon_convergence_study(cfg, v0, {0.4, 0.2}), validation_error);
    CHECK_THROWS_AS(epsilon_convergence_study(cfg, v0, {0.1, 0.2, 0.4}),
                    validation_error);
}
