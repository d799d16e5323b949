#include "doctest.h"

#include <random>

#include "mixphase/symbols2p.hpp"
#include "test_helpers.hpp"

using namespace mixphase::symbols2p;

namespace {

double sym_residual(const Mat5& m) {
    return (m - m.transpose()).cwiseAbs().maxCoeff();
}

double herm_residual(const CMat5& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("flux_primitive matches the printed entries") {
    const auto [A1, A2] = flux_primitive(0.5, {1.0, 0.0}, {2.0, 0.0}, 1.0);
    CHECK(A1(0, 1) == 0.5);
    CHECK(A1(1, 0) == 2.0);  // gamma/B
    CHECK(A1(3, 3) == 2.0);  // v_L1
    CHECK(A1(0, 0) == 1.0);
    CHECK(A2(2, 0) == 2.0);
    CHECK(A2(0, 2) == 0.5);

    // zero velocities: zero diagonal, only the B and gamma/B couplings remain
    const auto [Z1, Z2] = flux_primitive(0.3, {0.0, 0.0}, {0.0, 0.0}, 0.7);
    CHECK(Z1.diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK(Z1(0, 1) == 0.3);
    CHECK(Z1(1, 0) == doctest::Approx(0.7 / 0.3));
    CHECK(Z2.diagonal().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("friedrichs symmetrizer: values, positivity, symmetry of S0*A") {
    const Mat5 S0 = friedrichs_symmetrizer(0.5, 1.0);
    CHECK(S0(0, 0) == 2.0);
    CHECK(S0(1, 1) == 0.5);
    CHECK(S0(3, 3) == 0.5);

    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = testutil::random_point(gen);
        const mixphase::symbols2p::Vec2 vS = p.w + (1.0 - p.B) * p.z;
        const mixphase::symbols2p::Vec2 vL = p.w - p.B * p.z;
        const auto [A1, A2] = flux_primitive(p.B, vS, vL, p.gamma);
        const Mat5 S = friedrichs_symmetrizer(p.B, p.gamma);
        CHECK(sym_residual(S * (p.xi.x() * A1 + p.xi.y() * A2)) <= 1e-13);
        CHECK(S.diagonal().minCoeff() ==
              doctest::Approx(std::min({p.gamma / p.B, p.B, 1.0 - p.B})));
    }
}

TEST_CASE("classical mixed symmetrizer") {
    FrozenPoint p;
    p.xi = {1.0, 0.0};
    p.B = 0.5;
    p.gamma = 1.0;
    const Mat5 A0 = classical_symmetrizer_mixed(p);
    CHECK(A0(0, 0) == 2.0);
    CHECK(A0(1, 1) == 1.0);
    CHECK(A0(3, 3) == 0.25);
    CHECK(sym_residual(A0) == 0.0);

    std::mt19937_64 gen(22);
    for (int trial = 0; trial < 100; ++trial) {
        const auto q = testutil::random_point(gen);
        const Mat5 A0q = classical_symmetrizer_mixed(q);
        const auto [T1, T2] = flux_mixed(q);
        CHECK(sym_residual(A0q * T1) <= 1e-13);
        CHECK(sym_residual(A0q * T2) <= 1e-13);
        // positive definite for the small-z sample range
        Eigen::SelfAdjointEigenSolver<Mat5> es(A0q, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues()(0) > 0.0);
    }
}

TEST_CASE("printed mixed fluxes equal the Jacobian conjugation") {
    // equilibrium read-off first
    FrozenPoint p;
    p.xi = {1.0, 0.0};
    p.B = 0.5;
    p.gamma = 1.0;
    const auto [A1, A2] = flux_mixed(p);
    CHECK(A1(0, 1) == 0.5);
    CHECK(A1(1, 0) == 1.0);   // gamma + z^2(1-2B) at z=0
    CHECK(A1(3, 0) == 2.0);   // gamma/B

    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto q = testutil::random_point(gen);
        const auto [P1, P2] = flux_mixed(q);
        const auto [C1, C2] = flux_mixed_conjugated(q);
        CHECK((P1 - C1).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((P2 - C2).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("unprojected symbol: homogeneity and equilibrium eigenvalues") {
    std::mt19937_64 gen(24);
    auto p = testutil::random_point(gen);
    const CMat5 s1 = symbol_A(p);
    auto p2 = p;
    p2.xi *= 3.5;
    const CMat5 s2 = symbol_A(p2);
    CHECK((s2 - 3.5 * s1).cwiseAbs().maxCoeff() <= 1e-13);

    FrozenPoint eq;
    eq.xi = {1.0, 0.0};
    eq.B = 0.5;
    eq.gamma = 1.0;
    const auto ev = dense_eigenvalues(xi_flux(eq));
    std::array<double, 5> re;
    for (int i = 0; i < 5; ++i) {
        re[i] = ev(i).real();
        CHECK(std::abs(ev(i).imag()) <= 1e-12);
    }
    std::ranges::sort(re);
    CHECK(re[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(re[4] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(re[1]) <= 1e-12);
    CHECK(std::abs(re[2]) <= 1e-12);
    CHECK(std::abs(re[3]) <= 1e-12);
}

TEST_CASE("analytic unprojected eigenvalues match the dense solver") {
    std::mt19937_64 gen(25);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = testutil::random_point(gen);
        const auto eig = eig_unprojected(p);
        const double scale = std::sqrt(p.gamma) * p.xi.norm() +
                             (p.w.norm() + p.z.norm()) * p.xi.norm();
        CHECK(match_eigenvalues(eig.eigvals, dense_eigenvalues(xi_flux(p)), scale) <=
              1e-10);
    }
}

TEST_CASE("U columns are eigenvectors and U U^-1 = I") {
    std::mt19937_64 gen(26);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = testutil::random_point(gen);
        const auto eig = eig_unprojected(p);
        CHECK((eig.U * eig.U_inv - Mat5::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
        const Mat5 A = xi_flux(p);
        for (int c = 0; c < 5; ++c) {
            const Vec5 col = eig.U.col(c);
            CHECK((A * col - eig.eigvals(c) * col).norm() / col.norm() <= 1e-10);
        }
    }
}

TEST_CASE("columns 4,5 of U reduce to the printed z=0 form") {
    FrozenPoint p;
    p.xi = {0.6, 0.8};
    p.B = 0.3;
    p.gamma = 1.44;
    const auto eig = eig_unprojected(p);
    const double sg = std::sqrt(p.gamma);
    Vec5 expect4, expect5;
    expect4 << -p.B / sg, p.B * 0.6, p.B * 0.8, 0.6, 0.8;
    expect5 << p.B / sg, p.B * 0.6, p.B * 0.8, 0.6, 0.8;
    CHECK((eig.U.col(3) - expect4).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((eig.U.col(4) - expect5).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("unprojected Lax symmetrizer") {
    std::mt19937_64 gen(27);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = testutil::random_point(gen);
        const Mat5 S = lax_symmetrizer_unprojected(p);
        CHECK(sym_residual(S) <= 1e-14);
        Eigen::SelfAdjointEigenSolver<Mat5> es(S, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues()(0) > 0.0);
        const Mat5 SA = S * xi_flux(p);
        const double rel = sym_residual(SA) / SA.cwiseAbs().maxCoeff();
        CHECK(rel <= 1e-12);

        auto p2 = p;
        p2.xi *= 7.0;  // degree-0 homogeneity
        CHECK((lax_symmetrizer_unprojected(p2) - S).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("leray symbol") {
    const Mat5 P = leray_symbol({1.0, 0.0});
    CHECK(P(1, 1) == 0.0);
    CHECK(P(2, 2) == 1.0);
    CHECK(P(1, 2) == 0.0);

    std::mt19937_64 gen(28);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Vector2d xi{u(gen), u(gen) + 1.5};
        const Mat5 Q = leray_symbol(xi);
        CHECK((Q * Q - Q).cwiseAbs().maxCoeff() <= 1e-14);
        Vec5 grad;
        grad << 0.0, xi.x(), xi.y(), 0.0, 0.0;
        CHECK((Q * grad).norm() <= 1e-14 * xi.norm());
    }
    CHECK_THROWS(leray_symbol({0.0, 0.0}));
}

TEST_CASE("projected symbol: product vs printed closed form") {
    std::mt19937_64 gen(29);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = testutil::random_point(gen);
        const auto check = pa_closed_form_check(p);
        CHECK(check.max_diff_corrected <= 1e-12);
    }
    // the literal transcription disagrees at generic points (the typos are real)
    FrozenPoint p;
    p.xi = {0.6, 0.8};
    p.B = 0.35;
    p.w = {0.1, -0.05};
    p.z = {0.12, 0.2};
    p.gamma = 1.1;
    CHECK(pa_closed_form_check(p).max_diff_printed > 1e-3);
}

TEST_CASE("projected symbol structure") {
    std::mt19937_64 gen(30);
    const auto p = testutil::random_point(gen);
    const Mat5 PA = projected_symbol(p);

    // rows 2,3 are xi-orthogonal: xi^T applied to the w-block rows vanishes
    const Eigen::Vector2d xi = p.xi;
    for (int col = 0; col < 5; ++col)
        CHECK(std::abs(xi.x() * PA(1, col) + xi.y() * PA(2, col)) <= 1e-13);

    // degree-1 homogeneity
    auto p2 = p;
    p2.xi *= 2.5;
    CHECK((projected_symbol(p2) - 2.5 * PA).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("deltas: direct values, positivity condition, homogeneity") {
    FrozenPoint p;
    p.xi = {1.0, 0.0};
    p.B = 0.5;
    p.gamma = 1.0;
    const Deltas d = deltas(p);
    CHECK(d.d1 == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(d.d2 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.d3 == doctest::Approx(-0.5).epsilon(1e-15));

    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 50; ++trial) {
        auto q = testutil::random_point(gen);
        const Deltas dq = deltas(q);
        const double zn = q.z.dot(q.xi) / q.xi.norm();
        CHECK((dq.d2 > 0.0) == (q.gamma > q.B * zn * zn));

        auto q2 = q;
        q2.xi *= 3.0;
        const Deltas dq2 = deltas(q2);
        CHECK(dq2.d1 == doctest::Approx(9.0 * dq.d1).epsilon(1e-12));
        CHECK(dq2.d2 == doctest::Approx(9.0 * dq.d2).epsilon(1e-12));
        CHECK(dq2.d3 == doctest::Approx(9.0 * dq.d3).epsilon(1e-12));
    }
}

TEST_CASE("hyperbolicity region classification") {
    // w=z=0: all six sufficient conditions reduce to powers of gamma
    for (double B : {0.1, 0.5, 0.9}) {
        for (double g : {0.2, 1.0, 4.9}) {
            FrozenPoint p;
            p.xi = {0.0, 1.0};
            p.B = B;
            p.gamma = g;
            const auto r = hyperbolicity_region(p);
            CHECK(r.sufficient_all);
            CHECK(r.pointwise == Region::interior);
        }
    }

    // gamma < B|z|^2 violates condition 3
    FrozenPoint p;
    p.xi = {1.0, 0.0};
    p.B = 0.5;
    p.z = {1.0, 0.0};
    p.gamma = 0.1;
    const auto r = hyperbolicity_region(p);
    CHECK_FALSE(r.sufficient_all);
    CHECK(r.first_violated == 3);

    // a point passing the xi-free conditions has sign-definite deltas on the circle
    std::mt19937_64 gen(32);
    int checked = 0;
    while (checked < 100) {
        auto q = testutil::random_point(gen);
        if (!hyperbolicity_region(q).sufficient_all) continue;
        ++checked;
        int sign1 = 0, sign3 = 0;
        bool ok = true;
        for (int i = 0; i < 360; ++i) {
            const double th = 2.0 * std::numbers::pi * i / 360.0;
            auto qc = q;
            qc.xi = {std::cos(th), std::sin(th)};
            const Deltas d = deltas(qc);
            if (!(d.d2 > 0.0)) ok = false;
            const int s1 = d.d1 > 0 ? 1 : -1;
            const int s3 = d.d3 > 0 ? 1 : -1;
            if (sign1 == 0) sign1 = s1;
            if (sign3 == 0) sign3 = s3;
            if (s1 != sign1 || s3 != sign3) ok = false;
        }
        CHECK(ok);
    }

    // points failing the sufficient conditions with an actual sign change on
    // the circle exist (violated classification is reachable)
    FrozenPoint bad;
    bad.xi = {1.0, 0.0};
    bad.B = 0.5;
    bad.z = {1.2, 0.0};
    bad.gamma = 0.5;
    CHECK_FALSE(hyperbolicity_region(bad).sufficient_all);
    bool found_nonpositive = false;
    for (int i = 0; i < 360; ++i) {
        const double th = 2.0 * std::numbers::pi * i / 360.0;
        auto qc = bad;
        qc.xi = {std::cos(th), std::sin(th)};
        if (!(deltas(qc).d2 > 0.0)) found_nonpositive = true;
    }
    CHECK(found_nonpositive);
}

TEST_CASE("projected eigendecomposition at the equilibrium") {
    FrozenPoint p;
    p.xi = {1.0, 0.0};
    p.B = 0.5;
    p.gamma = 1.0;
    const auto eig = eig_projected(p);
    const double s = std::sqrt(0.5);
    CHECK(eig.eigvals(0) == 0.0);
    CHECK(eig.eigvals(1) == 0.0);
    CHECK(eig.eigvals(2) == 0.0);
    CHECK(eig.eigvals(3) == doctest::Approx(-s).epsilon(1e-14));
    CHECK(eig.eigvals(4) == doctest::Approx(s).epsilon(1e-14));
}

TEST_CASE("projected eigenvalues match the dense solver at interior points") {
    std::mt19937_64 gen(33);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = testutil::random_point(gen);
        const auto hr = hyperbolicity_region(p);
        if (hr.pointwise != Region::interior) continue;
        const auto eig = eig_projected(p);
        const double scale = std::sqrt(p.gamma) * p.xi.norm() +
                             (p.w.norm() + p.z.norm()) * p.xi.norm();
        CHECK(match_eigenvalues(eig.eigvals, dense_eigenvalues(projected_symbol(p)),
                                scale) <= 1e-10);

        // degree-1 homogeneity of the eigenvalue formulas
        auto p2 = p;
        p2.xi *= 4.0;
        const auto eig2 = eig_projected(p2);
        CHECK((eig2.eigvals - 4.0 * eig.eigvals).cwiseAbs().maxCoeff() <=
              1e-12 * scale * 4.0);
    }
}

TEST_CASE("explicit rows/columns of V and V^-1 are eigenvectors; sub-block identity") {
    std::mt19937_64 gen(34);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = testutil::random_point(gen);
        if (hyperbolicity_region(p).pointwise != Region::interior) continue;
        const auto eig = eig_projected(p);
        const Mat5 PA = projected_symbol(p);

        for (int c = 1; c < 5; ++c) {
            const Vec5 col = eig.V.col(c);
            CHECK((PA * col - eig.eigvals(c) * col).norm() / col.norm() <= 1e-10);
        }
        for (int r = 0; r < 3; ++r) {
            const Vec5 row = eig.V_inv.row(r).transpose();
            CHECK((PA.transpose() * row - eig.eigvals(r) * row).norm() / row.norm() <=
                  1e-10);
        }

        // rows 1-3 of V^-1 against columns 2-5 of V give the identity pattern
        const Eigen::Matrix<double, 3, 4> blk =
            eig.V_inv.topRows(3) * eig.V.rightCols(4);
        Eigen::Matrix<double, 3, 4> expect = Eigen::Matrix<double, 3, 4>::Zero();
        expect(1, 0) = 1.0;
        expect(2, 1) = 1.0;
        CHECK((blk - expect).cwiseAbs().maxCoeff() <= 1e-10);

        // with the reconstructed entries the full inverse holds
        CHECK((eig.V_inv * eig.V - Mat5::Identity()).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("degenerate points are rejected with a region diagnostic") {
    FrozenPoint p;
    p.xi = {1.0, 0.0};
    p.B = 0.5;
    p.z = {1.5, 0.0};
    p.gamma = 1.125;  // Delta2 = gamma - B (z.xi)^2 = 0
    CHECK_THROWS_AS(eig_projected(p), degenerate_point_error);
}

TEST_CASE("skew symmetrization of the projected symbol") {
    FrozenPoint eq;
    eq.xi = {1.0, 0.0};
    eq.B = 0.5;
    eq.gamma = 1.0;
    CHECK(skew_check(eq) <= 1e-12);

    std::mt19937_64 gen(35);
    int done = 0;
    while (done < 100) {
        const auto p = testutil::random_point(gen);
        if (hyperbolicity_region(p).pointwise != Region::interior) continue;
        ++done;
        CHECK(skew_check(p) <= 1e-10);

        // negative control: identity does not symmetrize
        const CMat5 M = std::complex<double>(0, 1) *
                        projected_symbol(p).cast<std::complex<double>>();
        const double raw = (M + M.adjoint()).norm() / M.norm();
        CHECK(raw > 0.1);
    }
}
