#include "mixphase/symbols2p.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mixphase::symbols2p {

namespace {
constexpr double kBoundaryTol = 1e-12;
}

void FrozenPoint::validate() const {
    if (!(xi.squaredNorm() > 0.0))
        throw std::invalid_argument("FrozenPoint: xi must be nonzero");
    if (!(B > 0.0 && B < 1.0))
        throw std::invalid_argument("FrozenPoint: B must lie in (0,1)");
    if (!(gamma > 0.0)) throw std::invalid_argument("FrozenPoint: gamma must be > 0");
}

std::pair<Mat5, Mat5> flux_primitive(double B, const Vec2& v_S, const Vec2& v_L,
                                     double gamma) {
    if (!(B > 0.0 && B < 1.0))
        throw std::invalid_argument("flux_primitive: B must lie in (0,1)");
    Mat5 A1 = Mat5::Zero(), A2 = Mat5::Zero();
    A1(0, 0) = v_S.x();
    A1(0, 1) = B;
    A1(1, 0) = gamma / B;
    A1(1, 1) = v_S.x();
    A1(2, 2) = v_S.x();
    A1(3, 3) = v_L.x();
    A1(4, 4) = v_L.x();

    A2(0, 0) = v_S.y();
    A2(0, 2) = B;
    A2(1, 1) = v_S.y();
    A2(2, 0) = gamma / B;
    A2(2, 2) = v_S.y();
    A2(3, 3) = v_L.y();
    A2(4, 4) = v_L.y();
    return {A1, A2};
}

Mat5 friedrichs_symmetrizer(double B, double gamma) {
    if (!(B > 0.0 && B < 1.0))
        throw std::invalid_argument("friedrichs_symmetrizer: B must lie in (0,1)");
    Vec5 d;
    d << gamma / B, B, B, 1.0 - B, 1.0 - B;
    return d.asDiagonal();
}

Mat5 classical_symmetrizer_mixed(const FrozenPoint& p) {
    p.validate();
    const double B = p.B, g = p.gamma;
    const double z1 = p.z.x(), z2 = p.z.y();
    Mat5 m = Mat5::Zero();
    m(0, 0) = g / B + p.z.squaredNorm();
    m(0, 1) = m(1, 0) = -z1;
    m(0, 2) = m(2, 0) = -z2;
    m(1, 1) = 1.0;
    m(2, 2) = 1.0;
    m(3, 3) = B * (1.0 - B);
    m(4, 4) = B * (1.0 - B);
    return m;
}

Mat5 phi_jacobian(double B, const Vec2& v_S, const Vec2& v_L) {
    const Vec2 z = v_S - v_L;
    Mat5 J = Mat5::Zero();
    J(0, 0) = 1.0;
    J(1, 0) = z.x();
    J(1, 1) = B;
    J(1, 3) = 1.0 - B;
    J(2, 0) = z.y();
    J(2, 2) = B;
    J(2, 4) = 1.0 - B;
    J(3, 1) = 1.0;
    J(3, 3) = -1.0;
    J(4, 2) = 1.0;
    J(4, 4) = -1.0;
    return J;
}

std::pair<Mat5, Mat5> flux_mixed(const FrozenPoint& p) {
    p.validate();
    const double B = p.B, g = p.gamma;
    const double w1 = p.w.x(), w2 = p.w.y(), z1 = p.z.x(), z2 = p.z.y();
    const double q = 1.0 - 2.0 * B;

    Mat5 A1;
    A1 << w1 + z1 * q, B, 0, B * (1 - B), 0,
        g + z1 * z1 * q, w1 + B * z1, 0, 2 * B * z1 * (1 - B), 0,
        z1 * z2 * q, B * z2, w1, B * z2 * (1 - B), B * z1 * (1 - B),
        g / B - z1 * z1, z1, 0, w1 + z1 * q, 0,
        -z1 * z2, 0, z1, 0, w1 + z1 * q;

    Mat5 A2;
    A2 << w2 + z2 * q, 0, B, 0, B * (1 - B),
        z1 * z2 * q, w2, B * z1, B * z2 * (1 - B), B * z1 * (1 - B),
        g + z2 * z2 * q, 0, w2 + B * z2, 0, 2 * B * z2 * (1 - B),
        -z1 * z2, z2, 0, w2 + z2 * q, 0,
        g / B - z2 * z2, 0, z2, 0, w2 + z2 * q;
    return {A1, A2};
}

std::pair<Mat5, Mat5> flux_mixed_conjugated(const FrozenPoint& p) {
    p.validate();
    const Vec2 v_S = p.w + (1.0 - p.B) * p.z;
    const Vec2 v_L = p.w - p.B * p.z;
    const auto [A1, A2] = flux_primitive(p.B, v_S, v_L, p.gamma);
    const Mat5 J = phi_jacobian(p.B, v_S, v_L);
    const Mat5 Ji = J.inverse();
    return {J * A1 * Ji, J * A2 * Ji};
}

Mat5 xi_flux(const FrozenPoint& p) {
    const auto [A1, A2] = flux_mixed(p);
    return p.xi.x() * A1 + p.xi.y() * A2;
}

CMat5 symbol_A(const FrozenPoint& p) {
    return std::complex<double>(0.0, 1.0) * xi_flux(p).cast<std::complex<double>>();
}

UnprojectedEig eig_unprojected(const FrozenPoint& p) {
    p.validate();
    const double B = p.B, g = p.gamma, sg = std::sqrt(g);
    const double x1 = p.xi.x(), x2 = p.xi.y(), nxi = p.xi.norm();
    const double z1 = p.z.x(), z2 = p.z.y();
    const double zdx = p.z.dot(p.xi);

    UnprojectedEig out;
    const double lam_L = (p.w - B * p.z).dot(p.xi);
    const double lam_S = (p.w + (1.0 - B) * p.z).dot(p.xi);
    out.eigvals << lam_L, lam_L, lam_S, lam_S - sg * nxi, lam_S + sg * nxi;

    Mat5& U = out.U;
    U << 0, 0, 0, -B / sg, B / sg,
        -(1 - B), 0, -B * x2 / nxi, B * (g * x1 - z1 * sg * nxi) / (g * nxi),
        B * (g * x1 + z1 * sg * nxi) / (g * nxi),
        0, -(1 - B), B * x1 / nxi, B * (g * x2 - z2 * sg * nxi) / (g * nxi),
        B * (g * x2 + z2 * sg * nxi) / (g * nxi),
        1, 0, -x2 / nxi, x1 / nxi, x1 / nxi,
        0, 1, x1 / nxi, x2 / nxi, x2 / nxi;

    Mat5& Ui = out.U_inv;
    Ui << z1, -1, 0, B, 0,
        z2, 0, -1, 0, B,
        (x2 * z1 - x1 * z2) / nxi, -x2 / nxi, x1 / nxi, -(1 - B) * x2 / nxi,
        (1 - B) * x1 / nxi,
        -(sg * nxi + B * zdx) / (2 * B * nxi), x1 / (2 * nxi), x2 / (2 * nxi),
        (1 - B) * x1 / (2 * nxi), (1 - B) * x2 / (2 * nxi),
        (sg * nxi - B * zdx) / (2 * B * nxi), x1 / (2 * nxi), x2 / (2 * nxi),
        (1 - B) * x1 / (2 * nxi), (1 - B) * x2 / (2 * nxi);
    return out;
}

Mat5 lax_symmetrizer_unprojected(const FrozenPoint& p) {
    const Mat5 Ui = eig_unprojected(p).U_inv;
    return Ui.transpose() * Ui;
}

Mat5 leray_symbol(const Vec2& xi) {
    const double k2 = xi.squaredNorm();
    if (!(k2 > 0.0)) throw std::invalid_argument("leray_symbol: xi must be nonzero");
    Mat5 P = Mat5::Identity();
    P(1, 1) = 1.0 - xi.x() * xi.x() / k2;
    P(1, 2) = -xi.x() * xi.y() / k2;
    P(2, 1) = -xi.x() * xi.y() / k2;
    P(2, 2) = 1.0 - xi.y() * xi.y() / k2;
    return P;
}

Mat5 projected_symbol(const FrozenPoint& p) {
    return leray_symbol(p.xi) * xi_flux(p);
}

ClosedFormCheck pa_closed_form_check(const FrozenPoint& p) {
    p.validate();
    const double B = p.B, g = p.gamma;
    const double x1 = p.xi.x(), x2 = p.xi.y();
    const double n2 = p.xi.squaredNorm();
    const double z1 = p.z.x(), z2 = p.z.y();
    const double zdx = p.z.dot(p.xi), wdx = p.w.dot(p.xi);
    const double cross = x2 * z1 - x1 * z2;
    const double q = 1.0 - 2.0 * B;
    const double drift = wdx + q * zdx;

    const double mu1 = zdx * cross;
    const double mu2 = wdx * x2 + B * x1 * cross;
    const double mu3_printed = wdx * x1 + B * x2 * cross;
    const double mu3_fixed = wdx * x1 - B * x2 * cross;
    const double mu4 = z2 * (x2 * x2 - x1 * x1) + 2 * z1 * x1 * x2;
    const double mu5 = z1 * (x1 * x1 - x2 * x2) + 2 * z2 * x1 * x2;

    auto assemble = [&](double mu3, double entry44) {
        Mat5 M;
        M << drift, B * x1, B * x2, B * (1 - B) * x1, B * (1 - B) * x2,
            x2 * q * mu1 / n2, x2 * mu2 / n2, -x2 * mu3 / n2,
            B * (1 - B) * x2 * mu4 / n2, -B * (1 - B) * x2 * mu5 / n2,
            -x1 * q * mu1 / n2, -x1 * mu2 / n2, x1 * mu3 / n2,
            -B * (1 - B) * x1 * mu4 / n2, B * (1 - B) * x1 * mu5 / n2,
            g * x1 / B - z1 * zdx, zdx, 0, entry44, 0,
            g * x2 / B - z2 * zdx, 0, zdx, 0, drift;
        return M;
    };

    ClosedFormCheck out;
    out.product = projected_symbol(p);
    out.printed = assemble(mu3_printed, wdx + q);  // "(w+(1-2B)).xi" read literally
    out.corrected = assemble(mu3_fixed, drift);
    out.max_diff_printed = (out.product - out.printed).cwiseAbs().maxCoeff();
    out.max_diff_corrected = (out.product - out.corrected).cwiseAbs().maxCoeff();
    return out;
}

Deltas deltas(const FrozenPoint& p) {
    p.validate();
    const double zdx = p.z.dot(p.xi), wdx = p.w.dot(p.xi);
    const double n2 = p.xi.squaredNorm();
    const double B = p.B, g = p.gamma;
    Deltas d;
    d.d1 = (1 - B) * zdx * zdx - g * n2 + wdx * zdx;
    d.d2 = g * n2 - B * zdx * zdx;
    d.d3 = (1 - 3 * B * (1 - B)) * zdx * zdx + wdx * wdx - g * (1 - B) * n2 +
           2 * (1 - 2 * B) * wdx * zdx;
    return d;
}

HyperbolicityReport hyperbolicity_region(const FrozenPoint& p) {
    p.validate();
    HyperbolicityReport r;
    r.delta = deltas(p);
    const double n2 = p.xi.squaredNorm();
    r.scale = (p.gamma + p.w.squaredNorm() + p.z.squaredNorm()) * n2;

    const double tol = kBoundaryTol * r.scale;
    const bool d1_zero = std::abs(r.delta.d1) < tol;
    const bool d2_zero = std::abs(r.delta.d2) < tol;
    const bool d3_zero = std::abs(r.delta.d3) < tol;
    if (r.delta.d2 > 0.0 && !d1_zero && !d2_zero && !d3_zero)
        r.pointwise = Region::interior;
    else if (d1_zero || d2_zero || d3_zero)
        r.pointwise = Region::boundary;
    else
        r.pointwise = Region::violated;

    const double B = p.B, g = p.gamma;
    const double w1 = p.w.x(), w2 = p.w.y(), z1 = p.z.x(), z2 = p.z.y();
    const double wz = p.w.dot(p.z), zz = p.z.squaredNorm(), ww = p.w.squaredNorm();
    const double a = 1 - 3 * B * (1 - B);
    r.sufficient_slack[0] = 2 * g - ((1 - B) * zz + wz);
    r.sufficient_slack[1] =
        g * g - (g * (1 - B) * zz + g * wz + w1 * z2 * z2 / 4 + w2 * z1 * z1 / 4);
    r.sufficient_slack[2] = g - B * zz;
    r.sufficient_slack[3] = 2 * g - B * zz;
    r.sufficient_slack[4] = 2 * g * (1 - B) - (a * zz + 2 * (1 - 2 * B) * wz + ww);
    const double h1 = a * z1 * z1 + 2 * w1 * z1 * (1 - 2 * B) + w1 * w1;
    const double h2 = a * z2 * z2 + 2 * w2 * z2 * (1 - 2 * B) + w2 * w2;
    const double hc = a * z1 * z2 + (1 - 2 * B) * (w1 * z2 + w2 * z1) + w1 * w2;
    r.sufficient_slack[5] =
        g * g * (1 - B) * (1 - B) -
        (g * (1 - B) * (a * zz + ww + 2 * (1 - 2 * B) * wz) - h1 * h2 + hc * hc);

    r.sufficient_all = true;
    for (int i = 0; i < 6; ++i) {
        if (!(r.sufficient_slack[i] > 0.0)) {
            r.sufficient_all = false;
            if (r.first_violated == 0) r.first_violated = i + 1;
        }
    }
    return r;
}

ProjectedEig eig_projected(const FrozenPoint& p) {
    const HyperbolicityReport hr = hyperbolicity_region(p);
    if (hr.pointwise != Region::interior)
        throw degenerate_point_error(
            "eig_projected: point outside the hyperbolic interior (Delta1=" +
            std::to_string(hr.delta.d1) + ", Delta2=" + std::to_string(hr.delta.d2) +
            ", Delta3=" + std::to_string(hr.delta.d3) + ")");

    const double B = p.B;
    const double x1 = p.xi.x(), x2 = p.xi.y(), nxi = p.xi.norm();
    const double z1 = p.z.x(), z2 = p.z.y();
    const Deltas d = hr.delta;
    const double sqD2 = std::sqrt(d.d2), s1B = std::sqrt(1.0 - B);
    const double crossv = x1 * z2 - x2 * z1;  // xi1 z2 - xi2 z1
    const double drift = (p.w + (1.0 - 2.0 * B) * p.z).dot(p.xi);

    ProjectedEig out;
    out.eigvals << 0.0, (p.w - B * p.z).dot(p.xi), (p.w + (1.0 - B) * p.z).dot(p.xi),
        drift - s1B * sqD2, drift + s1B * sqD2;

    Mat5& V = out.V;
    V(0, 0) = B * nxi * out.eigvals(1) / d.d1;
    V(0, 1) = 0;
    V(0, 2) = 0;
    V(0, 3) = -B * nxi * s1B / sqD2;
    V(0, 4) = B * nxi * s1B / sqD2;
    // (1,0) and (2,0) hold p1/(|xi| D1), p2/(|xi| D1): reconstructed below
    V(1, 1) = (1 - B) * x2 / nxi;
    V(1, 2) = -B * x2 / nxi;
    V(1, 3) = B * x2 * crossv * s1B / (nxi * sqD2);
    V(1, 4) = -B * x2 * crossv * s1B / (nxi * sqD2);
    V(2, 1) = -(1 - B) * x1 / nxi;
    V(2, 2) = B * x1 / nxi;
    V(2, 3) = -B * x1 * crossv * s1B / (nxi * sqD2);
    V(2, 4) = B * x1 * crossv * s1B / (nxi * sqD2);
    V(3, 0) = x1 / nxi;
    V(3, 1) = -x2 / nxi;
    V(3, 2) = -x2 / nxi;
    V(3, 3) = x1 / nxi;
    V(3, 4) = x1 / nxi;
    V(4, 0) = x2 / nxi;
    V(4, 1) = x1 / nxi;
    V(4, 2) = x1 / nxi;
    V(4, 3) = x2 / nxi;
    V(4, 4) = x2 / nxi;

    Mat5& Vi = out.V_inv;
    Vi.setZero();
    Vi(0, 1) = -x1 * d.d1 / (nxi * d.d3);
    Vi(0, 2) = -x2 * d.d1 / (nxi * d.d3);
    Vi(1, 0) = crossv / nxi;
    Vi(1, 1) = x2 / nxi;
    Vi(1, 2) = -x1 / nxi;
    Vi(1, 3) = -B * x2 / nxi;
    Vi(1, 4) = B * x1 / nxi;
    Vi(2, 0) = -crossv / nxi;
    Vi(2, 1) = -x2 / nxi;
    Vi(2, 2) = x1 / nxi;
    Vi(2, 3) = -(1 - B) * x2 / nxi;
    Vi(2, 4) = (1 - B) * x1 / nxi;
    Vi(3, 0) = -sqD2 / (2 * B * nxi * s1B);
    // (3,1), (3,2) hold xi q1 / (2|xi| D3 sqrt((1-B) D2)): reconstructed below
    Vi(3, 3) = x1 / (2 * nxi);
    Vi(3, 4) = x2 / (2 * nxi);
    Vi(4, 0) = sqD2 / (2 * B * nxi * s1B);
    Vi(4, 3) = x1 / (2 * nxi);
    Vi(4, 4) = x2 / (2 * nxi);

    const Mat5 PA = projected_symbol(p);

    // Column 1 of V is the kernel vector: solve PA v = 0 for rows (1,2)
    // with the printed entries held fixed.
    {
        Eigen::Matrix<double, 5, 2> Acols;
        Acols.col(0) = PA.col(1);
        Acols.col(1) = PA.col(2);
        Vec5 known = Vec5::Zero();
        known(0) = V(0, 0);
        known(3) = V(3, 0);
        known(4) = V(4, 0);
        const Vec5 rhs = -PA * known;
        const Eigen::Vector2d sol =
            Acols.colPivHouseholderQr().solve(rhs);
        V(1, 0) = sol(0);
        V(2, 0) = sol(1);
        out.p1 = sol(0) * nxi * d.d1;
        out.p2 = sol(1) * nxi * d.d1;
        out.reconstruction_residual = (PA * V.col(0)).norm();
    }

    // Rows 4,5 of V^-1: left eigenvectors for lambda_4/5; solve for the two
    // unprinted w-block entries.
    for (int r = 3; r <= 4; ++r) {
        const double lam = out.eigvals(r);
        const Mat5 Mt = PA.transpose() - lam * Mat5::Identity();
        Eigen::Matrix<double, 5, 2> Acols;
        Acols.col(0) = Mt.col(1);
        Acols.col(1) = Mt.col(2);
        Vec5 known = Vec5::Zero();
        known(0) = Vi(r, 0);
        known(3) = Vi(r, 3);
        known(4) = Vi(r, 4);
        const Vec5 rhs = -Mt * known;
        const Eigen::Vector2d sol = Acols.colPivHouseholderQr().solve(rhs);
        Vi(r, 1) = sol(0);
        Vi(r, 2) = sol(1);
        Vec5 row = Vi.row(r).transpose();
        out.reconstruction_residual =
            std::max(out.reconstruction_residual, (Mt * row).norm());
    }
    // Recover the polynomial values from whichever xi component is larger.
    {
        const double denom = 2 * nxi * d.d3 * std::sqrt((1 - B) * d.d2);
        if (std::abs(x1) >= std::abs(x2)) {
            out.q1 = Vi(3, 1) * denom / x1;
            out.q2 = Vi(4, 1) * denom / x1;
        } else {
            out.q1 = Vi(3, 2) * denom / x2;
            out.q2 = Vi(4, 2) * denom / x2;
        }
    }
    return out;
}

double skew_check(const FrozenPoint& p) {
    const ProjectedEig e = eig_projected(p);
    const Mat5 S = e.V_inv.transpose() * e.V_inv;
    const CMat5 M =
        std::complex<double>(0, 1) * (S * projected_symbol(p)).cast<std::complex<double>>();
    const CMat5 H = M + M.adjoint();
    return H.norm() / M.norm();
}

Eigen::Matrix<std::complex<double>, 5, 1> dense_eigenvalues(const Mat5& m) {
    Eigen::EigenSolver<Mat5> es(m, /*computeEigenvectors=*/false);
    return es.eigenvalues();
}

double match_eigenvalues(const Vec5& analytic,
                         const Eigen::Matrix<std::complex<double>, 5, 1>& numeric,
                         double scale) {
    std::vector<double> a(analytic.data(), analytic.data() + 5);
    std::vector<double> re(5), im(5);
    for (int i = 0; i < 5; ++i) {
        re[i] = numeric(i).real();
        im[i] = numeric(i).imag();
    }
    std::ranges::sort(a);
    std::vector<int> idx{0, 1, 2, 3, 4};
    std::ranges::sort(idx, [&](int i, int j) { return re[i] < re[j]; });
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double diff = std::hypot(a[i] - re[idx[i]], im[idx[i]]);
        worst = std::max(worst, diff / std::max(scale, 1e-300));
    }
    return worst;
}

}  // namespace mixphase::symbols2p
