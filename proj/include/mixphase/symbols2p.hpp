#pragma once

// Two-phase 5x5 symbol algebra: flux matrices in primitive and mixed
// variables, Friedrichs/classical/Lax symmetrizers, the generalized Leray
// projector symbol, the projected symbol P(xi) A~(xi,v), its eigenstructure,
// and the hyperbolicity-region classification.
//
// State ordering: (B, w1, w2, z1, z2) in mixed variables and
// (B, vS1, vS2, vL1, vL2) in primitive variables.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>

namespace mixphase::symbols2p {

using Mat5 = Eigen::Matrix<double, 5, 5>;
using CMat5 = Eigen::Matrix<std::complex<double>, 5, 5>;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using CVec5 = Eigen::Matrix<std::complex<double>, 5, 1>;
using Vec2 = Eigen::Vector2d;

struct degenerate_point_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Frozen coefficients plus a frequency: the argument of every symbol.
struct FrozenPoint {
    Vec2 xi;
    double B = 0.5;
    Vec2 w = Vec2::Zero();
    Vec2 z = Vec2::Zero();
    double gamma = 1.0;

    void validate() const;
};

std::pair<Mat5, Mat5> flux_primitive(double B, const Vec2& v_S, const Vec2& v_L,
                                     double gamma);
Mat5 friedrichs_symmetrizer(double B, double gamma);
Mat5 classical_symmetrizer_mixed(const FrozenPoint& p);

// Jacobian of (B, vS, vL) -> (B, B vS + (1-B) vL, vS - vL).
Mat5 phi_jacobian(double B, const Vec2& v_S, const Vec2& v_L);

// Printed mixed-variable flux matrices.
std::pair<Mat5, Mat5> flux_mixed(const FrozenPoint& p);
// Same matrices from numeric conjugation of the primitive fluxes by the
// Jacobian of the change of variables; transcription cross-check.
std::pair<Mat5, Mat5> flux_mixed_conjugated(const FrozenPoint& p);

// xi_1 A~1 + xi_2 A~2 (the symbol divided by i).
Mat5 xi_flux(const FrozenPoint& p);
// i (xi_1 A~1 + xi_2 A~2)
CMat5 symbol_A(const FrozenPoint& p);

struct UnprojectedEig {
    Vec5 eigvals;  // {lambda_1..lambda_5} per printed order
    Mat5 U, U_inv;
};
UnprojectedEig eig_unprojected(const FrozenPoint& p);

// (U^-1)^T U^-1; symmetric positive definite, symmetrizes xi_flux.
Mat5 lax_symmetrizer_unprojected(const FrozenPoint& p);

// Block diag(1, I - xi xi^T/|xi|^2, I_2). Rejects xi = 0.
Mat5 leray_symbol(const Vec2& xi);

// Authoritative definition: leray_symbol(xi) * xi_flux(p).
Mat5 projected_symbol(const FrozenPoint& p);

// Transcription of the printed closed form of the projected symbol, with and
// without the two corrections (entry (4,4) missing z; sign of the B-term in
// mu_3), compared against the matrix product.
struct ClosedFormCheck {
    Mat5 product;
    Mat5 printed;        // literal transcription
    Mat5 corrected;      // both corrections applied
    double max_diff_printed;
    double max_diff_corrected;
};
ClosedFormCheck pa_closed_form_check(const FrozenPoint& p);

struct Deltas {
    double d1, d2, d3;
};
Deltas deltas(const FrozenPoint& p);

enum class Region { interior, boundary, violated };

struct HyperbolicityReport {
    Region pointwise = Region::violated;  // Delta signs at the given xi
    Deltas delta{};
    double scale = 0.0;  // gamma|xi|^2 + |w|^2|xi|^2 + |z|^2|xi|^2
    // xi-free sufficient conditions: slack = lhs - rhs, holds iff slack > 0
    std::array<double, 6> sufficient_slack{};
    bool sufficient_all = false;
    int first_violated = 0;  // 1-based index of first failing condition, 0 if none
};
HyperbolicityReport hyperbolicity_region(const FrozenPoint& p);

struct ProjectedEig {
    Vec5 eigvals;  // {0, l2, l3, l4, l5} printed order: l4 = drift - sqrt, l5 = drift + sqrt
    Mat5 V, V_inv;
    // Values of the unprinted degree-3 polynomials recovered numerically.
    double p1, p2, q1, q2;
    double reconstruction_residual;
};
// Requires an interior point; throws degenerate_point_error otherwise.
ProjectedEig eig_projected(const FrozenPoint& p);

// || S PA + (S PA)^* ||_F / ||S PA||_F with S = (V^-1)^T V^-1 and PA the
// degree-1 complex symbol i P(xi) A~.
double skew_check(const FrozenPoint& p);

// Dense-eigensolver oracle plus greedy sorted matching (collisions within
// collision_tol matched as blocks). Returns max relative mismatch.
Eigen::Matrix<std::complex<double>, 5, 1> dense_eigenvalues(const Mat5& m);
double match_eigenvalues(const Vec5& analytic,
                         const Eigen::Matrix<std::complex<double>, 5, 1>& numeric,
                         double scale);

}  // namespace mixphase::symbols2p
