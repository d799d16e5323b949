#pragma once

// Four-phase (BDEL) 7x7 symbol verification and the 3D two-phase
// degeneracy demonstration.
//
// BDEL state ordering: (B, D, E, w1, w2, z1, z2) in mixed variables,
// (B, D, E, vS1, vS2, vL1, vL2) in primitive variables, with
// nu = B + D + E, w = nu vS + (1-nu) vL, z = vS - vL.
// 3D state ordering: (B, w1, w2, w3, z1, z2, z3).

#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <vector>

#include "mixphase/symbols2p.hpp"

namespace mixphase::symbols_ext {

using Mat7 = Eigen::Matrix<double, 7, 7>;
using Vec7 = Eigen::Matrix<double, 7, 1>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

struct BdelPoint {
    Vec2 xi;
    double B = 0.2, D = 0.15, E = 0.1;
    Vec2 w = Vec2::Zero();
    Vec2 z = Vec2::Zero();
    double gamma = 1.0;

    double nu() const { return B + D + E; }
    void validate() const;
};

std::pair<Mat7, Mat7> bdel_flux_primitive(double B, double D, double E,
                                          const Vec2& v_S, const Vec2& v_L,
                                          double gamma);
// Jacobian of (B,D,E,vS,vL) -> (B,D,E, nu vS + (1-nu) vL, vS - vL).
Mat7 bdel_jacobian(double B, double D, double E, const Vec2& v_S, const Vec2& v_L);
// Mixed-variable fluxes by numeric conjugation (no closed form is available).
std::pair<Mat7, Mat7> bdel_flux_mixed(const BdelPoint& p);
Mat7 bdel_leray_symbol(const Vec2& xi);
Mat7 bdel_projected_symbol(const BdelPoint& p);

struct BdelDeltas {
    double nu, d2, d4, d5;
};
BdelDeltas bdel_deltas(const BdelPoint& p);

// Printed eigenvector matrix; column 1 carries the unprinted q_i1 entries and
// is returned as zeros with explicit_col[0] = false.
struct BdelPrintedV {
    Mat7 V;
    std::array<bool, 7> explicit_col;
};
BdelPrintedV bdel_printed_V(const BdelPoint& p);
Mat7 bdel_printed_Vinv(const BdelPoint& p);

struct EigenvectorCheck {
    int index = 0;              // row of V^-1 / column of V, 0-based
    double residual = 0.0;      // relative eigen-equation residual
    double matched_eigenvalue = 0.0;
    bool exact_everywhere = false;  // holds at every interior point, not just equilibrium
};

struct BdelReport {
    BdelDeltas deltas{};
    bool interior = false;
    std::array<double, 7> analytic_eigs{};  // nu reading of the printed formulas
    std::array<double, 7> numeric_eigs{};   // dense solver, sorted
    double eig_mismatch_transport = 0.0;    // lambda_1..5 vs numerics, relative
    double eig_mismatch_sound = 0.0;        // lambda_6/7 with the empirical drift
    // lambda_6/7 drift diagnostics: numeric value vs candidate readings
    double drift_numeric = 0.0;
    double drift_two_phase_template = 0.0;  // (w+(1-2nu)z).xi
    double drift_printed_insert_z = 0.0;    // (w+(1-B-nu)z).xi
    std::vector<EigenvectorCheck> row_checks;  // all 7 rows of printed V^-1
    std::vector<EigenvectorCheck> col_checks;  // printed columns 2..7 of V
    double reduction_residual = -1.0;          // vs 5x5 when D=E=0, else -1
};
BdelReport bdel_eigencheck(const BdelPoint& p);

struct Frozen3DPoint {
    Vec3 xi;
    double B_bar = 0.5;
    double gamma = 1.0;
    void validate() const;
};

// Projected 3D two-phase symbol at the equilibrium (w = z = 0), divided by i.
Mat7 threeD_symbol(const Frozen3DPoint& p);
// Analytic eigenvalues at equilibrium: {0 x5, +-sqrt((1-B)gamma)|xi|}.
std::array<double, 7> threeD_eigenvalues(const Frozen3DPoint& p);
// Printed eigenvector matrix (degree-0 homogeneous in xi).
Mat7 threeD_eigenvector_matrix(const Frozen3DPoint& p);

struct ScanRow {
    Vec3 xi;
    double sigma_min;                // of the printed degree-0 matrix
    double sigma_min_unit_columns;   // columns normalized to unit length (zero
                                     // columns left as-is, giving 0 exactly)
};
std::vector<ScanRow> threeD_degeneracy_scan(double B_bar, double gamma,
                                            const std::vector<Vec3>& path);

Eigen::Matrix<std::complex<double>, 7, 1> dense_eigenvalues7(const Mat7& m);

}  // namespace mixphase::symbols_ext
