#pragma once

// Spectral diagnostics: Sobolev norms, the frozen-coefficient Sigma energy,
// its norm-equivalence constants, Gronwall envelope fits and the epsilon
// convergence study.
//
// Normalization: all norms use the mean-square convention
//   ||f||^2 = (1/n^2) sum_j |f_j|^2 = sum_k |f_hat(k)|^2,
// with f_hat the 1/n^2-scaled DFT; Sobolev weights use physical wavenumbers
// kappa = (2 pi / length) k.

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "mixphase/fields.hpp"
#include "mixphase/grid.hpp"

namespace mixphase {

struct SimConfig;
struct TrajectoryRecord;

namespace energy {

double l2_norm(const MixedState& v);
double sobolev_norm(const MixedState& v, double s);

// Coefficients at which Sigma's symbol is frozen.
struct FrozenCoefficients {
    double B;
    Eigen::Vector2d w, z;
    double gamma;
};

enum class FreezeChoice { equilibrium, state_mean };

FrozenCoefficients frozen_at_equilibrium(const ModelConstants& c);
FrozenCoefficients frozen_at_state_mean(const MixedState& v_untranslated, double gamma);

// Modewise E = sum_k < Sigma_hat(k) Lambda^s v_hat, Lambda^s v_hat > with
// Sigma_hat(k) = (1-theta_lambda)^2 (V^-1)^T V^-1 + theta_lambda^2 I.
double sigma_energy(const MixedState& v_tilde, const FrozenCoefficients& frozen,
                    double s, double lambda);

// min/max eigenvalue of Sigma_hat(k) over the grid's modes.
std::pair<double, double> norm_equivalence_constants(const FrozenCoefficients& frozen,
                                                     double s, double lambda,
                                                     const Grid2& grid);

struct GronwallFit {
    double c = 0.0;
    double predicted_T = 0.0;
    double M = 0.0, M_tilde = 0.0;
    double envelope_residual = 0.0;  // mean envelope slack / log-range
    bool degenerate = false;         // constant norm: c = 0, predicted_T = inf
};
GronwallFit gronwall_fit(const TrajectoryRecord& traj);

struct EpsStudyRow {
    double eps;
    double distance;  // max_t ||v^eps - v^(eps/2)||_L2
    double order;     // log2(d(eps)/d(eps/2)); NaN on the last row
};
// Runs integrate per epsilon from the same initial data; eps_list strictly
// decreasing with at least 3 entries.
std::vector<EpsStudyRow> epsilon_convergence_study(const SimConfig& base,
                                                   const MixedState& v0_tilde,
                                                   const std::vector<double>& eps_list);

}  // namespace energy
}  // namespace mixphase
