#pragma once

// Method-of-lines integration of the mollified, Leray-projected, translated
// system: d/dt v~ = F_eps(v~) with
//   F_eps(v~) = -sum_j P J_eps [ A~_j(J_eps(v~+vbar)) d_j J_eps v~ ]
//               + P J_eps G~(J_eps(v~+vbar)).
// The state is the translated tilde field; untranslation happens only for
// coefficient evaluation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixphase/fields.hpp"
#include "mixphase/grid.hpp"

namespace mixphase {

struct solver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TimeMode { rk4, picard };

struct SimConfig {
    ModelConstants constants;
    Grid2 grid;
    double epsilon = 0.1;       // mollification scale
    double dt = 1e-3;
    double t_end = 1.0;
    double cfl = 0.4;
    double s_order = 3.0;       // Sobolev order for diagnostics, > 2
    double lambda_cutoff = 2.0; // theta_lambda parameter, >= 2
    TimeMode mode = TimeMode::rk4;
    double picard_tol = 1e-12;
    int picard_max_iters = 60;
    std::uint64_t seed = 0;
    int record_every = 1;
    double amplitude = 1e-3;    // initial-data scale (used by the CLI)
    double b_floor = 1e-3;
    double norm_ceiling_factor = 1e6;
    double div_tol = 1e-10;

    void validate() const;
};

struct TrajectoryRecord {
    struct Sample {
        double t;
        double hs_norm, l2_norm, div_w_max, min_B, max_B, sigma_energy;
    };
    enum class Stop { completed, b_floor, norm_ceiling, step_failure, cfl_violation };

    std::vector<Sample> samples;
    std::vector<MixedState> snapshots;  // populated when keep_snapshots
    Stop reason = Stop::completed;
    std::string message;
    double t_final = 0.0;
};

const char* to_string(TrajectoryRecord::Stop s);

// G~(v) = (Gamma_B, 0, -z (M + Gamma_B (1-B)) / (B (1-B))) on the
// untranslated state.
MixedState source_terms(const MixedState& v_untranslated, const ModelConstants& c);

MixedState rhs_F_eps(const MixedState& v_tilde, const SimConfig& cfg);

// Frozen-coefficient linear variant used by propagator tests: coefficients
// pinned at the equilibrium, sources off.
MixedState rhs_linearized_equilibrium(const MixedState& v_tilde, const SimConfig& cfg);

double wave_speed_bound(const MixedState& v_tilde, const ModelConstants& c);

MixedState step(const MixedState& v_tilde, const SimConfig& cfg);
MixedState step_linearized(const MixedState& v_tilde, const SimConfig& cfg);

struct IntegrateOptions {
    bool keep_snapshots = false;
};
TrajectoryRecord integrate(const MixedState& v0_tilde, const SimConfig& cfg,
                           const IntegrateOptions& opts = {});

// Band-limited (|k| <= 4) random tilde state, w Leray-projected, scaled to
// the requested H^s amplitude. Deterministic in the seed.
MixedState make_initial_data(const Grid2& grid, const ModelConstants& c,
                             double amplitude, std::uint64_t seed,
                             double s_order = 3.0);

// Elementwise helpers shared with tests.
MixedState axpy(double a, const MixedState& x, const MixedState& y);  // a*x + y
MixedState scale(double a, const MixedState& x);
double l2_distance(const MixedState& a, const MixedState& b);

}  // namespace mixphase
