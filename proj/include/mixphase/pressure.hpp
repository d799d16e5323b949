#pragma once

// Hydrostatic pressure recovery from the elliptic equation
//   Delta P = -sum_ij d_j w_i d_i w_j - div div (B(1-B) z x z) - gamma Delta B
// in the zero-mean gauge, plus the momentum-balance residual.

#include "mixphase/fields.hpp"
#include "mixphase/spectral.hpp"

namespace mixphase {

struct SimConfig;

struct PressureField {
    SpectralField P;       // zero-mean
    VectorField2 gradP;    // spectral gradient, physical samples
};

SpectralField pressure_rhs(const MixedState& v, double gamma);
PressureField pressure_solve(const MixedState& v, double gamma);

// || dt_w + w.grad w + div(B(1-B) z x z) + gamma grad B + grad P ||_L2 with
// every coefficient evaluated on the mollified state J_eps v and dt_w the
// solver's w-component right-hand side.
double momentum_residual(const MixedState& v_untranslated, const SimConfig& cfg,
                         const VectorField2& dt_w);

// The advective and stress terms of the w equation (shared by the residual
// and its tests): w.grad w + div(B(1-B) z x z) + gamma grad B.
VectorField2 momentum_terms(const MixedState& v, double gamma);

}  // namespace mixphase
