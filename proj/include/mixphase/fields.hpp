#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mixphase/grid.hpp"

namespace mixphase {

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScalarField {
    Grid2 grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid2& g, double fill = 0.0)
        : grid(g), v(g.size(), fill) {}

    double& operator()(int ix, int iy) { return v[static_cast<std::size_t>(iy) * grid.n + ix]; }
    double operator()(int ix, int iy) const { return v[static_cast<std::size_t>(iy) * grid.n + ix]; }
    std::size_t size() const { return v.size(); }
};

struct VectorField2 {
    ScalarField x, y;

    VectorField2() = default;
    explicit VectorField2(const Grid2& g) : x(g), y(g) {}
    const Grid2& grid() const { return x.grid; }
};

// gamma: excess stress coefficient; k_B, k_D: birth/death rates; M: friction.
struct ModelConstants {
    double gamma = 1.0;
    double k_B = 2.0;
    double k_D = 1.0;
    double M = 1.0;

    double equilibrium_B() const { return 1.0 - k_D / k_B; }

    void validate() const {
        if (!(gamma > 0.0)) throw validation_error("ModelConstants: gamma must be > 0");
        if (!(k_D > 0.0 && k_B > k_D))
            throw validation_error("ModelConstants: need 0 < k_D < k_B");
        if (!(M >= 0.0)) throw validation_error("ModelConstants: M must be >= 0");
        const double bb = equilibrium_B();
        if (!(bb > 0.0 && bb < 1.0))
            throw validation_error("ModelConstants: equilibrium B out of (0,1)");
    }
};

// Reaction constants of the four-phase system. eps_reaction is the paper's
// reaction-rate epsilon, renamed to avoid collision with the mollification
// parameter.
struct BdelConstants {
    double k_B = 2.0, k_D = 1.0, k_E = 1.0, k_N = 1.0;
    double alpha = 0.5, eps_reaction = 0.5;
    double M = 1.0, gamma = 1.0;
};

// u = (B, v_S, v_L): volume fraction plus phase velocities.
struct PrimitiveState {
    ScalarField B;
    VectorField2 v_S, v_L;

    PrimitiveState() = default;
    explicit PrimitiveState(const Grid2& g) : B(g), v_S(g), v_L(g) {}
    const Grid2& grid() const { return B.grid; }
    void validate() const;
};

// v = (B, w, z) with w = B v_S + (1-B) v_L divergence-free and z = v_S - v_L.
struct MixedState {
    ScalarField B;
    VectorField2 w, z;

    MixedState() = default;
    explicit MixedState(const Grid2& g) : B(g), w(g), z(g) {}
    const Grid2& grid() const { return B.grid; }

    // Invariants excluding the divergence constraint (which needs transforms;
    // see check_divergence_w in spectral.hpp).
    void validate_range() const;
};

enum class TildeDirection { to_tilde, from_tilde };

MixedState primitive_to_mixed(const PrimitiveState& u);
PrimitiveState mixed_to_primitive(const MixedState& v);
MixedState translate_equilibrium(const MixedState& v, const ModelConstants& c,
                                 TildeDirection direction);
// max over the grid of |div(B v_S + (1-B) v_L)|, evaluated spectrally.
double check_incompressibility_primitive(const PrimitiveState& u);

}  // namespace mixphase
