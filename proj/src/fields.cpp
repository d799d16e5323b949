#include "mixphase/fields.hpp"

#include <cmath>

#include "mixphase/kernels.hpp"
#include "mixphase/spectral.hpp"

namespace mixphase {

namespace {

void check_B_range(const ScalarField& B, const char* who) {
    for (double b : B.v) {
        if (!(b > 0.0 && b < 1.0))
            throw validation_error(std::string(who) + ": B out of (0,1), got " +
                                   std::to_string(b));
    }
}

void check_finite(const std::vector<double>& v, const char* who) {
    for (double x : v)
        if (!std::isfinite(x)) throw validation_error(std::string(who) + ": non-finite sample");
}

}  // namespace

void PrimitiveState::validate() const {
    grid().validate();
    check_B_range(B, "PrimitiveState");
    check_finite(B.v, "PrimitiveState");
    check_finite(v_S.x.v, "PrimitiveState");
    check_finite(v_S.y.v, "PrimitiveState");
    check_finite(v_L.x.v, "PrimitiveState");
    check_finite(v_L.y.v, "PrimitiveState");
}

void MixedState::validate_range() const {
    grid().validate();
    check_B_range(B, "MixedState");
    check_finite(B.v, "MixedState");
    check_finite(w.x.v, "MixedState");
    check_finite(w.y.v, "MixedState");
    check_finite(z.x.v, "MixedState");
    check_finite(z.y.v, "MixedState");
}

MixedState primitive_to_mixed(const PrimitiveState& u) {
    u.validate();
    MixedState v(u.grid());
    v.B = u.B;
    kernels::for_each(u.B.size(), [&](std::size_t i) {
        const double b = u.B.v[i];
        v.w.x.v[i] = b * u.v_S.x.v[i] + (1.0 - b) * u.v_L.x.v[i];
        v.w.y.v[i] = b * u.v_S.y.v[i] + (1.0 - b) * u.v_L.y.v[i];
        v.z.x.v[i] = u.v_S.x.v[i] - u.v_L.x.v[i];
        v.z.y.v[i] = u.v_S.y.v[i] - u.v_L.y.v[i];
    });
    return v;
}

PrimitiveState mixed_to_primitive(const MixedState& v) {
    v.validate_range();
    PrimitiveState u(v.grid());
    u.B = v.B;
    kernels::for_each(v.B.size(), [&](std::size_t i) {
        const double b = v.B.v[i];
        u.v_S.x.v[i] = v.w.x.v[i] + (1.0 - b) * v.z.x.v[i];
        u.v_S.y.v[i] = v.w.y.v[i] + (1.0 - b) * v.z.y.v[i];
        u.v_L.x.v[i] = v.w.x.v[i] - b * v.z.x.v[i];
        u.v_L.y.v[i] = v.w.y.v[i] - b * v.z.y.v[i];
    });
    return u;
}

MixedState translate_equilibrium(const MixedState& v, const ModelConstants& c,
                                 TildeDirection direction) {
    c.validate();
    const double shift =
        direction == TildeDirection::to_tilde ? -c.equilibrium_B() : c.equilibrium_B();
    MixedState out = v;
    kernels::for_each(out.B.size(), [&](std::size_t i) { out.B.v[i] += shift; });
    return out;
}

double check_incompressibility_primitive(const PrimitiveState& u) {
    u.validate();
    const MixedState v = primitive_to_mixed(u);
    return max_divergence(v.w);
}

}  // namespace mixphase
