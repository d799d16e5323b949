#include "mixphase/pressure.hpp"

#include <cmath>

#include "mixphase/energy.hpp"
#include "mixphase/kernels.hpp"
#include "mixphase/solver.hpp"

namespace mixphase {

namespace {

SpectralField dealiased_forward(const ScalarField& f) {
    SpectralField s = forward(f);
    dealias_inplace(s);
    return s;
}

// pointwise product of two physical fields
ScalarField product(const ScalarField& a, const ScalarField& b) {
    ScalarField out(a.grid);
    kernels::for_each(a.size(), [&](std::size_t i) { out.v[i] = a.v[i] * b.v[i]; });
    return out;
}

}  // namespace

SpectralField pressure_rhs(const MixedState& v, double gamma) {
    v.validate_range();
    const Grid2& g = v.grid();

    const SpectralVector2 ws = forward(v.w);
    const ScalarField dxw1 = inverse(apply_multiplier(ws.x, {MultiplierKind::derivative_x}));
    const ScalarField dyw1 = inverse(apply_multiplier(ws.x, {MultiplierKind::derivative_y}));
    const ScalarField dxw2 = inverse(apply_multiplier(ws.y, {MultiplierKind::derivative_x}));
    const ScalarField dyw2 = inverse(apply_multiplier(ws.y, {MultiplierKind::derivative_y}));

    // sum_ij d_j w_i d_i w_j = (dx w1)^2 + 2 dy w1 dx w2 + (dy w2)^2
    ScalarField advect(g);
    kernels::for_each(g.size(), [&](std::size_t i) {
        advect.v[i] = dxw1.v[i] * dxw1.v[i] + 2.0 * dyw1.v[i] * dxw2.v[i] +
                      dyw2.v[i] * dyw2.v[i];
    });

    // T_ij = B(1-B) z_i z_j; div div T = dxx T11 + 2 dxy T12 + dyy T22
    ScalarField T11(g), T12(g), T22(g);
    kernels::for_each(g.size(), [&](std::size_t i) {
        const double c = v.B.v[i] * (1.0 - v.B.v[i]);
        T11.v[i] = c * v.z.x.v[i] * v.z.x.v[i];
        T12.v[i] = c * v.z.x.v[i] * v.z.y.v[i];
        T22.v[i] = c * v.z.y.v[i] * v.z.y.v[i];
    });
    SpectralField t11 = dealiased_forward(T11);
    SpectralField t12 = dealiased_forward(T12);
    SpectralField t22 = dealiased_forward(T22);
    apply_multiplier_inplace(t11, {MultiplierKind::derivative_x});
    apply_multiplier_inplace(t11, {MultiplierKind::derivative_x});
    apply_multiplier_inplace(t12, {MultiplierKind::derivative_x});
    apply_multiplier_inplace(t12, {MultiplierKind::derivative_y});
    apply_multiplier_inplace(t22, {MultiplierKind::derivative_y});
    apply_multiplier_inplace(t22, {MultiplierKind::derivative_y});

    SpectralField rhs = dealiased_forward(advect);
    SpectralField bs = forward(v.B);
    const Grid2& gb = v.grid();
    const int n = gb.n, nk = n / 2 + 1;
    // -gamma Delta B and sign assembly per mode
    kernels::for_each(static_cast<std::size_t>(n) * nk, [&](std::size_t idx) {
        const int iy = static_cast<int>(idx) / nk;
        const int kx = static_cast<int>(idx) % nk;
        const double kxv = gb.wavenumber(kx);
        const double kyv = gb.wavenumber(gb.freq_int(iy));
        const double k2 = kxv * kxv + kyv * kyv;
        rhs.c[idx] = -rhs.c[idx] - (t11.c[idx] + 2.0 * t12.c[idx] + t22.c[idx]) +
                     gamma * k2 * bs.c[idx];
    });
    return rhs;
}

PressureField pressure_solve(const MixedState& v, double gamma) {
    PressureField out;
    out.P = inverse_laplacian_zero_mean(pressure_rhs(v, gamma));
    out.gradP = inverse(gradient(out.P));
    return out;
}

VectorField2 momentum_terms(const MixedState& v, double gamma) {
    const Grid2& g = v.grid();
    const SpectralVector2 ws = forward(v.w);
    const ScalarField dxw1 = inverse(apply_multiplier(ws.x, {MultiplierKind::derivative_x}));
    const ScalarField dyw1 = inverse(apply_multiplier(ws.x, {MultiplierKind::derivative_y}));
    const ScalarField dxw2 = inverse(apply_multiplier(ws.y, {MultiplierKind::derivative_x}));
    const ScalarField dyw2 = inverse(apply_multiplier(ws.y, {MultiplierKind::derivative_y}));

    ScalarField T11(g), T12(g), T22(g), adv1(g), adv2(g);
    kernels::for_each(g.size(), [&](std::size_t i) {
        const double c = v.B.v[i] * (1.0 - v.B.v[i]);
        T11.v[i] = c * v.z.x.v[i] * v.z.x.v[i];
        T12.v[i] = c * v.z.x.v[i] * v.z.y.v[i];
        T22.v[i] = c * v.z.y.v[i] * v.z.y.v[i];
        adv1.v[i] = v.w.x.v[i] * dxw1.v[i] + v.w.y.v[i] * dyw1.v[i];
        adv2.v[i] = v.w.x.v[i] * dxw2.v[i] + v.w.y.v[i] * dyw2.v[i];
    });
    SpectralField t11 = dealiased_forward(T11);
    SpectralField t12 = dealiased_forward(T12);
    SpectralField t22 = dealiased_forward(T22);
    const SpectralField d1t11 = apply_multiplier(t11, {MultiplierKind::derivative_x});
    const SpectralField d2t12 = apply_multiplier(t12, {MultiplierKind::derivative_y});
    const SpectralField d1t12 = apply_multiplier(t12, {MultiplierKind::derivative_x});
    const SpectralField d2t22 = apply_multiplier(t22, {MultiplierKind::derivative_y});
    const SpectralVector2 gradB = gradient(forward(v.B));
    const ScalarField divT1 = inverse(d1t11), divT1b = inverse(d2t12);
    const ScalarField divT2 = inverse(d1t12), divT2b = inverse(d2t22);
    const ScalarField gB1 = inverse(gradB.x), gB2 = inverse(gradB.y);

    SpectralField a1 = dealiased_forward(adv1);
    SpectralField a2 = dealiased_forward(adv2);
    const ScalarField adv1d = inverse(a1), adv2d = inverse(a2);

    VectorField2 out(g);
    kernels::for_each(g.size(), [&](std::size_t i) {
        out.x.v[i] = adv1d.v[i] + divT1.v[i] + divT1b.v[i] + gamma * gB1.v[i];
        out.y.v[i] = adv2d.v[i] + divT2.v[i] + divT2b.v[i] + gamma * gB2.v[i];
    });
    return out;
}

double momentum_residual(const MixedState& v, const SimConfig& cfg,
                         const VectorField2& dt_w) {
    if (!(v.grid() == dt_w.grid()))
        throw validation_error("momentum_residual: grid mismatch");

    // coefficients on the mollified state
    MixedState vm(v.grid());
    const MultiplierSpec moll{MultiplierKind::mollifier, cfg.epsilon};
    vm.B = inverse(apply_multiplier(forward(v.B), moll));
    vm.w.x = inverse(apply_multiplier(forward(v.w.x), moll));
    vm.w.y = inverse(apply_multiplier(forward(v.w.y), moll));
    vm.z.x = inverse(apply_multiplier(forward(v.z.x), moll));
    vm.z.y = inverse(apply_multiplier(forward(v.z.y), moll));

    const VectorField2 terms = momentum_terms(vm, cfg.constants.gamma);
    const PressureField pf = pressure_solve(vm, cfg.constants.gamma);

    MixedState resid(v.grid());  // only w slots used; L2 over the pair
    kernels::for_each(v.B.size(), [&](std::size_t i) {
        resid.w.x.v[i] = dt_w.x.v[i] + terms.x.v[i] + pf.gradP.x.v[i];
        resid.w.y.v[i] = dt_w.y.v[i] + terms.y.v[i] + pf.gradP.y.v[i];
    });
    return energy::l2_norm(resid);
}

}  // namespace mixphase
