#include "mixphase/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "mixphase/kernels.hpp"

namespace mixphase {

namespace {

// One r2c/c2r plan pair per grid size, created on first use. FFTW's
// new-array execute is safe to call concurrently on distinct buffers.
struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

PlanPair& plans_for(int n) {
    static std::mutex mu;
    static std::map<int, PlanPair> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> real(static_cast<std::size_t>(n) * n);
    std::vector<std::complex<double>> cplx(static_cast<std::size_t>(n) * (n / 2 + 1));
    PlanPair p;
    p.r2c = fftw_plan_dft_r2c_2d(n, n, real.data(),
                                 reinterpret_cast<fftw_complex*>(cplx.data()),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.c2r = fftw_plan_dft_c2r_2d(n, n, reinterpret_cast<fftw_complex*>(cplx.data()),
                                 real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    return cache.emplace(n, p).first->second;
}

}  // namespace

SpectralField forward(const ScalarField& f) {
    const int n = f.grid.n;
    SpectralField out(f.grid);
    std::vector<double> tmp(f.v);  // r2c destroys its input
    fftw_execute_dft_r2c(plans_for(n).r2c, tmp.data(),
                         reinterpret_cast<fftw_complex*>(out.c.data()));
    const double scale = 1.0 / (static_cast<double>(n) * n);
    kernels::for_each(out.c.size(), [&](std::size_t i) { out.c[i] *= scale; });
    return out;
}

ScalarField inverse(const SpectralField& f) {
    const int n = f.grid.n;
    ScalarField out(f.grid);
    std::vector<std::complex<double>> tmp(f.c);  // c2r destroys its input
    fftw_execute_dft_c2r(plans_for(n).c2r, reinterpret_cast<fftw_complex*>(tmp.data()),
                         out.v.data());
    return out;
}

SpectralVector2 forward(const VectorField2& f) {
    SpectralVector2 out;
    out.x = forward(f.x);
    out.y = forward(f.y);
    return out;
}

VectorField2 inverse(const SpectralVector2& f) {
    VectorField2 out;
    out.x = inverse(f.x);
    out.y = inverse(f.y);
    return out;
}

double theta_profile(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double s = r - 1.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

std::complex<double> multiplier_value(const MultiplierSpec& m, double kx, double ky) {
    const double k2 = kx * kx + ky * ky;
    switch (m.kind) {
        case MultiplierKind::mollifier: {
            const double a = m.param * m.param * k2;
            return std::exp(-a);
        }
        case MultiplierKind::lambda_s:
            return std::pow(1.0 + k2, 0.5 * m.param);
        case MultiplierKind::theta_cutoff:
            return theta_profile(std::sqrt(k2) / m.param);
        case MultiplierKind::derivative_x:
            return {0.0, kx};
        case MultiplierKind::derivative_y:
            return {0.0, ky};
        case MultiplierKind::inverse_laplacian:
            return k2 > 0.0 ? -1.0 / k2 : 0.0;
    }
    return 0.0;
}

void apply_multiplier_inplace(SpectralField& f, const MultiplierSpec& m) {
    const Grid2 g = f.grid;
    const int n = g.n, nk = f.nk(), nyq = g.n / 2;
    kernels::for_each(static_cast<std::size_t>(n) * nk, [&](std::size_t idx) {
        const int iy = static_cast<int>(idx) / nk;
        const int kx = static_cast<int>(idx) % nk;
        const int kyi = g.freq_int(iy);
        double kxv = g.wavenumber(kx);
        double kyv = g.wavenumber(kyi);
        // Odd derivatives have no real representative at the Nyquist mode.
        if (m.kind == MultiplierKind::derivative_x && kx == nyq) kxv = 0.0;
        if (m.kind == MultiplierKind::derivative_y && std::abs(kyi) == nyq) kyv = 0.0;
        f.c[idx] *= multiplier_value(m, kxv, kyv);
    });
}

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& m) {
    SpectralField out = f;
    apply_multiplier_inplace(out, m);
    return out;
}

void leray_project_inplace(SpectralVector2& w) {
    const Grid2 g = w.grid();
    const int n = g.n, nk = w.x.nk();
    kernels::for_each(static_cast<std::size_t>(n) * nk, [&](std::size_t idx) {
        const int iy = static_cast<int>(idx) / nk;
        const int kx = static_cast<int>(idx) % nk;
        const double kxv = g.wavenumber(kx);
        const double kyv = g.wavenumber(g.freq_int(iy));
        const double k2 = kxv * kxv + kyv * kyv;
        if (k2 == 0.0) return;
        const std::complex<double> kdw = (kxv * w.x.c[idx] + kyv * w.y.c[idx]) / k2;
        w.x.c[idx] -= kxv * kdw;
        w.y.c[idx] -= kyv * kdw;
    });
}

VectorField2 leray_project(const VectorField2& w) {
    SpectralVector2 s = forward(w);
    leray_project_inplace(s);
    return inverse(s);
}

SpectralField divergence(const SpectralVector2& w) {
    SpectralField dx = apply_multiplier(w.x, {MultiplierKind::derivative_x});
    const SpectralField dy = apply_multiplier(w.y, {MultiplierKind::derivative_y});
    kernels::for_each(dx.c.size(), [&](std::size_t i) { dx.c[i] += dy.c[i]; });
    return dx;
}

SpectralVector2 gradient(const SpectralField& f) {
    SpectralVector2 out;
    out.x = apply_multiplier(f, {MultiplierKind::derivative_x});
    out.y = apply_multiplier(f, {MultiplierKind::derivative_y});
    return out;
}

SpectralField inverse_laplacian_zero_mean(const SpectralField& f) {
    return apply_multiplier(f, {MultiplierKind::inverse_laplacian});
}

void dealias_inplace(SpectralField& f) {
    const Grid2 g = f.grid;
    const int n = g.n, nk = f.nk(), kc = g.n / 3;
    kernels::for_each(static_cast<std::size_t>(n) * nk, [&](std::size_t idx) {
        const int iy = static_cast<int>(idx) / nk;
        const int kx = static_cast<int>(idx) % nk;
        if (kx > kc || std::abs(g.freq_int(iy)) > kc) f.c[idx] = 0.0;
    });
}

double max_divergence(const VectorField2& w) {
    const ScalarField div = inverse(divergence(forward(w)));
    return kernels::max_abs(div.v);
}

double divergence_scale(const VectorField2& w) {
    const double wmax = std::max(kernels::max_abs(w.x.v), kernels::max_abs(w.y.v));
    return wmax * w.grid().max_wavenumber();
}

double spectral_norm_sq(const SpectralField& f) {
    const int n = f.grid.n, nk = f.nk();
    double acc = 0.0;
    for (int iy = 0; iy < n; ++iy)
        for (int kx = 0; kx < nk; ++kx)
            acc += f.column_weight(kx) * std::norm(f.at(kx, iy));
    return acc;
}

}  // namespace mixphase
