#include "mixphase/solver.hpp"

#include <cmath>
#include <numbers>

#include "mixphase/energy.hpp"
#include "mixphase/kernels.hpp"
#include "mixphase/spectral.hpp"

namespace mixphase {

void SimConfig::validate() const {
    constants.validate();
    grid.validate();
    if (!(epsilon >= 0.0)) throw validation_error("SimConfig: epsilon must be >= 0");
    if (!(dt > 0.0)) throw validation_error("SimConfig: dt must be > 0");
    if (!(t_end >= 0.0)) throw validation_error("SimConfig: t_end must be >= 0");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw validation_error("SimConfig: cfl in (0,1]");
    if (!(s_order > 2.0)) throw validation_error("SimConfig: s_order must be > 2");
    if (!(lambda_cutoff >= 2.0))
        throw validation_error("SimConfig: lambda_cutoff must be >= 2");
    if (record_every < 1) throw validation_error("SimConfig: record_every >= 1");
    // equilibrium speed bound; the per-step check uses the actual state
    const double speed = std::sqrt(constants.gamma);
    if (dt > cfl * grid.spacing() / speed)
        throw validation_error("SimConfig: dt violates the CFL bound at equilibrium");
}

const char* to_string(TrajectoryRecord::Stop s) {
    switch (s) {
        case TrajectoryRecord::Stop::completed: return "completed";
        case TrajectoryRecord::Stop::b_floor: return "b_floor";
        case TrajectoryRecord::Stop::norm_ceiling: return "norm_ceiling";
        case TrajectoryRecord::Stop::step_failure: return "step_failure";
        case TrajectoryRecord::Stop::cfl_violation: return "cfl_violation";
    }
    return "unknown";
}

MixedState source_terms(const MixedState& v, const ModelConstants& c) {
    v.validate_range();
    c.validate();
    MixedState out(v.grid());
    kernels::for_each(v.B.size(), [&](std::size_t i) {
        const double B = v.B.v[i];
        const double gamma_B = B * (c.k_B * (1.0 - B) - c.k_D);
        const double damp = (c.M + gamma_B * (1.0 - B)) / (B * (1.0 - B));
        out.B.v[i] = gamma_B;
        out.w.x.v[i] = 0.0;
        out.w.y.v[i] = 0.0;
        out.z.x.v[i] = -v.z.x.v[i] * damp;
        out.z.y.v[i] = -v.z.y.v[i] * damp;
    });
    return out;
}

namespace {

struct ComponentSpectra {
    SpectralField B, wx, wy, zx, zy;
};

ComponentSpectra forward_state(const MixedState& v) {
    return {forward(v.B), forward(v.w.x), forward(v.w.y), forward(v.z.x),
            forward(v.z.y)};
}

// A~1(v) q1 + A~2(v) q2 evaluated pointwise for state vector v=(B,w,z) and
// derivative 5-vectors q1 = d_x v, q2 = d_y v. The matrices are the printed
// mixed-variable fluxes written out component by component; this is the hot
// data-parallel loop.
inline void flux_contract(const double vB, const double w1, const double w2,
                          const double z1, const double z2, const double g,
                          const double* q1, const double* q2, double* out) {
    const double B = vB;
    const double quo = 1.0 - 2.0 * B;
    const double om = 1.0 - B;

    // A~1 * q1
    out[0] = (w1 + z1 * quo) * q1[0] + B * q1[1] + B * om * q1[3];
    out[1] = (g + z1 * z1 * quo) * q1[0] + (w1 + B * z1) * q1[1] +
             2 * B * z1 * om * q1[3];
    out[2] = z1 * z2 * quo * q1[0] + B * z2 * q1[1] + w1 * q1[2] +
             B * z2 * om * q1[3] + B * z1 * om * q1[4];
    out[3] = (g / B - z1 * z1) * q1[0] + z1 * q1[1] + (w1 + z1 * quo) * q1[3];
    out[4] = -z1 * z2 * q1[0] + z1 * q1[2] + (w1 + z1 * quo) * q1[4];

    // + A~2 * q2
    out[0] += (w2 + z2 * quo) * q2[0] + B * q2[2] + B * om * q2[4];
    out[1] += z1 * z2 * quo * q2[0] + w2 * q2[1] + B * z1 * q2[2] +
              B * z2 * om * q2[3] + B * z1 * om * q2[4];
    out[2] += (g + z2 * z2 * quo) * q2[0] + (w2 + B * z2) * q2[2] +
              2 * B * z2 * om * q2[4];
    out[3] += -z1 * z2 * q2[0] + z2 * q2[1] + (w2 + z2 * quo) * q2[3];
    out[4] += (g / B - z2 * z2) * q2[0] + z2 * q2[2] + (w2 + z2 * quo) * q2[4];
}

MixedState rhs_impl(const MixedState& v_tilde, const SimConfig& cfg, bool linearized) {
    const Grid2& g = v_tilde.grid();
    const MultiplierSpec moll{MultiplierKind::mollifier, cfg.epsilon};
    const double Bbar = cfg.constants.equilibrium_B();
    const double gam = cfg.constants.gamma;

    ComponentSpectra s = forward_state(v_tilde);
    SpectralField* comps[5] = {&s.B, &s.wx, &s.wy, &s.zx, &s.zy};
    for (auto* f : comps) apply_multiplier_inplace(*f, moll);

    // J_eps v~ and its derivatives in physical space
    ScalarField smooth[5], dx[5], dy[5];
    for (int c = 0; c < 5; ++c) {
        smooth[c] = inverse(*comps[c]);
        dx[c] = inverse(apply_multiplier(*comps[c], {MultiplierKind::derivative_x}));
        dy[c] = inverse(apply_multiplier(*comps[c], {MultiplierKind::derivative_y}));
    }

    const double kB = cfg.constants.k_B, kD = cfg.constants.k_D, M = cfg.constants.M;

    // q = G~ - flux, pointwise
    ScalarField q[5];
    for (auto& f : q) f = ScalarField(g);
    kernels::for_each(g.size(), [&](std::size_t i) {
        double coefB, w1, w2, z1, z2;
        if (linearized) {
            coefB = Bbar;
            w1 = w2 = z1 = z2 = 0.0;
        } else {
            coefB = smooth[0].v[i] + Bbar;
            w1 = smooth[1].v[i];
            w2 = smooth[2].v[i];
            z1 = smooth[3].v[i];
            z2 = smooth[4].v[i];
        }
        const double q1[5] = {dx[0].v[i], dx[1].v[i], dx[2].v[i], dx[3].v[i], dx[4].v[i]};
        const double q2[5] = {dy[0].v[i], dy[1].v[i], dy[2].v[i], dy[3].v[i], dy[4].v[i]};
        double flux[5];
        flux_contract(coefB, w1, w2, z1, z2, gam, q1, q2, flux);

        double src[5] = {0, 0, 0, 0, 0};
        if (!linearized) {
            const double gamma_B = coefB * (kB * (1.0 - coefB) - kD);
            const double damp = (M + gamma_B * (1.0 - coefB)) / (coefB * (1.0 - coefB));
            src[0] = gamma_B;
            src[3] = -z1 * damp;
            src[4] = -z2 * damp;
        }
        for (int c = 0; c < 5; ++c) q[c].v[i] = src[c] - flux[c];
    });

    // P J_eps with dealiasing on the product
    SpectralField qs[5];
    for (int c = 0; c < 5; ++c) {
        qs[c] = forward(q[c]);
        dealias_inplace(qs[c]);
        apply_multiplier_inplace(qs[c], moll);
    }
    SpectralVector2 wpart;
    wpart.x = qs[1];
    wpart.y = qs[2];
    leray_project_inplace(wpart);

    MixedState out(g);
    out.B = inverse(qs[0]);
    out.w = inverse(wpart);
    out.z.x = inverse(qs[3]);
    out.z.y = inverse(qs[4]);
    return out;
}

}  // namespace

MixedState rhs_F_eps(const MixedState& v_tilde, const SimConfig& cfg) {
    return rhs_impl(v_tilde, cfg, /*linearized=*/false);
}

MixedState rhs_linearized_equilibrium(const MixedState& v_tilde, const SimConfig& cfg) {
    return rhs_impl(v_tilde, cfg, /*linearized=*/true);
}

double wave_speed_bound(const MixedState& v_tilde, const ModelConstants& c) {
    const std::size_t n = v_tilde.B.size();
    std::vector<double> speed(n);
    kernels::for_each(n, [&](std::size_t i) {
        speed[i] = std::hypot(v_tilde.w.x.v[i], v_tilde.w.y.v[i]) +
                   std::hypot(v_tilde.z.x.v[i], v_tilde.z.y.v[i]);
    });
    return kernels::max(speed) + std::sqrt(c.gamma);
}

MixedState axpy(double a, const MixedState& x, const MixedState& y) {
    MixedState out(x.grid());
    const double* xs[5] = {x.B.v.data(), x.w.x.v.data(), x.w.y.v.data(),
                           x.z.x.v.data(), x.z.y.v.data()};
    const double* ys[5] = {y.B.v.data(), y.w.x.v.data(), y.w.y.v.data(),
                           y.z.x.v.data(), y.z.y.v.data()};
    double* os[5] = {out.B.v.data(), out.w.x.v.data(), out.w.y.v.data(),
                     out.z.x.v.data(), out.z.y.v.data()};
    const std::size_t n = x.B.size();
    kernels::for_each(n, [&](std::size_t i) {
        for (int c = 0; c < 5; ++c) os[c][i] = a * xs[c][i] + ys[c][i];
    });
    return out;
}

MixedState scale(double a, const MixedState& x) {
    MixedState zero(x.grid());
    return axpy(a, x, zero);
}

double l2_distance(const MixedState& a, const MixedState& b) {
    const MixedState d = axpy(-1.0, b, a);
    return energy::l2_norm(d);
}

namespace {

MixedState rk4_step(const MixedState& v, double dt, const SimConfig& cfg,
                    bool linearized) {
    auto F = [&](const MixedState& s) {
        return linearized ? rhs_linearized_equilibrium(s, cfg) : rhs_F_eps(s, cfg);
    };
    const MixedState k1 = F(v);
    const MixedState k2 = F(axpy(0.5 * dt, k1, v));
    const MixedState k3 = F(axpy(0.5 * dt, k2, v));
    const MixedState k4 = F(axpy(dt, k3, v));
    MixedState out = v;
    const std::size_t n = v.B.size();
    double* os[5] = {out.B.v.data(), out.w.x.v.data(), out.w.y.v.data(),
                     out.z.x.v.data(), out.z.y.v.data()};
    const double* k1s[5] = {k1.B.v.data(), k1.w.x.v.data(), k1.w.y.v.data(),
                            k1.z.x.v.data(), k1.z.y.v.data()};
    const double* k2s[5] = {k2.B.v.data(), k2.w.x.v.data(), k2.w.y.v.data(),
                            k2.z.x.v.data(), k2.z.y.v.data()};
    const double* k3s[5] = {k3.B.v.data(), k3.w.x.v.data(), k3.w.y.v.data(),
                            k3.z.x.v.data(), k3.z.y.v.data()};
    const double* k4s[5] = {k4.B.v.data(), k4.w.x.v.data(), k4.w.y.v.data(),
                            k4.z.x.v.data(), k4.z.y.v.data()};
    kernels::for_each(n, [&](std::size_t i) {
        for (int c = 0; c < 5; ++c)
            os[c][i] += dt / 6.0 *
                        (k1s[c][i] + 2.0 * k2s[c][i] + 2.0 * k3s[c][i] + k4s[c][i]);
    });
    return out;
}

// Trapezoidal fixed point: v_{m+1} = v0 + dt/2 (F(v0) + F(v_m)).
MixedState picard_step(const MixedState& v0, double dt, const SimConfig& cfg,
                       int depth) {
    const MixedState F0 = rhs_F_eps(v0, cfg);
    MixedState base = axpy(0.5 * dt, F0, v0);
    MixedState iter = axpy(dt, F0, v0);  // Euler predictor
    double prev_res = std::numeric_limits<double>::infinity();
    int growth_streak = 0;
    for (int m = 0; m < cfg.picard_max_iters; ++m) {
        const MixedState Fm = rhs_F_eps(iter, cfg);
        const MixedState next = axpy(0.5 * dt, Fm, base);
        const double res = l2_distance(next, iter);
        iter = next;
        if (res <= cfg.picard_tol) return iter;
        growth_streak = res > prev_res ? growth_streak + 1 : 0;
        prev_res = res;
        if (growth_streak >= 3) break;
    }
    if (depth >= 5)
        throw solver_error("picard_step: no contraction after 5 step halvings");
    const MixedState half = picard_step(v0, dt / 2.0, cfg, depth + 1);
    return picard_step(half, dt / 2.0, cfg, depth + 1);
}

}  // namespace

MixedState step(const MixedState& v_tilde, const SimConfig& cfg) {
    const double speed = wave_speed_bound(v_tilde, cfg.constants);
    if (cfg.dt > cfg.cfl * cfg.grid.spacing() / speed)
        throw solver_error("step: dt violates the CFL bound for the current state");
    if (cfg.mode == TimeMode::rk4) return rk4_step(v_tilde, cfg.dt, cfg, false);
    return picard_step(v_tilde, cfg.dt, cfg, 0);
}

MixedState step_linearized(const MixedState& v_tilde, const SimConfig& cfg) {
    return rk4_step(v_tilde, cfg.dt, cfg, true);
}

TrajectoryRecord integrate(const MixedState& v0_tilde, const SimConfig& cfg,
                           const IntegrateOptions& opts) {
    cfg.validate();
    const MixedState v0_full =
        translate_equilibrium(v0_tilde, cfg.constants, TildeDirection::from_tilde);
    v0_full.validate_range();

    TrajectoryRecord rec;
    const double hs0 = energy::sobolev_norm(v0_tilde, cfg.s_order);
    const double ceiling = cfg.norm_ceiling_factor * std::max(hs0, 1e-300);
    const energy::FrozenCoefficients frozen =
        energy::frozen_at_equilibrium(cfg.constants);

    auto record_sample = [&](double t, const MixedState& v) {
        TrajectoryRecord::Sample s;
        s.t = t;
        s.hs_norm = energy::sobolev_norm(v, cfg.s_order);
        s.l2_norm = energy::l2_norm(v);
        s.div_w_max = max_divergence(v.w);
        const MixedState full =
            translate_equilibrium(v, cfg.constants, TildeDirection::from_tilde);
        s.min_B = kernels::min(full.B.v);
        s.max_B = kernels::max(full.B.v);
        s.sigma_energy =
            energy::sigma_energy(v, frozen, cfg.s_order, cfg.lambda_cutoff);
        rec.samples.push_back(s);
        if (opts.keep_snapshots) rec.snapshots.push_back(v);
    };

    MixedState v = v0_tilde;
    record_sample(0.0, v);

    const long long nsteps = static_cast<long long>(std::ceil(cfg.t_end / cfg.dt - 1e-12));
    double t = 0.0;
    for (long long k = 0; k < nsteps; ++k) {
        const double dt_k = std::min(cfg.dt, cfg.t_end - t);
        SimConfig local = cfg;
        local.dt = dt_k;
        try {
            v = step(v, local);
        } catch (const solver_error& e) {
            rec.reason = TrajectoryRecord::Stop::step_failure;
            rec.message = e.what();
            rec.t_final = t;
            return rec;
        }
        t += dt_k;

        const bool record_now = ((k + 1) % cfg.record_every == 0) || k + 1 == nsteps;
        const MixedState full =
            translate_equilibrium(v, cfg.constants, TildeDirection::from_tilde);
        const double minB = kernels::min(full.B.v);
        const double maxB = kernels::max(full.B.v);
        if (minB <= cfg.b_floor || maxB >= 1.0 - cfg.b_floor) {
            record_sample(t, v);
            rec.reason = TrajectoryRecord::Stop::b_floor;
            rec.message = "B left the admissible band";
            rec.t_final = t;
            return rec;
        }
        if (record_now) {
            record_sample(t, v);
            if (rec.samples.back().hs_norm > ceiling) {
                rec.reason = TrajectoryRecord::Stop::norm_ceiling;
                rec.message = "H^s norm exceeded the ceiling";
                rec.t_final = t;
                return rec;
            }
        }
    }
    rec.reason = TrajectoryRecord::Stop::completed;
    rec.t_final = t;
    return rec;
}

namespace {

// xorshift-mixed uniform and Box-Muller normal from raw mt19937_64 draws;
// avoids std::normal_distribution, whose sequence is not pinned by the
// standard.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ^ 0x9E3779B97F4A7C15ull) {
        next();
        next();
    }
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    double uniform() {  // (0,1)
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }
    double normal() {
        const double u = uniform(), v = uniform();
        return std::sqrt(-2.0 * std::log(u)) *
               std::cos(2.0 * std::numbers::pi * v);
    }
};

}  // namespace

MixedState make_initial_data(const Grid2& grid, const ModelConstants& c,
                             double amplitude, std::uint64_t seed, double s_order) {
    grid.validate();
    c.validate();
    MixedState v(grid);
    if (amplitude == 0.0) return v;

    Rng rng(seed);
    ScalarField* comps[5] = {&v.B, &v.w.x, &v.w.y, &v.z.x, &v.z.y};
    const double twopi = 2.0 * std::numbers::pi;
    for (auto* f : comps) {
        // fixed mode iteration order keeps the draw sequence deterministic
        for (int kx = 0; kx <= 4; ++kx) {
            for (int ky = -4; ky <= 4; ++ky) {
                if (kx == 0 && ky <= 0) continue;
                if (kx * kx + ky * ky > 16) continue;
                const double amp = rng.normal() / (1.0 + kx * kx + ky * ky);
                const double phase = twopi * rng.uniform();
                for (int iy = 0; iy < grid.n; ++iy) {
                    for (int ix = 0; ix < grid.n; ++ix) {
                        const double arg =
                            twopi * (kx * ix + ky * iy) / grid.n + phase;
                        (*f)(ix, iy) += amp * std::cos(arg);
                    }
                }
            }
        }
    }
    v.w = leray_project(v.w);

    const double hs = energy::sobolev_norm(v, s_order);
    if (hs == 0.0) return v;
    v = scale(amplitude / hs, v);

    const double bb = c.equilibrium_B();
    const double bmax = kernels::max_abs(v.B.v);
    if (bb - bmax <= 0.0 || bb + bmax >= 1.0)
        throw validation_error("make_initial_data: amplitude too large for B in (0,1)");
    return v;
}

}  // namespace mixphase
