#include "mixphase/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mixphase/kernels.hpp"
#include "mixphase/solver.hpp"
#include "mixphase/spectral.hpp"
#include "mixphase/symbols2p.hpp"

namespace mixphase::energy {

namespace {

struct StateSpectra {
    SpectralField c[5];
};

StateSpectra spectra(const MixedState& v) {
    return {{forward(v.B), forward(v.w.x), forward(v.w.y), forward(v.z.x),
             forward(v.z.y)}};
}

}  // namespace

double l2_norm(const MixedState& v) {
    const StateSpectra s = spectra(v);
    double acc = 0.0;
    for (const auto& f : s.c) acc += spectral_norm_sq(f);
    return std::sqrt(acc);
}

double sobolev_norm(const MixedState& v, double s) {
    if (!(s >= 0.0)) throw validation_error("sobolev_norm: s must be >= 0");
    const StateSpectra sp = spectra(v);
    const Grid2& g = v.grid();
    const int n = g.n, nk = n / 2 + 1;
    double acc = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const double ky = g.wavenumber(g.freq_int(iy));
        for (int kx = 0; kx < nk; ++kx) {
            const double kxv = g.wavenumber(kx);
            const double wgt = (kx == 0 || kx == n / 2) ? 1.0 : 2.0;
            const double lam = std::pow(1.0 + kxv * kxv + ky * ky, s);
            double m2 = 0.0;
            for (const auto& f : sp.c) m2 += std::norm(f.at(kx, iy));
            acc += wgt * lam * m2;
        }
    }
    return std::sqrt(acc);
}

FrozenCoefficients frozen_at_equilibrium(const ModelConstants& c) {
    return {c.equilibrium_B(), Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(),
            c.gamma};
}

FrozenCoefficients frozen_at_state_mean(const MixedState& v, double gamma) {
    const double n = static_cast<double>(v.B.size());
    FrozenCoefficients f;
    f.B = kernels::sum(v.B.v) / n;
    f.w = {kernels::sum(v.w.x.v) / n, kernels::sum(v.w.y.v) / n};
    f.z = {kernels::sum(v.z.x.v) / n, kernels::sum(v.z.y.v) / n};
    f.gamma = gamma;
    return f;
}

namespace {

using symbols2p::Mat5;

// Sigma_hat(k); identity below the cutoff.
Mat5 sigma_symbol(const FrozenCoefficients& frozen, double lambda, double kx,
                  double ky) {
    const double kn = std::hypot(kx, ky);
    const double th = theta_profile(kn / lambda);
    const double hi = (1.0 - th) * (1.0 - th);
    Mat5 out = th * th * Mat5::Identity();
    if (hi == 0.0) return out;
    symbols2p::FrozenPoint p{{kx, ky}, frozen.B, frozen.w, frozen.z, frozen.gamma};
    const Mat5 Vi = symbols2p::eig_projected(p).V_inv;
    out += hi * (Vi.transpose() * Vi);
    return out;
}

}  // namespace

double sigma_energy(const MixedState& v, const FrozenCoefficients& frozen, double s,
                    double lambda) {
    const StateSpectra sp = spectra(v);
    const Grid2& g = v.grid();
    const int n = g.n, nk = n / 2 + 1;
    double acc = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const double ky = g.wavenumber(g.freq_int(iy));
        for (int kx = 0; kx < nk; ++kx) {
            const double kxv = g.wavenumber(kx);
            const double wgt = (kx == 0 || kx == n / 2) ? 1.0 : 2.0;
            const double lam = std::pow(1.0 + kxv * kxv + ky * ky, s);
            Eigen::Matrix<std::complex<double>, 5, 1> vk;
            for (int c = 0; c < 5; ++c) vk(c) = sp.c[c].at(kx, iy);
            if (vk.squaredNorm() == 0.0) continue;
            const Mat5 sig = sigma_symbol(frozen, lambda, kxv, ky);
            const double quad =
                (vk.adjoint() * sig.cast<std::complex<double>>() * vk)(0).real();
            acc += wgt * lam * quad;
        }
    }
    return acc;
}

std::pair<double, double> norm_equivalence_constants(const FrozenCoefficients& frozen,
                                                     double s, double lambda,
                                                     const Grid2& grid) {
    (void)s;  // the constants bound Sigma against Lambda^s uniformly in s
    grid.validate();
    const int n = grid.n, nk = n / 2 + 1;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const double ky = grid.wavenumber(grid.freq_int(iy));
        for (int kx = 0; kx < nk; ++kx) {
            const double kxv = grid.wavenumber(kx);
            const Mat5 sig = sigma_symbol(frozen, lambda, kxv, ky);
            Eigen::SelfAdjointEigenSolver<Mat5> es(sig, Eigen::EigenvaluesOnly);
            lo = std::min(lo, es.eigenvalues()(0));
            hi = std::max(hi, es.eigenvalues()(4));
        }
    }
    return {lo, hi};
}

GronwallFit gronwall_fit(const TrajectoryRecord& traj) {
    if (traj.samples.size() < 10)
        throw validation_error("gronwall_fit: need at least 10 records");
    const std::size_t n = traj.samples.size();
    std::vector<double> t(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = traj.samples[i].t;
        y[i] = std::log(traj.samples[i].hs_norm);
    }
    GronwallFit fit;
    fit.M = traj.samples.front().hs_norm;
    fit.M_tilde = fit.M;
    for (const auto& s : traj.samples) fit.M_tilde = std::max(fit.M_tilde, s.hs_norm);

    double spread = 0.0;
    for (double yi : y) spread = std::max(spread, std::abs(yi - y[0]));
    if (spread < 1e-12 * std::max(1.0, std::abs(y[0]))) {
        fit.degenerate = true;
        fit.c = 0.0;
        fit.predicted_T = std::numeric_limits<double>::infinity();
        fit.envelope_residual = 0.0;
        return fit;
    }

    // tightest envelope log||v(t)|| <= log M + c t anchored at t = 0
    double c = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < n; ++i)
        if (t[i] > 0.0) c = std::max(c, (y[i] - y[0]) / t[i]);
    fit.c = c;
    const double range =
        *std::max_element(y.begin(), y.end()) - *std::min_element(y.begin(), y.end());
    double slack = 0.0;
    for (std::size_t i = 0; i < n; ++i) slack += (y[0] + c * t[i]) - y[i];
    fit.envelope_residual = slack / static_cast<double>(n) / std::max(range, 1e-300);
    fit.predicted_T = c > 0.0 ? std::log(fit.M_tilde / fit.M) / c
                              : std::numeric_limits<double>::infinity();
    return fit;
}

std::vector<EpsStudyRow> epsilon_convergence_study(const SimConfig& base,
                                                   const MixedState& v0_tilde,
                                                   const std::vector<double>& eps_list) {
    if (eps_list.size() < 3)
        throw validation_error("epsilon_convergence_study: need >= 3 epsilons");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw validation_error("epsilon_convergence_study: eps must decrease");

    std::vector<TrajectoryRecord> recs;
    for (double eps : eps_list) {
        SimConfig cfg = base;
        cfg.epsilon = eps;
        IntegrateOptions opts;
        opts.keep_snapshots = true;
        TrajectoryRecord rec = integrate(v0_tilde, cfg, opts);
        if (rec.reason != TrajectoryRecord::Stop::completed)
            throw solver_error(std::string("epsilon_convergence_study: trajectory at eps=") +
                               std::to_string(eps) + " aborted: " + rec.message);
        recs.push_back(std::move(rec));
    }

    std::vector<EpsStudyRow> rows;
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
        const auto& a = recs[i].snapshots;
        const auto& b = recs[i + 1].snapshots;
        const std::size_t m = std::min(a.size(), b.size());
        double d = 0.0;
        for (std::size_t j = 0; j < m; ++j) d = std::max(d, l2_distance(a[j], b[j]));
        rows.push_back({eps_list[i], d, std::numeric_limits<double>::quiet_NaN()});
    }
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        rows[i].order = std::log2(rows[i].distance / rows[i + 1].distance);
    return rows;
}

}  // namespace mixphase::energy
