#pragma once

// Monte-Carlo oracle: rejection sampling from region-conditional joint
// densities against a piecewise-constant grid envelope, and the plug-in
// estimator of E[log ratio] that every quadrature MI is validated
// against. Deterministic for a fixed seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lifeinfo/bivariate_model.hpp"
#include "lifeinfo/errors.hpp"
#include "lifeinfo/regions.hpp"

namespace lifeinfo {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n_samples = 0;
    double acceptance_rate = 0.0;
};

struct SampleSet {
    std::vector<double> x, y; // shifted region coordinates
    double acceptance_rate = 0.0;
    long envelope_violations = 0;
};

namespace detail {

// mt19937_64 output mapped to [0,1); the engine sequence is fixed by the
// standard, so estimates are reproducible across platforms.
class UniformStream {
  public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 engine_;
};

// Piecewise-constant majorant of the (unnormalized) conditional density
// on [0,Xc] x [0,Yc], geometric node spacing so that heavy tails get
// resolved. Cell heights are subgrid maxima with a 1.5x safety factor.
struct GridEnvelope {
    std::vector<double> xs, ys;      // node coordinates, size N+1
    std::vector<double> height;      // per cell, row-major
    std::vector<double> cum_weight;  // cumulative env*area
    double total_weight = 0.0;

    template <typename Density>
    static GridEnvelope build(Density&& f, double Xc, double Yc, int n_cells = 48) {
        GridEnvelope env;
        auto fill_axis = [n_cells](std::vector<double>& v, double hi) {
            v.resize(n_cells + 1);
            const double scale = std::log1p(hi);
            for (int i = 0; i <= n_cells; ++i)
                v[i] = std::expm1(scale * i / n_cells);
            v.back() = hi;
        };
        fill_axis(env.xs, Xc);
        fill_axis(env.ys, Yc);
        env.height.resize(static_cast<size_t>(n_cells) * n_cells);
        env.cum_weight.resize(env.height.size());
        double cum = 0.0;
        for (int i = 0; i < n_cells; ++i) {
            for (int j = 0; j < n_cells; ++j) {
                double peak = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        const double x = env.xs[i] + (env.xs[i + 1] - env.xs[i]) * a / 3.0;
                        const double y = env.ys[j] + (env.ys[j + 1] - env.ys[j]) * b / 3.0;
                        peak = std::max(peak, f(x, y));
                    }
                const double h = peak * 1.5;
                const size_t idx = static_cast<size_t>(i) * n_cells + j;
                env.height[idx] = h;
                cum += h * (env.xs[i + 1] - env.xs[i]) * (env.ys[j + 1] - env.ys[j]);
                env.cum_weight[idx] = cum;
            }
        }
        env.total_weight = cum;
        return env;
    }
};

} // namespace detail

/// n i.i.d. samples from the region-conditional joint density via
/// rejection sampling; coordinates are shifted for residual axes.
/// Throws EnvelopeTooLoose when the acceptance rate drops below 1e-4.
inline SampleSet sample_conditional(const BivariateLifetimeModel& m,
                                    const ConditioningRegion& region, long n,
                                    std::uint64_t seed) {
    require_region_probability(m, region);
    const double Xc = region_cutoff_x(m, region, 1e-9);
    const double Yc = region_cutoff_y(m, region, 1e-9);
    const bool x_past =
        region.kind == RegionKind::past_past || region.kind == RegionKind::past_residual;
    const bool y_past =
        region.kind == RegionKind::past_past || region.kind == RegionKind::residual_past;
    const double xs_shift = x_past ? 0.0 : region.s;
    const double ys_shift = y_past ? 0.0 : region.t;
    auto raw_density = [&](double x, double y) {
        return m.pdf(x + xs_shift, y + ys_shift);
    };

    auto env = detail::GridEnvelope::build(raw_density, Xc, Yc);
    if (!(env.total_weight > 0.0))
        throw ZeroRegionProbability("conditional density vanishes on the cut-off domain");

    detail::UniformStream rng(seed);
    SampleSet out;
    out.x.reserve(n);
    out.y.reserve(n);
    const int n_cells = static_cast<int>(env.xs.size()) - 1;
    long proposals = 0;
    while (static_cast<long>(out.x.size()) < n) {
        ++proposals;
        const double pick = rng.next() * env.total_weight;
        const auto it = std::upper_bound(env.cum_weight.begin(), env.cum_weight.end(), pick);
        const size_t idx = std::min(env.cum_weight.size() - 1,
                                    static_cast<size_t>(it - env.cum_weight.begin()));
        const int i = static_cast<int>(idx) / n_cells;
        const int j = static_cast<int>(idx) % n_cells;
        const double x = env.xs[i] + (env.xs[i + 1] - env.xs[i]) * rng.next();
        const double y = env.ys[j] + (env.ys[j + 1] - env.ys[j]) * rng.next();
        const double h = env.height[idx];
        if (h <= 0.0) continue;
        const double ratio = raw_density(x, y) / h;
        if (ratio > 1.0) ++out.envelope_violations;
        if (rng.next() < ratio) {
            out.x.push_back(x);
            out.y.push_back(y);
        }
        if (proposals >= 20000 && out.x.size() < static_cast<size_t>(proposals) / 10000)
            throw EnvelopeTooLoose("acceptance rate below 1e-4; tighten the domain cutoff");
    }
    out.acceptance_rate = static_cast<double>(out.x.size()) / static_cast<double>(proposals);
    return out;
}

/// Plug-in MC estimate of the region MI: the sample mean of
/// log[f_cond / (fX_cond fY_cond)] with its standard error.
inline McEstimate mc_mutual_information(const BivariateLifetimeModel& m,
                                        const ConditioningRegion& region, long n,
                                        std::uint64_t seed) {
    if (n < 1000)
        throw std::invalid_argument("mc_mutual_information: n >= 1000 required");
    const double p = require_region_probability(m, region);
    const SampleSet samples = sample_conditional(m, region, n, seed);

    double sum = 0.0, sum_sq = 0.0;
    for (long i = 0; i < n; ++i) {
        const double x = samples.x[static_cast<size_t>(i)];
        const double y = samples.y[static_cast<size_t>(i)];
        const double f = conditional_density(m, region, x, y);
        const double gx = detail::raw_marginal_x(m, region, x) / p;
        const double gy = detail::raw_marginal_y(m, region, y) / p;
        const double term = std::log(f / (gx * gy));
        sum += term;
        sum_sq += term * term;
    }
    McEstimate est;
    est.n_samples = n;
    est.mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, sum_sq / static_cast<double>(n) - est.mean * est.mean);
    est.std_error = std::sqrt(var / static_cast<double>(n));
    est.acceptance_rate = samples.acceptance_rate;
    return est;
}

} // namespace lifeinfo
