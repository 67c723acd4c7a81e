#pragma once

// Shared synthetic market fixtures: quotes sampled from the closed-form
// lognormal oracle at risk-neutral quantile levels, plus matching contexts
// and physical/risk-neutral distributions.

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "spdval/call_curve.hpp"
#include "spdval/distribution.hpp"
#include "spdval/state_price_density.hpp"

namespace fixtures {

//! Temporarily overrides the support-truncation level; distributions built in
//! scope keep the finer tails after restore (truncation is baked in at
//! construction).
struct ScopedTailTolerance {
    spdval::Tolerances saved;
    explicit ScopedTailTolerance(double eps_tail) : saved(spdval::default_tolerances()) {
        spdval::Tolerances t = saved;
        t.eps_tail = eps_tail;
        spdval::set_global_tolerances(t);
    }
    ~ScopedTailTolerance() { spdval::set_global_tolerances(saved); }
};

inline const std::vector<double>& quote_levels() {
    static const std::vector<double> levels = {1e-4, 1e-3, 0.01, 0.05,  0.12,
                                               0.25, 0.40, 0.50, 0.60,  0.75,
                                               0.88, 0.95, 0.99, 0.999, 0.9999};
    return levels;
}

// Inverse normal CDF by bisection on the oracle CDF (slow, test-only).
inline double oracle_inv(double u) {
    return oracle::bisect([](double z) { return oracle::Phi(z); }, -40.0, 40.0, u);
}

inline double rn_quantile(const oracle::BsModel& m, double u) {
    const double srt = m.sigma * std::sqrt(m.T);
    const double mu = std::log(m.s0) + (m.r - 0.5 * m.sigma * m.sigma) * m.T;
    return std::exp(mu + srt * oracle_inv(u));
}

//! Quotes at RN quantile strikes, optionally scaled by (1 - default_p).
inline std::vector<spdval::Quote> bs_quotes(const oracle::BsModel& m, double default_p = 0.0) {
    std::vector<spdval::Quote> quotes;
    for (double u : quote_levels()) {
        const double k = rn_quantile(m, u);
        quotes.push_back({k, (1.0 - default_p) * m.call(k)});
    }
    return quotes;
}

inline spdval::MarketContext bs_context(const oracle::BsModel& m, double default_p = 0.0) {
    spdval::MarketContext ctx;
    ctx.t = 0.0;
    ctx.T = m.T;
    ctx.bond_price = m.df();
    ctx.spot = (1.0 - default_p) * m.s0;
    ctx.short_rate = m.r;
    ctx.validate();
    return ctx;
}

//! Physical terminal distribution of the benchmark under drift mu.
inline spdval::Distribution physical_lognormal(const oracle::BsModel& m, double mu) {
    const double srt = m.sigma * std::sqrt(m.T);
    return spdval::Distribution::lognormal(std::log(m.s0) + (mu - 0.5 * m.sigma * m.sigma) * m.T,
                                           srt);
}

//! Toy market: q ≡ B on [0, 1], i.e. C(K) = B(1-K)²/2, spot B/2.
inline spdval::CallCurve uniform_market_curve(double bond = 1.0) {
    spdval::MarketContext ctx;
    ctx.t = 0.0;
    ctx.T = 1.0;
    ctx.bond_price = bond;
    ctx.spot = bond / 2.0;
    const double b = bond;
    return spdval::CallCurve::from_functions(
        ctx, [b](double k) { return k >= 1.0 ? 0.0 : b * (1.0 - k) * (1.0 - k) / 2.0; },
        [b](double k) { return k >= 1.0 ? 0.0 : -b * (1.0 - k); },
        [b](double k) { return (k >= 0.0 && k <= 1.0) ? b : 0.0; }, 0.0, 1.0, 1.0);
}

} // namespace fixtures
