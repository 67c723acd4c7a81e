#include "spdval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "spdval/errors.hpp"
#include "spdval/log.hpp"
#include "spdval/math/quadrature.hpp"

namespace spdval {

namespace {

void require_equivalent(const MeasurePair& pair) {
    if (!(pair.common_lo < pair.common_hi))
        raise(ErrorCode::NotEquivalent, "supports do not overlap");
    // Both metrics live on the common support. Tail-truncated families may
    // legitimately leave a sliver outside it; a gross mismatch means the pair
    // degenerates on a positive-mass set.
    const double mass_p = pair.p.cdf(pair.common_hi) - pair.p.cdf(pair.common_lo);
    const double mass_q = pair.q.cdf(pair.common_hi) - pair.q.cdf(pair.common_lo);
    constexpr double min_common_mass = 0.9;
    if (mass_p < min_common_mass || mass_q < min_common_mass)
        raise(ErrorCode::NotEquivalent,
              "a positive-mass set lies outside the common support");
    if (mass_p < 1.0 - 1e-6 || mass_q < 1.0 - 1e-6)
        log::info("metrics restricted to the common support; excluded mass p=",
                  1.0 - mass_p, " q=", 1.0 - mass_q);
    // Ratio must stay nondegenerate where either carries real mass.
    for (int i = 1; i < 100; ++i) {
        const double u = i / 100.0;
        for (const double x : {pair.p.quantile(u), pair.q.quantile(u)}) {
            if (x <= pair.common_lo || x >= pair.common_hi) continue;
            const double fp = pair.p.density(x), fq = pair.q.density(x);
            if (fp <= 0.0 && fq <= 0.0) continue;
            const double ratio = fp / fq;
            if (!std::isfinite(ratio) || ratio > 1e30 || ratio < 1e-30)
                raise(ErrorCode::NotEquivalent,
                      "density ratio degenerates inside the common support");
        }
    }
}

// Shared panel seeds so both metrics (and both argument orders) subdivide the
// same way: union of both quantile ladders clipped to the common support.
std::vector<double> panel_seeds(const MeasurePair& pair) {
    static const double levels[] = {1e-4, 0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5,
                                    0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 1.0 - 1e-4};
    std::vector<double> bp;
    bp.push_back(pair.common_lo);
    for (double u : levels) {
        bp.push_back(pair.p.quantile(u));
        bp.push_back(pair.q.quantile(u));
    }
    bp.push_back(pair.common_hi);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::remove_if(bp.begin(), bp.end(),
                            [&](double x) { return x < pair.common_lo || x > pair.common_hi; }),
             bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    return bp;
}

double integrate_metric(const MeasurePair& pair, const std::function<double(double)>& f) {
    math::QuadOptions opt;
    opt.abs_tol = 1e-6;
    math::QuadResult r = math::integrate_adaptive_split(f, panel_seeds(pair), opt);
    const double target = default_tolerances().eps_quad * std::max(1.0, std::fabs(r.value));
    if (r.error > target || target < opt.abs_tol) {
        opt.abs_tol = target;
        r = math::integrate_adaptive_split(f, panel_seeds(pair), opt);
    }
    return r.value;
}

} // namespace

MeasurePair make_measure_pair(const Distribution& p, const Distribution& q) {
    MeasurePair pair;
    pair.p = p;
    pair.q = q;
    pair.common_lo = std::max(p.support_lo(), q.support_lo());
    pair.common_hi = std::min(p.support_hi(), q.support_hi());
    return pair;
}

double relative_entropy(const MeasurePair& pair, EntropyVariant variant) {
    require_equivalent(pair);
    const Distribution p = pair.p, q = pair.q;
    const bool absolute = variant == EntropyVariant::absolute_log;
    auto f = [p, q, absolute](double x) {
        const double fp = p.density(x);
        if (fp <= 0.0) return 0.0;
        const double fq = q.density(x);
        if (fq <= 0.0) return 0.0; // equivalence pre-checked; boundary sliver
        const double lg = std::log(fp) - std::log(fq);
        return (absolute ? std::fabs(lg) : lg) * fp;
    };
    return integrate_metric(pair, f);
}

double symmetric_distance(const MeasurePair& pair) {
    require_equivalent(pair);
    const Distribution p = pair.p, q = pair.q;
    // |log fp - log fq| · fp·fq/(fp+fq); the harmonic weight dies faster than
    // the log diverges, so vanishing densities contribute 0.
    auto f = [p, q](double x) {
        const double fp = p.density(x), fq = q.density(x);
        if (fp <= 0.0 || fq <= 0.0) return 0.0;
        const double w = (fp * fq) / (fp + fq);
        return std::fabs(std::log(fp) - std::log(fq)) * w;
    };
    return integrate_metric(pair, f);
}

} // namespace spdval
