#include "spdval/binding_map.hpp"

#include <algorithm>
#include <cmath>

#include "spdval/errors.hpp"
#include "spdval/log.hpp"

namespace spdval {

BindingMap::BindingMap(Distribution source, Distribution target, double eps_den)
    : phi1_(std::move(source)), phi2_(std::move(target)), eps_den_(eps_den) {}

double BindingMap::map(double x) const {
    return phi2_.quantile(std::min(1.0, std::max(0.0, phi1_.cdf(x))));
}

double BindingMap::derivative(double x) const {
    const double p1 = phi1_.density(x);
    const double p2 = phi2_.density(map(x));
    if (p2 >= eps_den_) return p1 / p2;
    if (p1 <= eps_den_) return 0.0; // 0/0 at a support edge
    raise(ErrorCode::TargetDensityVanishes,
          "benchmark density vanishes at K(x) while the cash flow carries mass at x");
}

BindingMap build_binding_map(const Distribution& phi1, const Distribution& phi2,
                             const Tolerances& tol) {
    if (!phi1.valid() || !phi2.valid())
        raise(ErrorCode::InvalidInput, "binding map needs two valid distributions");

    // Target density must be positive on the interior of its support, or the
    // derivative field blows up under live mass.
    const double lo = phi2.support_lo(), hi = phi2.support_hi();
    for (int i = 1; i < 64; ++i) {
        const double u = static_cast<double>(i) / 64.0;
        const double k = phi2.quantile(u);
        if (k > lo && k < hi && phi2.density(k) < tol.eps_den)
            raise(ErrorCode::TargetDensityVanishes,
                  "benchmark density vanishes strictly inside its support");
    }
    if (std::fabs(phi1.support_lo()) > tol.eps_den * std::max(1.0, std::fabs(phi1.support_hi())))
        log::info("cash-flow support does not start at 0 (min supp = ", phi1.support_lo(),
                  "); shift-invariance covers this case");
    return BindingMap(phi1, phi2, tol.eps_den);
}

double verify_measure_preserving(const BindingMap& bm, int n_intervals) {
    if (n_intervals < 1) raise(ErrorCode::InvalidInput, "need at least one interval");
    const Distribution& p = bm.source();
    const Distribution& q = bm.target();
    double worst = 0.0;
    double x_prev = p.quantile(0.0);
    double qk_prev = q.cdf(bm.map(x_prev));
    double pk_prev = p.cdf(x_prev);
    for (int k = 1; k <= n_intervals; ++k) {
        const double u = static_cast<double>(k) / n_intervals;
        const double x = p.quantile(u);
        const double pk = p.cdf(x);
        const double qk = q.cdf(bm.map(x));
        worst = std::max(worst, std::fabs((qk - qk_prev) - (pk - pk_prev)));
        x_prev = x;
        pk_prev = pk;
        qk_prev = qk;
    }
    return worst;
}

double derivative_consistency(const BindingMap& bm, std::span<const double> grid) {
    const Distribution& p = bm.source();
    const double span = p.support_hi() - p.support_lo();
    const double h = span * 1e-6;
    double dmax = 0.0;
    for (double x : grid) dmax = std::max(dmax, p.density(x));

    double worst = 0.0;
    for (double x : grid) {
        if (x - h <= p.support_lo() || x + h >= p.support_hi()) continue;
        if (p.density(x) < 1e-6 * dmax) continue; // derivative ~0/0, skip edges
        const double fd = (bm.map(x + h) - bm.map(x - h)) / (2.0 * h);
        const double an = bm.derivative(x);
        const double rel = std::fabs(fd - an) / std::max(std::fabs(an), 1e-12);
        worst = std::max(worst, rel);
    }
    return worst;
}

} // namespace spdval
