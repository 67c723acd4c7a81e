#include "spdval/valuation.hpp"

#include <algorithm>
#include <cmath>

#include "spdval/errors.hpp"
#include "spdval/log.hpp"
#include "spdval/math/quadrature.hpp"

namespace spdval {

namespace {

constexpr int kQuantilePanels = 64;

// x · φ₁(x)/φ₂(K(x)) · q(K(x)), log-space with an underflow floor so support
// edges where both densities die contribute 0 instead of 0/0 noise.
struct Integrand {
    const ValuationInputs& in;
    const BindingMap& bm;
    double eps_den;

    double operator()(double x) const {
        const double p1 = in.phi1.density(x);
        if (p1 <= 0.0) return 0.0;
        const double k = bm.map(x);
        const double qv = in.spd.q(k);
        if (qv <= 0.0) return 0.0;
        const double p2 = in.phi2.density(k);
        if (p2 <= 0.0) {
            if (p1 <= eps_den) return 0.0;
            raise(ErrorCode::TargetDensityVanishes,
                  "benchmark density vanishes under live cash-flow mass");
        }
        const double lg = std::log(p1) - std::log(p2) + std::log(qv);
        if (lg < -700.0) return 0.0;
        return x * std::exp(lg);
    }
};

std::vector<double> quantile_panels(const Distribution& d, int n) {
    std::vector<double> bp;
    bp.reserve(n + 1);
    bp.push_back(d.support_lo());
    for (int k = 1; k < n; ++k) {
        const double x = d.quantile(static_cast<double>(k) / n);
        if (x > bp.back() + 1e-300) bp.push_back(x);
    }
    bp.push_back(d.support_hi());
    return bp;
}

math::QuadResult integrate_value(const ValuationInputs& in, const BindingMap& bm) {
    Integrand f{in, bm, default_tolerances().eps_den};
    const std::vector<double> bp = quantile_panels(in.phi1, kQuantilePanels);
    math::QuadOptions opt;
    opt.abs_tol = 1e-6;
    math::QuadResult r = math::integrate_adaptive_split(f, bp, opt);
    const double target = default_tolerances().eps_quad * std::max(1.0, std::fabs(r.value));
    if (r.error > target || target < opt.abs_tol) {
        opt.abs_tol = target;
        r = math::integrate_adaptive_split(f, bp, opt);
    }
    return r;
}

ValuationDiagnostics make_diagnostics(const ValuationInputs& in, const BindingMap& bm,
                                      double quad_error) {
    ValuationDiagnostics d;
    d.tail_mass_phi1 = in.phi1.truncated_tail_mass();
    d.tail_mass_phi2 = in.phi2.truncated_tail_mass();
    d.quad_error = quad_error;
    d.measure_preservation = verify_measure_preserving(bm, 64);
    return d;
}

} // namespace

void ValuationInputs::validate() const {
    if (!phi1.valid() || !phi2.valid() || !spd.valid())
        raise(ErrorCode::InvalidInput, "valuation inputs incomplete");
    ctx.validate();
    // K maps into supp φ₂, so the SPD (defined on K >= 0) covers K(supp φ₁)
    // exactly when the benchmark support is nonnegative.
    if (phi2.support_lo() < -1e-12 * std::max(1.0, std::fabs(phi2.support_hi())))
        raise(ErrorCode::InvalidInput,
              "benchmark support extends below zero; SPD cannot cover K(supp phi1)");
    if (bm_range_hi() > spd.domain_hi() * (1.0 + 1e-9))
        log::debug("K(supp phi1) reaches past the SPD domain end; tail q is ~0 there");
}

double ValuationInputs::bm_range_hi() const { return phi2.support_hi(); }

ValuationReport value_closed_form(const ValuationInputs& in) {
    in.validate();
    const BindingMap bm = build_binding_map(in.phi1, in.phi2);
    const math::QuadResult r = integrate_value(in, bm);

    ValuationReport rep;
    rep.value = r.value;
    rep.method = "closed-form";
    rep.n = 0;
    rep.portfolio = build_ad_portfolio(in);
    rep.diagnostics = make_diagnostics(in, bm, r.error);
    return rep;
}

SignedMeasure build_ad_portfolio(const ValuationInputs& in) {
    in.validate();
    const BindingMap bm = build_binding_map(in.phi1, in.phi2);
    const double ylo = bm.map(in.phi1.support_lo());
    const double yhi = bm.map(in.phi1.support_hi());
    const Distribution phi1 = in.phi1;
    const Distribution phi2 = in.phi2;
    // Position weight at strike y is the cash-flow level bound there:
    // w(y) = K⁻¹(y) = F₁⁻¹(F₂(y)).
    auto w = [phi1, phi2](double y) { return phi1.quantile(phi2.cdf(y)); };
    return SignedMeasure::from_function(std::move(w), ylo, yhi);
}

ValuationReport finite_portfolio_value(const ValuationInputs& in, int n) {
    in.validate();
    if (n < 2) raise(ErrorCode::InvalidInput, "finite portfolio needs n >= 2");

    std::vector<double> x(n + 1), y(n + 1);
    for (int k = 0; k <= n; ++k) {
        const double u = static_cast<double>(k) / n;
        x[k] = in.phi1.quantile(u);
        y[k] = in.phi2.quantile(u); // = K(x_k): matching quantiles
    }

    double value = 0.0;
    std::vector<double> mid(n);
    for (int k = 0; k < n; ++k) {
        mid[k] = 0.5 * (x[k] + x[k + 1]);
        value += mid[k] * (in.spd.cumulative(y[k + 1]) - in.spd.cumulative(y[k]));
    }

    // Digital (cash-or-nothing) volumes: the telescoped midpoint weights.
    std::vector<Atom> atoms(n + 1);
    atoms[0] = {y[0], mid[0]};
    for (int k = 1; k < n; ++k) atoms[k] = {y[k], 0.5 * (x[k + 1] - x[k - 1])};
    atoms[n] = {y[n], -mid[n - 1]};

    ValuationReport rep;
    rep.value = value;
    rep.method = "finite-n";
    rep.n = n;
    rep.portfolio = SignedMeasure::atoms_only(std::move(atoms));
    const BindingMap bm = build_binding_map(in.phi1, in.phi2);
    rep.diagnostics = make_diagnostics(in, bm, 0.0);
    return rep;
}

ConvergenceStudy convergence_study(const ValuationInputs& in, std::span<const int> ns) {
    for (std::size_t i = 1; i < ns.size(); ++i)
        if (ns[i] <= ns[i - 1]) raise(ErrorCode::InvalidInput, "ns must be increasing");
    ConvergenceStudy out;
    out.reference = value_closed_form(in).value;
    for (int n : ns) {
        const double v = finite_portfolio_value(in, n).value;
        out.rows.push_back({n, v, std::fabs(v - out.reference)});
    }
    return out;
}

double mm_separated_value(const ValuationInputs& in, double a) {
    ValuationInputs shifted = in;
    shifted.phi1 = Distribution::affine(in.phi1, 1.0, a);
    return value_closed_form(shifted).value;
}

double scaled_value(const ValuationInputs& in, double c) {
    if (!(c > 0.0)) raise(ErrorCode::NonPositiveScale, "scale factor must be positive");
    ValuationInputs scaled = in;
    scaled.phi1 = Distribution::affine(in.phi1, c, 0.0);
    return value_closed_form(scaled).value;
}

namespace {

// Peak counting with hysteresis: a mode only registers once the profile has
// moved by 10% of the max, so kernel-estimate ripple on flat densities does
// not read as multimodality. Distinct modes separated by a shallower dip
// deliberately pass.
bool is_unimodal(const Distribution& d) {
    const int n = 801;
    const double lo = d.support_lo(), hi = d.support_hi();
    std::vector<double> v(n);
    double vmax = 0.0;
    for (int i = 0; i < n; ++i) {
        v[i] = d.density(lo + (hi - lo) * i / (n - 1));
        vmax = std::max(vmax, v[i]);
    }
    const double thr = 0.1 * vmax;
    double run_hi = v[0], run_lo = v[0];
    int direction = 0, peaks = 0;
    for (int i = 1; i < n; ++i) {
        if (direction >= 0) {
            run_hi = std::max(run_hi, v[i]);
            if (v[i] < run_hi - thr) { // confirmed fall ends a peak
                ++peaks;
                direction = -1;
                run_lo = v[i];
            }
        } else {
            run_lo = std::min(run_lo, v[i]);
            if (v[i] > run_lo + thr) { // confirmed rise starts another mode
                direction = 1;
                run_hi = v[i];
            }
        }
    }
    if (direction >= 0) ++peaks; // flat or right-edge mode
    return peaks <= 1;
}

} // namespace

SharpeanResult sharpean_operation(const Distribution& cf, const MarketContext& ctx) {
    ctx.validate();
    if (!is_unimodal(cf))
        raise(ErrorCode::NotUnimodal, "Sharpean operation needs a unimodal cash flow");
    if (cf.degenerate())
        raise(ErrorCode::ZeroVariance, "near-delta cash flow has no spread to normalize by");
    SharpeanResult out;
    out.shift = cf.support_lo();
    out.sigma = stddev(cf);
    const double scale = std::max(1.0, std::fabs(out.shift) + std::fabs(cf.support_hi()));
    if (out.sigma < 1e-12 * scale)
        raise(ErrorCode::ZeroVariance, "cash flow has no spread to normalize by");
    out.score = (mean(cf) - out.shift) / out.sigma;
    return out;
}

ContinuityCheck continuity_bound_check(const ValuationInputs& a, const ValuationInputs& b) {
    a.validate();
    b.validate();
    const double va = value_closed_form(a).value;
    const double vb = value_closed_form(b).value;

    // C is the sup of the weight the valuation integral applies per unit of
    // comonotone cash-flow gap: (q/φ₂)∘F₂⁻¹ on the benchmark quantile scale.
    // For a uniform benchmark with unit density this is exactly sup q.
    double qsup = 0.0;
    for (int i = 0; i <= 2048; ++i) {
        const double u = (i + 0.5) / 2050.0;
        const double k = a.phi2.quantile(u);
        const double den = a.phi2.density(k);
        if (den <= 0.0) continue;
        const double w = a.spd.q(k) / den;
        if (!std::isfinite(w)) raise(ErrorCode::UnboundedQ, "valuation weight unbounded");
        qsup = std::max(qsup, w);
    }

    // E|CF_a − CF_b| under the comonotone coupling: ∫₀¹ |F_a⁻¹ − F_b⁻¹| du.
    const Distribution phi_a = a.phi1, phi_b = b.phi1;
    auto gap = [phi_a, phi_b](double u) {
        return std::fabs(phi_a.quantile(u) - phi_b.quantile(u));
    };
    math::QuadOptions opt;
    opt.abs_tol = 1e-10;
    const double l1 = math::integrate_adaptive(gap, 1e-12, 1.0 - 1e-12, opt).value;

    ContinuityCheck out;
    out.lhs = std::fabs(va - vb);
    out.rhs = qsup * l1;
    const double slack = default_tolerances().eps_quad *
                         std::max(1.0, std::fabs(va) + std::fabs(vb));
    out.holds = out.lhs <= out.rhs + slack;
    return out;
}

} // namespace spdval
