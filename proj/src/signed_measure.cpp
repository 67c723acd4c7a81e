#include "spdval/signed_measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spdval/errors.hpp"
#include "spdval/math/grid_interp.hpp"
#include "spdval/math/quadrature.hpp"

namespace spdval {

namespace {

std::vector<Atom> normalize_atoms(std::vector<Atom> atoms) {
    std::map<double, double> merged;
    for (const Atom& a : atoms) merged[a.location] += a.weight;
    std::vector<Atom> out;
    out.reserve(merged.size());
    for (auto& [loc, w] : merged)
        if (w != 0.0) out.push_back({loc, w});
    return out;
}

} // namespace

SignedMeasure SignedMeasure::from_function(std::function<double(double)> w, double lo, double hi) {
    if (!(lo < hi)) raise(ErrorCode::InvalidInput, "measure domain needs lo < hi");
    SignedMeasure m;
    m.w_ = std::move(w);
    m.lo_ = lo;
    m.hi_ = hi;
    m.breaks_ = {lo, hi};
    return m;
}

SignedMeasure SignedMeasure::from_grid(std::vector<double> nodes, std::vector<double> weights) {
    auto interp = std::make_shared<math::GridInterpolant>(std::move(nodes), std::move(weights),
                                                          math::Interp::linear);
    const double lo = interp->lo(), hi = interp->hi();
    SignedMeasure m;
    m.w_ = [interp](double k) { return (*interp)(k); };
    m.lo_ = lo;
    m.hi_ = hi;
    m.breaks_ = interp->nodes();
    return m;
}

SignedMeasure SignedMeasure::atoms_only(std::vector<Atom> atoms) {
    SignedMeasure m;
    m.atoms_ = normalize_atoms(std::move(atoms));
    return m;
}

SignedMeasure SignedMeasure::with_atoms(std::vector<Atom> atoms) const {
    SignedMeasure m = *this;
    std::vector<Atom> all = m.atoms_;
    all.insert(all.end(), atoms.begin(), atoms.end());
    m.atoms_ = normalize_atoms(std::move(all));
    return m;
}

double SignedMeasure::density(double k) const {
    if (!w_ || k < lo_ || k > hi_) return 0.0;
    return w_(k);
}

namespace {

double integrate_ac(const std::function<double(double)>& g, const SignedMeasure& rho,
                    double abs_tol) {
    if (!rho.has_ac_part()) return 0.0;
    math::QuadOptions opt;
    opt.abs_tol = abs_tol > 0.0 ? abs_tol : 1e-6;
    math::QuadResult r = math::integrate_adaptive_split(g, rho.breakpoints(), opt);
    if (abs_tol <= 0.0) {
        const double target = default_tolerances().eps_quad * std::max(1.0, std::fabs(r.value));
        if (r.error > target || target < opt.abs_tol) {
            opt.abs_tol = target;
            r = math::integrate_adaptive_split(g, rho.breakpoints(), opt);
        }
    }
    return r.value;
}

} // namespace

double integrate(const std::function<double(double)>& f, const SignedMeasure& rho,
                 double abs_tol) {
    double v = integrate_ac([&](double k) { return f(k) * rho.density(k); }, rho, abs_tol);
    for (const Atom& a : rho.atoms()) v += f(a.location) * a.weight;
    return v;
}

double total_variation(const SignedMeasure& rho) {
    double v = integrate_ac([&](double k) { return std::fabs(rho.density(k)); }, rho, 0.0);
    for (const Atom& a : rho.atoms()) v += std::fabs(a.weight);
    return v;
}

SignedMeasure combine(const SignedMeasure& r1, double c1, const SignedMeasure& r2, double c2) {
    SignedMeasure m;
    if (r1.has_ac_part() || r2.has_ac_part()) {
        // Capture copies; evaluation is pure and domain-guarded per part.
        SignedMeasure a = r1, b = r2;
        a.atoms_.clear();
        b.atoms_.clear();
        m.lo_ = r1.has_ac_part() ? (r2.has_ac_part() ? std::min(r1.lo_, r2.lo_) : r1.lo_) : r2.lo_;
        m.hi_ = r1.has_ac_part() ? (r2.has_ac_part() ? std::max(r1.hi_, r2.hi_) : r1.hi_) : r2.hi_;
        m.w_ = [a, b, c1, c2](double k) { return c1 * a.density(k) + c2 * b.density(k); };
        m.breaks_ = r1.breaks_;
        m.breaks_.insert(m.breaks_.end(), r2.breaks_.begin(), r2.breaks_.end());
        std::sort(m.breaks_.begin(), m.breaks_.end());
        m.breaks_.erase(std::unique(m.breaks_.begin(), m.breaks_.end()), m.breaks_.end());
    }
    std::vector<Atom> atoms;
    for (const Atom& a : r1.atoms()) atoms.push_back({a.location, c1 * a.weight});
    for (const Atom& a : r2.atoms()) atoms.push_back({a.location, c2 * a.weight});
    m.atoms_ = normalize_atoms(std::move(atoms));
    return m;
}

} // namespace spdval
