#include "spdval/state_price_density.hpp"

#include <algorithm>
#include <cmath>

#include "spdval/detail/distribution_impl.hpp"
#include "spdval/errors.hpp"
#include "spdval/math/grid_interp.hpp"
#include "spdval/math/quadrature.hpp"

namespace spdval {

struct StatePriceDensity::Impl {
    virtual ~Impl() = default;
    virtual double q(double k) const = 0;
    virtual double cumulative(double k) const = 0;
    virtual double first_moment(double k) const = 0;
    virtual double hi() const = 0;

    double atom = 0.0;
    MarketContext ctx;
};

namespace {

using SpdImpl = StatePriceDensity::Impl;

// Backed by a call curve: cumulative and first moment follow from the exact
// antiderivative identities ∫_0^K q = C'(K) - C'(0+) and
// ∫_0^K u q(u) du = K·C'(K) - C(K) + C(0).
class CurveImpl final : public SpdImpl {
public:
    explicit CurveImpl(CallCurve curve) : curve_(std::move(curve)) {}
    double q(double k) const override { return k < 0.0 ? 0.0 : curve_.curvature(k); }
    double cumulative(double k) const override {
        if (k <= 0.0) return 0.0;
        return curve_.slope(k) - curve_.left_slope();
    }
    double first_moment(double k) const override {
        if (k <= 0.0) return 0.0;
        return k * curve_.slope(k) - curve_.price(k) + curve_.price(0.0);
    }
    double hi() const override { return curve_.kmax(); }

private:
    CallCurve curve_;
};

class GridImpl final : public SpdImpl {
public:
    GridImpl(std::vector<double> nodes, std::vector<double> vals)
        : f_(std::move(nodes), std::move(vals), math::Interp::linear) {
        for (double v : f_.values())
            if (v < 0.0) raise(ErrorCode::NegativeDensity, "state price density value below zero");
    }
    double q(double k) const override { return f_(k); }
    double cumulative(double k) const override { return f_.integral_from_lo(std::max(k, f_.lo())); }
    double first_moment(double k) const override {
        if (k <= f_.lo()) return 0.0;
        auto g = [this](double u) { return u * f_(u); };
        math::QuadOptions opt;
        opt.abs_tol = 1e-10 * std::max(1.0, f_.hi() * cumulative(f_.hi()));
        return math::integrate_adaptive(g, f_.lo(), std::min(k, f_.hi()), opt).value;
    }
    double hi() const override { return f_.hi(); }

private:
    math::GridInterpolant f_;
};

// Distribution view of q/B_t with the default atom at K = 0.
class RiskNeutralImpl final : public Distribution::Impl {
public:
    RiskNeutralImpl(std::shared_ptr<const SpdImpl> spd)
        : spd_(std::move(spd)), b_(spd_->ctx.bond_price) {}
    double density(double x) const override {
        if (x < 0.0 || x > spd_->hi()) return 0.0;
        return spd_->q(x) / b_;
    }
    double cdf(double x) const override {
        if (x < 0.0) return 0.0;
        return std::min(1.0, (spd_->atom + spd_->cumulative(x)) / b_);
    }
    double lo() const override { return 0.0; }
    double hi() const override { return spd_->hi(); }
    Distribution::Kind kind() const override { return Distribution::Kind::analytic; }
    double atom_mass() const override { return spd_->atom / b_; }
    double atom_location() const override { return 0.0; }

private:
    std::shared_ptr<const SpdImpl> spd_;
    double b_;
};

} // namespace

double StatePriceDensity::q(double k) const { return impl_->q(k); }
double StatePriceDensity::cumulative(double k) const { return impl_->cumulative(k); }
double StatePriceDensity::first_moment(double k) const { return impl_->first_moment(k); }
double StatePriceDensity::zero_atom() const { return impl_->atom; }
double StatePriceDensity::domain_hi() const { return impl_->hi(); }
const MarketContext& StatePriceDensity::context() const { return impl_->ctx; }

StatePriceDensity StatePriceDensity::from_curve(const CallCurve& curve, const Tolerances& tol) {
    const double b = curve.context().bond_price;
    const double hi = curve.kmax();
    // Scale of q over the domain, for the negativity clip threshold.
    double qscale = 0.0;
    const int probes = 512;
    for (int i = 0; i <= probes; ++i) {
        const double k = hi * i / probes;
        qscale = std::max(qscale, std::fabs(curve.curvature(k)));
    }
    for (int i = 0; i <= probes; ++i) {
        const double k = hi * i / probes;
        if (curve.curvature(k) < -tol.eps_neg * std::max(1.0, qscale))
            raise(ErrorCode::NegativeDensity,
                  "curve has negative convexity at strike " + std::to_string(k));
    }
    auto impl = std::make_shared<CurveImpl>(curve);
    impl->ctx = curve.context();
    impl->atom = std::max(0.0, b + curve.left_slope());
    return StatePriceDensity(std::move(impl));
}

StatePriceDensity StatePriceDensity::from_grid(std::vector<double> nodes, std::vector<double> q,
                                               double zero_atom, const MarketContext& ctx) {
    ctx.validate();
    if (zero_atom < 0.0) raise(ErrorCode::NegativeMass, "zero atom must be nonnegative");
    auto impl = std::make_shared<GridImpl>(std::move(nodes), std::move(q));
    impl->ctx = ctx;
    impl->atom = zero_atom;
    return StatePriceDensity(std::move(impl));
}

double recover_bond(const StatePriceDensity& spd) {
    return spd.cumulative(spd.domain_hi()) + spd.zero_atom();
}

SpotRecovery recover_spot(const StatePriceDensity& spd, const CallCurve& curve) {
    SpotRecovery out;
    out.from_integral = spd.first_moment(spd.domain_hi());
    out.from_limit = curve.price(0.0);
    return out;
}

Distribution risk_neutral_measure(const StatePriceDensity& spd) {
    return Distribution::from_impl(std::make_shared<RiskNeutralImpl>(spd.impl_ptr()));
}

} // namespace spdval
