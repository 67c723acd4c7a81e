#pragma once

#include <memory>
#include <vector>

#include "spdval/call_curve.hpp"
#include "spdval/distribution.hpp"
#include "spdval/market_context.hpp"

namespace spdval {

//! State price density q(K) = C''(K) on [0, kmax], plus the mass q concentrates
//! at K = 0 (default states). ∫q dK + zero_atom recovers the bond price.
class StatePriceDensity {
public:
    struct Impl;

    StatePriceDensity() = default;

    double q(double k) const;            // 0 for k < 0; decays beyond kmax
    double cumulative(double k) const;   // ∫_0^k q
    double first_moment(double k) const; // ∫_0^k u·q(u) du
    double zero_atom() const;
    double domain_hi() const;
    const MarketContext& context() const;

    //! Differentiates the curve; the zero atom absorbs the gap between B_t and
    //! -C'(0+). Throws NegativeDensity if C'' dips below -eps_neg anywhere.
    static StatePriceDensity from_curve(const CallCurve& curve,
                                        const Tolerances& tol = default_tolerances());

    //! Piecewise-linear density on sampled knots (CSV ingestion).
    static StatePriceDensity from_grid(std::vector<double> nodes, std::vector<double> q,
                                       double zero_atom, const MarketContext& ctx);

    bool valid() const { return impl_ != nullptr; }
    std::shared_ptr<const Impl> impl_ptr() const { return impl_; }

private:
    explicit StatePriceDensity(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

//! ∫q dK + zero_atom; should equal B_t within eps_spd.
double recover_bond(const StatePriceDensity& spd);

struct SpotRecovery {
    double from_integral = 0.0; // ∫ K q dK
    double from_limit = 0.0;    // C(K) extrapolated to K = 0
};

SpotRecovery recover_spot(const StatePriceDensity& spd, const CallCurve& curve);

//! ℚ(A) = (1/B_t) ∫_A q dK, the zero atom becomes a boundary atom at K = 0.
Distribution risk_neutral_measure(const StatePriceDensity& spd);

} // namespace spdval
