#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "spdval/market_context.hpp"
#include "spdval/tolerances.hpp"

namespace spdval {

struct Quote {
    double strike = 0.0;
    double price = 0.0;
};

struct FitOptions {
    double eps_fit = 1e-8;            // quote reproduction check
    double max_projection_rel = 0.05; // beyond this the quotes are rejected
    int knots_per_interval = 4;       // q knots per quote gap (>=1)
};

//! Arbitrage-consistent call price curve C(K) for one maturity: nonincreasing,
//! convex, slope in [-B_t, 0], C(K) -> 0. Fitted curves interpolate projected
//! quotes with a C² piecewise cubic whose second derivative is a nonnegative
//! piecewise-linear density; below the lowest quote the curve continues
//! linearly, above the highest it decays exponentially matched in value and
//! slope. Model curves evaluate closed forms.
class CallCurve {
public:
    struct Impl;

    CallCurve() = default;

    const MarketContext& context() const;

    double price(double strike) const;     // defined for all K >= 0
    double slope(double strike) const;     // C'
    double curvature(double strike) const; // C'' = q

    double lowest_knot() const;  // start of the interpolated region
    double highest_knot() const; // end of the interpolated region
    double left_slope() const;   // C'(0+)
    double kmax() const;         // effective upper bound: C, q negligible beyond

    const std::vector<Quote>& quotes() const;           // original input
    const std::vector<Quote>& projected_quotes() const; // after cone projection
    double max_projection_shift() const;                // max relative move

    //! Least-squares projection onto the convex-decreasing cone, then exact C²
    //! interpolation. Throws InsufficientQuotes / UnrepairableQuotes.
    static CallCurve fit(std::vector<Quote> quotes, const MarketContext& ctx,
                         const FitOptions& opt = {});

    //! Closed-form lognormal model curve (diffusion vol sigma).
    static CallCurve lognormal_model(const MarketContext& ctx, double sigma);

    //! Arbitrary analytic curve from price/slope/curvature closed forms.
    static CallCurve from_functions(const MarketContext& ctx,
                                    std::function<double(double)> price,
                                    std::function<double(double)> slope,
                                    std::function<double(double)> curvature,
                                    double k_lo, double k_hi, double kmax);

    //! Lossless fitted-curve parameters for the pipeline artifact. Throws
    //! InvalidInput when called on a model curve.
    struct FittedParams {
        std::vector<double> knots, q;      // piecewise-linear second derivative
        double c1 = 0, s1 = 0;             // value/slope at the first knot
        double tail_lambda = 0;            // exponential decay rate above knots
        std::vector<Quote> quotes, projected;
        double max_projection_shift = 0;
    };
    FittedParams fitted_params() const;
    static CallCurve from_fitted_params(const FittedParams& p, const MarketContext& ctx);

    bool valid() const { return impl_ != nullptr; }

private:
    explicit CallCurve(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

//! -C'(K): price of the cash-or-nothing call at strike K. Throws OutOfDomain
//! outside [0, kmax].
double digital_price(const CallCurve& curve, double strike);

//! r̂ = -ln(-C'(0+)) / (T - t). Throws SlopeOutOfRange when -C'(0+) ∉ (0, 1].
double implied_short_rate(const CallCurve& curve);

struct DefaultMass {
    double atom_value = 0.0;  // e^{-r_ext·τ} + C'(0+)
    double probability = 0.0; // atom_value / B_t
};

//! Gap between the externally known discount factor and the curve's slope at
//! zero strike. Throws NegativeMass when the gap is materially negative.
DefaultMass detect_default_mass(const CallCurve& curve, double r_ext);

//! Quote-level no-arbitrage report (butterfly convexity, slope bounds, static
//! bounds against spot/bond). Report-style: never throws on violations.
struct ArbitrageReport {
    struct Violation {
        std::string kind; // "butterfly", "slope", "bound"
        double strike = 0.0;
        double amount = 0.0;
    };
    std::vector<Violation> violations;
    bool clean() const { return violations.empty(); }
};

ArbitrageReport check_quote_arbitrage(std::vector<Quote> quotes, const MarketContext& ctx);

} // namespace spdval
