#pragma once

#include <span>
#include <string>
#include <vector>

#include "spdval/binding_map.hpp"
#include "spdval/distribution.hpp"
#include "spdval/signed_measure.hpp"
#include "spdval/state_price_density.hpp"

namespace spdval {

//! Everything a valuation needs: the cash-flow distribution φ₁, the benchmark
//! physical distribution φ₂, the state price density of the benchmark and the
//! shared market context.
struct ValuationInputs {
    Distribution phi1;
    Distribution phi2;
    StatePriceDensity spd;
    MarketContext ctx;

    void validate() const;
    double bm_range_hi() const; // upper end of K(supp φ₁)
};

struct ValuationDiagnostics {
    double tail_mass_phi1 = 0.0;
    double tail_mass_phi2 = 0.0;
    double quad_error = 0.0;
    double measure_preservation = 0.0;
};

struct ValuationReport {
    double value = 0.0;
    std::string method;          // "closed-form" | "finite-n"
    int n = 0;                   // partition count for the finite method
    SignedMeasure portfolio;     // replicating AD portfolio (or digital atoms)
    ValuationDiagnostics diagnostics;
};

//! V̂ = ∫ x · (φ₁(x)/φ₂(K(x))) · q(K(x)) dx with K'=φ₁/φ₂∘K substituted; the
//! integrand is evaluated in log space where the densities underflow.
ValuationReport value_closed_form(const ValuationInputs& in);

//! AD position weight per strike: w(y) = K⁻¹(y) on K(supp φ₁). Integrating q
//! against it reproduces the closed-form value.
SignedMeasure build_ad_portfolio(const ValuationInputs& in);

//! Midpoint-weighted digital portfolio over n equiprobable quantile intervals
//! (n+1 quantile points, full mass coverage).
ValuationReport finite_portfolio_value(const ValuationInputs& in, int n);

struct ConvergenceRow {
    int n = 0;
    double value = 0.0;
    double abs_error = 0.0; // |value_n − closed form|
};

struct ConvergenceStudy {
    double reference = 0.0; // closed-form value
    std::vector<ConvergenceRow> rows;
};

ConvergenceStudy convergence_study(const ValuationInputs& in, std::span<const int> ns);

//! Value of the cash flow shifted by a risk-free amount a; equals V + a·B_t.
double mm_separated_value(const ValuationInputs& in, double a);

//! Value of c·CF, c > 0; equals c·V. Throws NonPositiveScale.
double scaled_value(const ValuationInputs& in, double c);

struct SharpeanResult {
    double shift = 0.0; // inf supp
    double sigma = 0.0;
    double score = 0.0; // (mean − shift)/sigma, affine-invariant
};

//! Shift a unimodal cash flow so its support starts at 0, normalize by its
//! standard deviation, report the mean. Throws NotUnimodal / ZeroVariance.
SharpeanResult sharpean_operation(const Distribution& cf, const MarketContext& ctx);

struct ContinuityCheck {
    double lhs = 0.0; // |V_a − V_b|
    double rhs = 0.0; // C · E|CF_a − CF_b| under the comonotone coupling
    bool holds = false;
};

//! Continuity bound: C is the sup of the per-strike valuation weight q/φ₂ on
//! the benchmark quantile scale (sup q itself when the benchmark is uniform),
//! and E|ΔCF| is the quantile-coupling L¹ distance. Throws UnboundedQ.
ContinuityCheck continuity_bound_check(const ValuationInputs& a, const ValuationInputs& b);

} // namespace spdval
