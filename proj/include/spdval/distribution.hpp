#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spdval/math/grid_interp.hpp"
#include "spdval/tolerances.hpp"

namespace spdval {

//! Raw sampled-density input: strictly increasing abscissae, nonnegative values.
struct GridSpec {
    std::vector<double> nodes;
    std::vector<double> values;
    math::Interp interpolation = math::Interp::monotone_cubic;
};

//! Immutable one-dimensional distribution: density φ, CDF F, quantile F⁻¹ on a
//! bounded support. Unbounded analytic families are truncated at the eps_tail
//! quantiles and renormalized; the clipped mass stays inspectable. An optional
//! boundary atom carries mass outside the absolutely continuous part (used by
//! the risk-neutral measure of a defaultable curve).
class Distribution {
public:
    enum class Kind { analytic, grid };

    struct Impl;

    Distribution() = default;

    double density(double x) const;
    double cdf(double x) const;
    //! Left-continuous generalized inverse inf{x : F(x) >= u}. Throws OutOfRange.
    double quantile(double u) const;

    double support_lo() const;
    double support_hi() const;
    Kind kind() const;

    //! Mass clipped away when an unbounded support was truncated.
    double truncated_tail_mass() const;

    //! Boundary atom (mass not in the density). Zero for ordinary distributions.
    double atom_mass() const;
    double atom_location() const;

    //! Set when a kernel estimate collapsed to a near-delta spike.
    bool degenerate() const;

    bool valid() const { return impl_ != nullptr; }

    // --- factories ---
    static Distribution uniform(double a, double b);
    static Distribution exponential(double rate);
    static Distribution normal(double mean, double stddev);
    static Distribution lognormal(double mu, double sigma); // log-space parameters
    static Distribution mixture(std::vector<std::pair<Distribution, double>> components);
    static Distribution from_grid(GridSpec spec, const Tolerances& tol = default_tolerances());
    //! Distribution of c·X + a for X ~ base. Throws NonPositiveScale if c <= 0.
    static Distribution affine(const Distribution& base, double scale, double shift);

    static Distribution from_impl(std::shared_ptr<const Impl> impl);
    const Impl& impl() const { return *impl_; }

private:
    explicit Distribution(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

//! Validates density invariants (nonnegativity, normalization) and returns the
//! distribution with its CDF usable. Throws NonNormalized / NegativeDensity.
Distribution cdf_from_density(const Distribution& d,
                              const Tolerances& tol = default_tolerances());

double quantile(const Distribution& d, double u);

//! Adaptive quadrature of payoff·φ over the support (+ atom term).
double expectation(const Distribution& d, const std::function<double(double)>& payoff,
                   double abs_tol = 0.0 /* 0 -> eps_quad × scale */);

double mean(const Distribution& d);
double stddev(const Distribution& d);

struct FsdResult {
    bool dominates = false;   // F_a >= F_b - eps everywhere on the grid
    double max_violation = 0; // max_t (F_b - F_a)+
};

//! First-order stochastic dominance of b over a: F_a(t) >= F_b(t) pointwise.
FsdResult check_fsd(const Distribution& a, const Distribution& b,
                    std::span<const double> grid,
                    const Tolerances& tol = default_tolerances());

//! Gaussian-kernel density estimate on a binned grid. Bandwidth 0 means the
//! Silverman rule 1.06·σ̂·n^(-1/5). Throws TooFewSamples below 30 samples.
Distribution estimate_density_from_samples(std::span<const double> samples,
                                           double bandwidth = 0.0,
                                           double* bandwidth_out = nullptr);

} // namespace spdval
