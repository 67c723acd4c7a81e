#pragma once

#include <span>

#include "spdval/distribution.hpp"

namespace spdval {

//! Increasing quantile coupling K = F₂⁻¹∘F₁ carrying the cash-flow
//! distribution onto the benchmark distribution, with the derivative field
//! K'(x) = φ₁(x)/φ₂(K(x)) and the boundary condition K(min supp φ₁) =
//! min supp φ₂. Interval probabilities are preserved: ℚ(K(M)) = ℙ(M).
class BindingMap {
public:
    BindingMap() = default;
    BindingMap(Distribution source, Distribution target, double eps_den);

    double map(double x) const;
    //! φ₁/φ₂∘K. Throws TargetDensityVanishes when the target density vanishes
    //! under live cash-flow mass; 0/0 at support edges resolves to 0.
    double derivative(double x) const;

    const Distribution& source() const { return phi1_; }
    const Distribution& target() const { return phi2_; }

    bool valid() const { return phi1_.valid(); }

private:
    Distribution phi1_, phi2_;
    double eps_den_ = 1e-12;
};

BindingMap build_binding_map(const Distribution& phi1, const Distribution& phi2,
                             const Tolerances& tol = default_tolerances());

//! Max |ℚ([K(x_k), K(x_{k+1})]) − ℙ([x_k, x_{k+1}])| over n equiprobable
//! source intervals.
double verify_measure_preserving(const BindingMap& bm, int n_intervals);

//! Max relative gap between the analytic derivative field and central finite
//! differences of the map, over interior grid points.
double derivative_consistency(const BindingMap& bm, std::span<const double> grid);

} // namespace spdval
