#pragma once

#include <cmath>

#include "spdval/distribution.hpp"

namespace spdval {

//! Backend interface for Distribution. New backends implement density/cdf and
//! the support; quantile defaults to left-continuous monotone bisection.
struct Distribution::Impl {
    virtual ~Impl() = default;
    virtual double density(double x) const = 0;
    virtual double cdf(double x) const = 0;
    virtual double lo() const = 0;
    virtual double hi() const = 0;
    virtual Kind kind() const = 0;
    virtual double tail_mass() const { return 0.0; }
    virtual double atom_mass() const { return 0.0; }
    virtual double atom_location() const { return lo(); }
    virtual bool degenerate() const { return false; }

    virtual double quantile(double u) const {
        double a = lo(), b = hi();
        if (cdf(a) >= u) return a;
        for (int i = 0; i < 200 && (b - a) > 1e-15 * (std::fabs(b) + std::fabs(a) + 1.0); ++i) {
            const double m = 0.5 * (a + b);
            if (cdf(m) >= u) b = m; else a = m;
        }
        return b;
    }
};

} // namespace spdval
