#pragma once

#include <cmath>
#include <optional>

#include "spdval/errors.hpp"

namespace spdval {

//! Valuation-date market data shared by the curve, the SPD and the valuation:
//! times t < T, bond price B_t, spot S(t), optionally the short rate.
struct MarketContext {
    double t = 0.0;
    double T = 1.0;
    double bond_price = 1.0;
    double spot = 1.0;
    std::optional<double> short_rate;

    double tau() const { return T - t; }

    void validate() const {
        if (!(T > t)) raise(ErrorCode::InvalidInput, "context needs T > t");
        if (!(bond_price > 0.0 && bond_price <= 1.0))
            raise(ErrorCode::InvalidInput, "bond price must lie in (0, 1]");
        if (!(spot > 0.0)) raise(ErrorCode::InvalidInput, "spot must be positive");
        if (short_rate) {
            const double implied = std::exp(-*short_rate * tau());
            if (std::fabs(bond_price - implied) > 1e-10)
                raise(ErrorCode::InvalidInput,
                      "bond price inconsistent with exp(-r(T-t)) beyond 1e-10");
        }
    }

    static MarketContext from_rate(double t, double T, double r, double spot) {
        MarketContext c;
        c.t = t;
        c.T = T;
        c.bond_price = std::exp(-r * (T - t));
        c.spot = spot;
        c.short_rate = r;
        c.validate();
        return c;
    }
};

} // namespace spdval
