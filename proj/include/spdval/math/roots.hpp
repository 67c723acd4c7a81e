#pragma once

#include <cmath>
#include <functional>

#include "spdval/errors.hpp"

namespace spdval::math {

//! Brent's method on a bracketing interval [lo, hi] with f(lo), f(hi) of
//! opposite (or zero) sign. Returns x with |interval| <= xtol or f(x) == 0.
template <class F>
double find_root_bracketed(const F& f, double lo, double hi, double xtol) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        raise(ErrorCode::InvalidInput, "root find: interval does not bracket a sign change");
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * 1e-16 * std::fabs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol || fb == 0.0) return b;
        if (std::fabs(e) < tol || std::fabs(fa) <= std::fabs(fb)) {
            d = m; e = m; // bisection
        } else {
            double p, q_;
            const double s = fb / fa;
            if (a == c) { // secant
                p = 2.0 * m * s;
                q_ = 1.0 - s;
            } else {      // inverse quadratic
                const double qq = fa / fc, rr = fb / fc;
                p = s * (2.0 * m * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q_ = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q_ = -q_; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q_ - std::fabs(tol * q_), std::fabs(e * q_))) {
                e = d; d = p / q_;
            } else {
                d = m; e = m;
            }
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; d = b - a; e = d; }
    }
    return b;
}

} // namespace spdval::math
