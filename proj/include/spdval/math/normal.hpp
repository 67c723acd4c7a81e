#pragma once

#include <cmath>

namespace spdval::math {

inline constexpr double inv_sqrt2   = 0.70710678118654752440;
inline constexpr double inv_sqrt2pi = 0.39894228040143267794;

inline double norm_pdf(double x) noexcept {
    return inv_sqrt2pi * std::exp(-0.5 * x * x);
}

// erfc-based for stability in both tails.
inline double norm_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x * inv_sqrt2);
}

namespace detail {

// Acklam's rational approximation to the inverse normal CDF (~1e-9 relative),
// used as the seed for one Halley step below.
inline double norm_quantile_seed(double p) noexcept {
    static const double a[] = {-3.969683028665376e+01,  2.209460984245205e+02,
                               -2.759285104469687e+02,  1.383577518672690e+02,
                               -3.066479806614716e+01,  2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01,  1.615858368580409e+02,
                               -1.556989798598866e+02,  6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = { 7.784695709041462e-03,  3.224671290700398e-01,
                                2.445134137142996e+00,  3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0]*q + c[1])*q + c[2])*q + c[3])*q + c[4])*q + c[5]) /
               ((((d[0]*q + d[1])*q + d[2])*q + d[3])*q + 1.0);
    }
    if (p > phigh) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0]*q + c[1])*q + c[2])*q + c[3])*q + c[4])*q + c[5]) /
                ((((d[0]*q + d[1])*q + d[2])*q + d[3])*q + 1.0);
    }
    double q = p - 0.5, r = q * q;
    return (((((a[0]*r + a[1])*r + a[2])*r + a[3])*r + a[4])*r + a[5]) * q /
           (((((b[0]*r + b[1])*r + b[2])*r + b[3])*r + b[4])*r + 1.0);
}

} // namespace detail

// Inverse of norm_cdf, accurate to ~2 ulp after Halley refinement.
inline double norm_quantile(double p) noexcept {
    if (p <= 0.0) return -HUGE_VAL;
    if (p >= 1.0) return HUGE_VAL;
    double x = detail::norm_quantile_seed(p);
    for (int i = 0; i < 2; ++i) {
        double e = norm_cdf(x) - p;
        double g = norm_pdf(x);
        if (g <= 0.0) break;
        double u = e / g;
        x -= u / (1.0 + 0.5 * x * u); // Halley
    }
    return x;
}

} // namespace spdval::math
