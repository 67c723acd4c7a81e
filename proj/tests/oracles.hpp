#pragma once

// Test-side oracles, deliberately independent of the library's numerics:
// Simpson quadrature instead of Gauss-Kronrod, plain bisection instead of
// Brent, a separate Black-Scholes implementation, and a fully deterministic
// RNG (raw mt19937_64 bits, no std::*_distribution).

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

// Adaptive Simpson.
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (depth <= 0 || std::fabs(err) <= 15.0 * tol) return left + right + err / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-11) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Fixed-node Riemann midpoint sum (second, cruder oracle for dual checks).
inline double riemann(const std::function<double(double)>& f, double a, double b, int n) {
    double s = 0.0;
    const double h = (b - a) / n;
    for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
    return s * h;
}

// Plain bisection on an increasing function.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double target, int iters = 200) {
    for (int i = 0; i < iters; ++i) {
        const double m = 0.5 * (lo + hi);
        if (f(m) < target) lo = m; else hi = m;
    }
    return 0.5 * (lo + hi);
}

// --- Black-Scholes closed forms ---

inline double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }
inline double Phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

struct BsModel {
    double s0, r, sigma, T;

    double df() const { return std::exp(-r * T); }
    double d1(double k) const {
        return (std::log(s0 / k) + (r + 0.5 * sigma * sigma) * T) / (sigma * std::sqrt(T));
    }
    double d2(double k) const { return d1(k) - sigma * std::sqrt(T); }
    double call(double k) const {
        if (k <= 0.0) return s0;
        return s0 * Phi(d1(k)) - k * df() * Phi(d2(k));
    }
    double digital(double k) const { return df() * Phi(d2(k)); } // -dC/dK
    double rn_pdf(double k) const { // risk-neutral terminal density
        if (k <= 0.0) return 0.0;
        const double srt = sigma * std::sqrt(T);
        const double mu = std::log(s0) + (r - 0.5 * sigma * sigma) * T;
        const double z = (std::log(k) - mu) / srt;
        return phi(z) / (k * srt);
    }
    double rn_cdf(double k) const {
        if (k <= 0.0) return 0.0;
        const double srt = sigma * std::sqrt(T);
        const double mu = std::log(s0) + (r - 0.5 * sigma * sigma) * T;
        return Phi((std::log(k) - mu) / srt);
    }
    double spd(double k) const { return df() * rn_pdf(k); } // q = C''
};

// --- deterministic RNG (identical draws on every platform) ---

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { // in (0, 1)
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal() { // Box-Muller, fresh pair each call
        const double u1 = uniform(), u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::mt19937_64 eng_;
};

} // namespace oracle
