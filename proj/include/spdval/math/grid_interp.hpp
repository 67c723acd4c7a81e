#pragma once

#include <vector>

namespace spdval::math {

enum class Interp { linear, monotone_cubic };

//! Piecewise interpolant through (nodes, values) with exact piecewise
//! antiderivative. monotone_cubic is Fritsch-Carlson PCHIP: no overshoot
//! between nodes, so nonnegative samples give a nonnegative interpolant.
class GridInterpolant {
public:
    GridInterpolant() = default;
    GridInterpolant(std::vector<double> nodes, std::vector<double> values,
                    Interp method = Interp::monotone_cubic);

    double lo() const noexcept { return x_.empty() ? 0.0 : x_.front(); }
    double hi() const noexcept { return x_.empty() ? 0.0 : x_.back(); }
    std::size_t size() const noexcept { return x_.size(); }
    const std::vector<double>& nodes() const noexcept { return x_; }
    const std::vector<double>& values() const noexcept { return y_; }

    double operator()(double x) const;       // 0 outside [lo, hi]
    double derivative(double x) const;       // one-sided at nodes
    double integral_from_lo(double x) const; // exact ∫_{lo}^{x}, clamped
    double total_integral() const noexcept { return cum_.empty() ? 0.0 : cum_.back(); }

    //! Multiply all values (and cached integrals) by s.
    void scale_values(double s);

private:
    std::size_t locate(double x) const;

    std::vector<double> x_, y_, m_;   // nodes, values, slopes (cubic only)
    std::vector<double> cum_;         // cumulative integral at nodes
    Interp method_ = Interp::monotone_cubic;
};

} // namespace spdval::math
