#include "spdval/math/grid_interp.hpp"

#include <algorithm>
#include <cmath>

#include "spdval/errors.hpp"

namespace spdval::math {

namespace {

// Fritsch-Carlson slopes: harmonic-mean weighting interior, clamped
// three-point formula at the ends.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> m(n, 0.0);
    if (n == 2) {
        const double d = (y[1] - y[0]) / (x[1] - x[0]);
        m[0] = m[1] = d;
        return m;
    }
    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        d[i] = (y[i + 1] - y[i]) / h[i];
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::fabs(s) > 3.0 * std::fabs(d0)) return 3.0 * d0;
        return s;
    };
    m[0] = end_slope(h[0], h[1], d[0], d[1]);
    m[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    return m;
}

} // namespace

GridInterpolant::GridInterpolant(std::vector<double> nodes, std::vector<double> values,
                                 Interp method)
    : x_(std::move(nodes)), y_(std::move(values)), method_(method) {
    if (x_.size() < 2 || x_.size() != y_.size())
        raise(ErrorCode::InvalidInput, "grid interpolant needs >= 2 matching nodes/values");
    for (std::size_t i = 0; i + 1 < x_.size(); ++i)
        if (!(x_[i] < x_[i + 1]))
            raise(ErrorCode::InvalidInput, "grid nodes must be strictly increasing");
    if (method_ == Interp::monotone_cubic)
        m_ = pchip_slopes(x_, y_);

    cum_.assign(x_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
        const double h = x_[i + 1] - x_[i];
        double seg = 0.5 * h * (y_[i] + y_[i + 1]);
        if (method_ == Interp::monotone_cubic)
            seg += h * h * (m_[i] - m_[i + 1]) / 12.0;
        cum_[i + 1] = cum_[i] + seg;
    }
}

std::size_t GridInterpolant::locate(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i == 0) return 0;
    if (i >= x_.size()) return x_.size() - 2;
    return i - 1;
}

double GridInterpolant::operator()(double x) const {
    if (x < x_.front() || x > x_.back()) return 0.0;
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = x - x_[i];
    if (method_ == Interp::linear)
        return y_[i] + (y_[i + 1] - y_[i]) * (t / h);
    const double dd = (y_[i + 1] - y_[i]) / h;
    const double c2 = (3.0 * dd - 2.0 * m_[i] - m_[i + 1]) / h;
    const double c3 = (m_[i] + m_[i + 1] - 2.0 * dd) / (h * h);
    return y_[i] + t * (m_[i] + t * (c2 + t * c3));
}

double GridInterpolant::derivative(double x) const {
    if (x < x_.front() || x > x_.back()) return 0.0;
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = x - x_[i];
    if (method_ == Interp::linear)
        return (y_[i + 1] - y_[i]) / h;
    const double dd = (y_[i + 1] - y_[i]) / h;
    const double c2 = (3.0 * dd - 2.0 * m_[i] - m_[i + 1]) / h;
    const double c3 = (m_[i] + m_[i + 1] - 2.0 * dd) / (h * h);
    return m_[i] + t * (2.0 * c2 + 3.0 * t * c3);
}

double GridInterpolant::integral_from_lo(double x) const {
    if (x <= x_.front()) return 0.0;
    if (x >= x_.back()) return cum_.back();
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = x - x_[i];
    if (method_ == Interp::linear) {
        const double slope = (y_[i + 1] - y_[i]) / h;
        return cum_[i] + t * (y_[i] + 0.5 * slope * t);
    }
    const double dd = (y_[i + 1] - y_[i]) / h;
    const double c2 = (3.0 * dd - 2.0 * m_[i] - m_[i + 1]) / h;
    const double c3 = (m_[i] + m_[i + 1] - 2.0 * dd) / (h * h);
    return cum_[i] + t * (y_[i] + t * (0.5 * m_[i] + t * (c2 / 3.0 + 0.25 * c3 * t)));
}

void GridInterpolant::scale_values(double s) {
    for (double& v : y_) v *= s;
    for (double& v : m_) v *= s;
    for (double& v : cum_) v *= s;
}

} // namespace spdval::math
