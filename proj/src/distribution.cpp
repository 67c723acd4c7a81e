#include "spdval/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spdval/detail/distribution_impl.hpp"
#include "spdval/errors.hpp"
#include "spdval/log.hpp"
#include "spdval/math/normal.hpp"
#include "spdval/math/quadrature.hpp"

namespace spdval {

namespace {

using Impl = Distribution::Impl;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// Analytic family truncated to its eps_tail quantile window and renormalized.
class TruncatedAnalytic : public Impl {
public:
    // Derived constructors must call init_norm() once their closed forms exist.
    TruncatedAnalytic(double a, double b, double clipped) : a_(a), b_(b), clipped_(clipped) {}
    double density(double x) const final {
        if (x < a_ || x > b_) return 0.0;
        return base_pdf(x) / norm_;
    }
    double cdf(double x) const final {
        if (x < a_) return 0.0;
        if (x >= b_) return 1.0;
        return clamp01((base_cdf_raw(x) - plo_) / norm_);
    }
    double quantile(double u) const final {
        const double x = base_quantile_raw(plo_ + u * norm_);
        return std::min(b_, std::max(a_, x));
    }
    double lo() const final { return a_; }
    double hi() const final { return b_; }
    Distribution::Kind kind() const final { return Distribution::Kind::analytic; }
    double tail_mass() const final { return clipped_; }

protected:
    virtual double base_pdf(double x) const = 0;
    virtual double base_cdf_raw(double x) const = 0;
    virtual double base_quantile_raw(double p) const = 0;

    void init_norm() {
        plo_ = base_cdf_raw(a_);
        norm_ = base_cdf_raw(b_) - plo_;
    }

    double a_, b_, clipped_;
    double plo_ = 0.0, norm_ = 1.0;
};

class UniformImpl final : public TruncatedAnalytic {
public:
    UniformImpl(double a, double b) : TruncatedAnalytic(a, b, 0.0), ua_(a), ub_(b) { init_norm(); }

private:
    double base_pdf(double) const override { return 1.0 / (ub_ - ua_); }
    double base_cdf_raw(double x) const override { return (x - ua_) / (ub_ - ua_); }
    double base_quantile_raw(double p) const override { return ua_ + p * (ub_ - ua_); }
    double ua_, ub_;
};

class ExponentialImpl final : public TruncatedAnalytic {
public:
    ExponentialImpl(double rate, double eps_tail)
        : TruncatedAnalytic(0.0, -std::log(eps_tail) / rate, eps_tail), rate_(rate) {
        init_norm();
    }

private:
    double base_pdf(double x) const override { return rate_ * std::exp(-rate_ * x); }
    double base_cdf_raw(double x) const override { return 1.0 - std::exp(-rate_ * x); }
    double base_quantile_raw(double p) const override { return -std::log1p(-p) / rate_; }
    double rate_;
};

class NormalImpl final : public TruncatedAnalytic {
public:
    NormalImpl(double m, double s, double eps_tail)
        : TruncatedAnalytic(m + s * math::norm_quantile(eps_tail),
                            m + s * math::norm_quantile(1.0 - eps_tail), 2.0 * eps_tail),
          m_(m), s_(s) {
        init_norm();
    }

private:
    double base_pdf(double x) const override { return math::norm_pdf((x - m_) / s_) / s_; }
    double base_cdf_raw(double x) const override { return math::norm_cdf((x - m_) / s_); }
    double base_quantile_raw(double p) const override { return m_ + s_ * math::norm_quantile(p); }
    double m_, s_;
};

class LognormalImpl final : public TruncatedAnalytic {
public:
    LognormalImpl(double mu, double sigma, double eps_tail)
        : TruncatedAnalytic(std::exp(mu + sigma * math::norm_quantile(eps_tail)),
                            std::exp(mu + sigma * math::norm_quantile(1.0 - eps_tail)),
                            2.0 * eps_tail),
          mu_(mu), sig_(sigma) {
        init_norm();
    }

private:
    double base_pdf(double x) const override {
        if (x <= 0.0) return 0.0;
        const double z = (std::log(x) - mu_) / sig_;
        return math::norm_pdf(z) / (x * sig_);
    }
    double base_cdf_raw(double x) const override {
        if (x <= 0.0) return 0.0;
        return math::norm_cdf((std::log(x) - mu_) / sig_);
    }
    double base_quantile_raw(double p) const override {
        return std::exp(mu_ + sig_ * math::norm_quantile(p));
    }
    double mu_, sig_;
};

class MixtureImpl final : public Impl {
public:
    explicit MixtureImpl(std::vector<std::pair<Distribution, double>> comps)
        : comps_(std::move(comps)) {
        double wsum = 0.0;
        for (auto& [d, w] : comps_) {
            if (!d.valid() || w <= 0.0)
                raise(ErrorCode::InvalidInput, "mixture needs valid components with positive weights");
            wsum += w;
        }
        for (auto& [d, w] : comps_) w /= wsum;
        lo_ = comps_.front().first.support_lo();
        hi_ = comps_.front().first.support_hi();
        analytic_ = true;
        for (auto& [d, w] : comps_) {
            lo_ = std::min(lo_, d.support_lo());
            hi_ = std::max(hi_, d.support_hi());
            tail_ += w * d.truncated_tail_mass();
            analytic_ = analytic_ && d.kind() == Distribution::Kind::analytic;
        }
    }
    double density(double x) const override {
        double v = 0.0;
        for (auto& [d, w] : comps_) v += w * d.density(x);
        return v;
    }
    double cdf(double x) const override {
        double v = 0.0;
        for (auto& [d, w] : comps_) v += w * d.cdf(x);
        return clamp01(v);
    }
    double lo() const override { return lo_; }
    double hi() const override { return hi_; }
    Distribution::Kind kind() const override {
        return analytic_ ? Distribution::Kind::analytic : Distribution::Kind::grid;
    }
    double tail_mass() const override { return tail_; }

private:
    std::vector<std::pair<Distribution, double>> comps_;
    double lo_ = 0.0, hi_ = 0.0, tail_ = 0.0;
    bool analytic_ = true;
};

class GridImpl final : public Impl {
public:
    GridImpl(math::GridInterpolant interp, double clipped, bool degenerate)
        : f_(std::move(interp)), clipped_(clipped), degenerate_(degenerate) {
        // Exact renormalization so F(hi) == 1 to machine precision.
        const double total = f_.total_integral();
        if (total <= 0.0)
            raise(ErrorCode::NonNormalized, "grid density integrates to zero");
        f_.scale_values(1.0 / total);
    }
    double density(double x) const override { return std::max(0.0, f_(x)); }
    double cdf(double x) const override { return clamp01(f_.integral_from_lo(x)); }
    double lo() const override { return f_.lo(); }
    double hi() const override { return f_.hi(); }
    Distribution::Kind kind() const override { return Distribution::Kind::grid; }
    double tail_mass() const override { return clipped_; }
    bool degenerate() const override { return degenerate_; }

private:
    math::GridInterpolant f_;
    double clipped_;
    bool degenerate_;
};

// c·X + a with c > 0.
class AffineImpl final : public Impl {
public:
    AffineImpl(std::shared_ptr<const Impl> base, double c, double a)
        : base_(std::move(base)), c_(c), a_(a) {}
    double density(double x) const override { return base_->density((x - a_) / c_) / c_; }
    double cdf(double x) const override { return base_->cdf((x - a_) / c_); }
    double quantile(double u) const override { return c_ * base_->quantile(u) + a_; }
    double lo() const override { return c_ * base_->lo() + a_; }
    double hi() const override { return c_ * base_->hi() + a_; }
    Distribution::Kind kind() const override { return base_->kind(); }
    double tail_mass() const override { return base_->tail_mass(); }
    double atom_mass() const override { return base_->atom_mass(); }
    double atom_location() const override { return c_ * base_->atom_location() + a_; }
    bool degenerate() const override { return base_->degenerate(); }

private:
    std::shared_ptr<const Impl> base_;
    double c_, a_;
};

} // namespace

// --- Distribution surface ---

double Distribution::density(double x) const { return impl_->density(x); }
double Distribution::cdf(double x) const { return impl_->cdf(x); }

double Distribution::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0))
        raise(ErrorCode::OutOfRange, "quantile level must lie in [0, 1]");
    return impl_->quantile(u);
}

double Distribution::support_lo() const { return impl_->lo(); }
double Distribution::support_hi() const { return impl_->hi(); }
Distribution::Kind Distribution::kind() const { return impl_->kind(); }
double Distribution::truncated_tail_mass() const { return impl_->tail_mass(); }
double Distribution::atom_mass() const { return impl_->atom_mass(); }
double Distribution::atom_location() const { return impl_->atom_location(); }
bool Distribution::degenerate() const { return impl_->degenerate(); }

Distribution Distribution::uniform(double a, double b) {
    if (!(a < b)) raise(ErrorCode::InvalidInput, "uniform needs a < b");
    return Distribution(std::make_shared<UniformImpl>(a, b));
}

Distribution Distribution::exponential(double rate) {
    if (!(rate > 0.0)) raise(ErrorCode::InvalidInput, "exponential needs rate > 0");
    return Distribution(std::make_shared<ExponentialImpl>(rate, default_tolerances().eps_tail));
}

Distribution Distribution::normal(double mean, double stddev) {
    if (!(stddev > 0.0)) raise(ErrorCode::InvalidInput, "normal needs stddev > 0");
    return Distribution(std::make_shared<NormalImpl>(mean, stddev, default_tolerances().eps_tail));
}

Distribution Distribution::lognormal(double mu, double sigma) {
    if (!(sigma > 0.0)) raise(ErrorCode::InvalidInput, "lognormal needs sigma > 0");
    return Distribution(std::make_shared<LognormalImpl>(mu, sigma, default_tolerances().eps_tail));
}

Distribution Distribution::mixture(std::vector<std::pair<Distribution, double>> components) {
    if (components.empty()) raise(ErrorCode::InvalidInput, "mixture needs components");
    return Distribution(std::make_shared<MixtureImpl>(std::move(components)));
}

Distribution Distribution::from_grid(GridSpec spec, const Tolerances& tol) {
    if (spec.nodes.size() < 2) raise(ErrorCode::InvalidInput, "grid needs >= 2 nodes");
    double vmax = 0.0;
    for (double v : spec.values) vmax = std::max(vmax, std::fabs(v));
    for (double& v : spec.values) {
        if (v < -tol.eps_den * std::max(1.0, vmax))
            raise(ErrorCode::NegativeDensity, "grid density value below zero");
        v = std::max(0.0, v);
    }
    // Normalization of the raw samples is judged on the trapezoid sum; the
    // interpolant is then rescaled to integrate to 1 exactly.
    double trapezoid = 0.0;
    for (std::size_t i = 0; i + 1 < spec.nodes.size(); ++i)
        trapezoid += 0.5 * (spec.nodes[i + 1] - spec.nodes[i]) *
                     (spec.values[i] + spec.values[i + 1]);
    if (std::fabs(trapezoid - 1.0) > tol.eps_norm_grid)
        raise(ErrorCode::NonNormalized, "grid density integral deviates from 1 beyond tolerance");
    math::GridInterpolant f(std::move(spec.nodes), std::move(spec.values), spec.interpolation);
    return Distribution(std::make_shared<GridImpl>(std::move(f), 0.0, false));
}

Distribution Distribution::affine(const Distribution& base, double scale, double shift) {
    if (!(scale > 0.0)) raise(ErrorCode::NonPositiveScale, "affine scale must be positive");
    return Distribution(std::make_shared<AffineImpl>(base.impl_, scale, shift));
}

Distribution Distribution::from_impl(std::shared_ptr<const Impl> impl) {
    return Distribution(std::move(impl));
}

// --- free operations ---

Distribution cdf_from_density(const Distribution& d, const Tolerances& tol) {
    const double lo = d.support_lo(), hi = d.support_hi();
    const int probes = 257;
    double vmax = 0.0;
    for (int i = 0; i < probes; ++i) {
        const double x = lo + (hi - lo) * i / (probes - 1);
        const double v = d.density(x);
        vmax = std::max(vmax, std::fabs(v));
        if (v < -tol.eps_den * std::max(1.0, vmax))
            raise(ErrorCode::NegativeDensity, "density negative inside support");
    }
    const double mass = expectation(d, [](double) { return 1.0; }) - d.atom_mass();
    const double eps = d.kind() == Distribution::Kind::analytic ? tol.eps_norm_analytic
                                                                : tol.eps_norm_grid;
    if (std::fabs(mass + d.atom_mass() - 1.0) > eps)
        raise(ErrorCode::NonNormalized, "density does not integrate to 1 within tolerance");
    return d;
}

double quantile(const Distribution& d, double u) { return d.quantile(u); }

double expectation(const Distribution& d, const std::function<double(double)>& payoff,
                   double abs_tol) {
    const double lo = d.support_lo(), hi = d.support_hi();
    auto f = [&](double x) { return payoff(x) * d.density(x); };

    // Quantile-seeded panels keep narrow modes from slipping between nodes.
    static const double levels[] = {1e-6, 1e-3, 0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5,
                                    0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 0.999, 1.0 - 1e-6};
    std::vector<double> bp;
    bp.push_back(lo);
    for (double u : levels) {
        const double x = d.quantile(u);
        if (x > bp.back() + 1e-14 * (hi - lo) && x < hi) bp.push_back(x);
    }
    bp.push_back(hi);

    const Tolerances& tol = default_tolerances();
    math::QuadOptions opt;
    opt.abs_tol = (abs_tol > 0.0) ? abs_tol : 1e-6;
    math::QuadResult r = math::integrate_adaptive_split(f, bp, opt);
    if (abs_tol <= 0.0) {
        const double target = tol.eps_quad * std::max(1.0, std::fabs(r.value));
        if (r.error > target || target < opt.abs_tol) {
            opt.abs_tol = target;
            r = math::integrate_adaptive_split(f, bp, opt);
        }
    }
    double v = r.value;
    if (d.atom_mass() > 0.0) v += d.atom_mass() * payoff(d.atom_location());
    return v;
}

double mean(const Distribution& d) {
    return expectation(d, [](double x) { return x; });
}

double stddev(const Distribution& d) {
    const double m = mean(d);
    const double var = expectation(d, [m](double x) { return (x - m) * (x - m); });
    return std::sqrt(std::max(0.0, var));
}

FsdResult check_fsd(const Distribution& a, const Distribution& b,
                    std::span<const double> grid, const Tolerances& tol) {
    FsdResult out;
    out.dominates = true;
    for (double t : grid) {
        const double gap = b.cdf(t) - a.cdf(t); // positive gap breaks F_a >= F_b
        if (gap > out.max_violation) out.max_violation = gap;
        if (gap > tol.eps_fsd) out.dominates = false;
    }
    return out;
}

Distribution estimate_density_from_samples(std::span<const double> samples, double bandwidth,
                                           double* bandwidth_out) {
    const std::size_t n = samples.size();
    if (n < 30)
        raise(ErrorCode::TooFewSamples, "kernel density estimation needs >= 30 samples");
    if (bandwidth < 0.0)
        raise(ErrorCode::InvalidInput, "bandwidth must be positive (or 0 for automatic)");

    double m = 0.0;
    for (double s : samples) m += s;
    m /= static_cast<double>(n);
    double ss = 0.0;
    double xmin = samples[0], xmax = samples[0];
    for (double s : samples) {
        ss += (s - m) * (s - m);
        xmin = std::min(xmin, s);
        xmax = std::max(xmax, s);
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const double scale = std::max(1.0, std::fabs(m));

    bool degenerate = sd < 1e-12 * scale;
    double h = bandwidth;
    if (h == 0.0) {
        h = degenerate ? 1e-8 * scale
                       : 1.06 * sd * std::pow(static_cast<double>(n), -0.2); // Silverman
    }
    if (degenerate)
        log::warn("sample spread is ~0; kernel estimate collapses to a near-delta spike");

    const double lo = xmin - 3.0 * h, hi = xmax + 3.0 * h;
    const int grid_n = 1025;
    const double dx = (hi - lo) / (grid_n - 1);

    // Linear binning, then windowed Gaussian smoothing over bins.
    std::vector<double> bins(grid_n, 0.0);
    for (double s : samples) {
        const double pos = (s - lo) / dx;
        const int j = std::min(grid_n - 2, std::max(0, static_cast<int>(pos)));
        const double w = pos - j;
        bins[j] += 1.0 - w;
        bins[j + 1] += w;
    }
    const int window = std::min(grid_n, static_cast<int>(8.0 * h / dx) + 1);
    std::vector<double> vals(grid_n, 0.0);
    for (int j = 0; j < grid_n; ++j) {
        const int b0 = std::max(0, j - window), b1 = std::min(grid_n - 1, j + window);
        double acc = 0.0;
        for (int b = b0; b <= b1; ++b) {
            if (bins[b] == 0.0) continue;
            acc += bins[b] * math::norm_pdf((j - b) * dx / h);
        }
        vals[j] = acc / (static_cast<double>(n) * h);
    }

    std::vector<double> nodes(grid_n);
    for (int j = 0; j < grid_n; ++j) nodes[j] = lo + j * dx;
    math::GridInterpolant f(std::move(nodes), std::move(vals), math::Interp::monotone_cubic);
    const double clipped = std::max(0.0, 1.0 - f.total_integral());
    if (bandwidth_out) *bandwidth_out = h;
    return Distribution::from_impl(std::make_shared<GridImpl>(std::move(f), clipped, degenerate));
}

} // namespace spdval
