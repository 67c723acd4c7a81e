#include "spdval/call_curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lsi.hpp"
#include "spdval/log.hpp"
#include "spdval/math/normal.hpp"

namespace spdval {

struct CallCurve::Impl {
    virtual ~Impl() = default;
    virtual double price(double k) const = 0;
    virtual double slope(double k) const = 0;
    virtual double curvature(double k) const = 0;
    virtual double k_lo() const = 0;
    virtual double k_hi() const = 0;
    virtual double kmax() const = 0;
    virtual double left_slope() const { return slope(0.0); }
    virtual const std::vector<Quote>& quotes() const { return empty_; }
    virtual const std::vector<Quote>& projected() const { return empty_; }
    virtual double max_shift() const { return 0.0; }
    virtual bool fitted() const { return false; }

    MarketContext ctx;

private:
    std::vector<Quote> empty_;
};

namespace {

// ---------------------------------------------------------------------------
// Fitted curve: C'' is piecewise linear (>= 0) on knots spanning the quote
// strikes; C and C' come from its exact first and second antiderivatives.
// Below the first knot the curve is linear, above the last it decays
// exponentially with value/slope matched.
// ---------------------------------------------------------------------------
class FittedImpl final : public CallCurve::Impl {
public:
    FittedImpl(std::vector<double> knots, std::vector<double> qv, double c1, double s1,
               std::vector<Quote> orig, std::vector<Quote> proj, double max_shift)
        : tau_(std::move(knots)), q_(std::move(qv)), c1_(c1), s1_(s1),
          quotes_(std::move(orig)), proj_(std::move(proj)), max_shift_(max_shift) {
        const std::size_t p = tau_.size();
        cumq_.assign(p, 0.0);  // ∫ q
        cumuq_.assign(p, 0.0); // ∫ u·q(u)
        for (std::size_t j = 0; j + 1 < p; ++j) {
            const double h = tau_[j + 1] - tau_[j];
            cumq_[j + 1] = cumq_[j] + 0.5 * h * (q_[j] + q_[j + 1]);
            // ∫ u q(u) over the panel with q linear between the knots
            const double a = tau_[j], b = tau_[j + 1];
            cumuq_[j + 1] = cumuq_[j] +
                            h * (q_[j] * (2.0 * a + b) + q_[j + 1] * (a + 2.0 * b)) / 6.0;
        }
        cm_ = value_in_range(tau_.back());
        sm_ = s1_ + cumq_.back();
        if (cm_ > 1e-300 && sm_ < 0.0) {
            lambda_ = -sm_ / cm_;
            kmax_ = tau_.back() + 28.0 / lambda_;
        } else {
            lambda_ = 0.0;
            kmax_ = tau_.back();
        }
    }

    double price(double k) const override {
        if (k <= tau_.front()) return c1_ + s1_ * (k - tau_.front());
        if (k >= tau_.back())
            return lambda_ > 0.0 ? cm_ * std::exp(-lambda_ * (k - tau_.back()))
                                 : (sm_ < 0.0 ? std::max(0.0, cm_ + sm_ * (k - tau_.back())) : cm_);
        return value_in_range(k);
    }

    double slope(double k) const override {
        if (k <= tau_.front()) return s1_;
        if (k >= tau_.back()) return lambda_ > 0.0 ? -lambda_ * price(k) : sm_;
        const std::size_t j = locate(k);
        return s1_ + partial_cumq(j, k);
    }

    double curvature(double k) const override {
        if (k < tau_.front()) return 0.0;
        if (k >= tau_.back()) return lambda_ > 0.0 ? lambda_ * lambda_ * price(k) : 0.0;
        const std::size_t j = locate(k);
        const double h = tau_[j + 1] - tau_[j];
        const double w = (k - tau_[j]) / h;
        return q_[j] * (1.0 - w) + q_[j + 1] * w;
    }

    double k_lo() const override { return tau_.front(); }
    double k_hi() const override { return tau_.back(); }
    double kmax() const override { return kmax_; }
    double left_slope() const override { return s1_; }
    const std::vector<Quote>& quotes() const override { return quotes_; }
    const std::vector<Quote>& projected() const override { return proj_; }
    double max_shift() const override { return max_shift_; }
    bool fitted() const override { return true; }

    CallCurve::FittedParams params() const {
        CallCurve::FittedParams p;
        p.knots = tau_;
        p.q = q_;
        p.c1 = c1_;
        p.s1 = s1_;
        p.tail_lambda = lambda_;
        p.quotes = quotes_;
        p.projected = proj_;
        p.max_projection_shift = max_shift_;
        return p;
    }

private:
    std::size_t locate(double k) const {
        auto it = std::upper_bound(tau_.begin(), tau_.end(), k);
        std::size_t i = static_cast<std::size_t>(it - tau_.begin());
        if (i == 0) return 0;
        if (i >= tau_.size()) return tau_.size() - 2;
        return i - 1;
    }

    double partial_cumq(std::size_t j, double k) const {
        const double h = tau_[j + 1] - tau_[j];
        const double t = k - tau_[j];
        const double sl = (q_[j + 1] - q_[j]) / h;
        return cumq_[j] + t * (q_[j] + 0.5 * sl * t);
    }

    double partial_cumuq(std::size_t j, double k) const {
        const double h = tau_[j + 1] - tau_[j];
        const double t = k - tau_[j];
        const double sl = (q_[j + 1] - q_[j]) / h;
        const double a = tau_[j];
        // ∫_a^k u q(u) du with q(u) = q_j + sl (u - a)
        return cumuq_[j] + a * (q_[j] * t + 0.5 * sl * t * t) + q_[j] * 0.5 * t * t +
               sl * t * t * t / 3.0;
    }

    // C(k) = c1 + s1 (k - τ1) + ∫ (k - u) q(u) du, valid inside the knot range.
    double value_in_range(double k) const {
        const std::size_t j = locate(k);
        const double iq = partial_cumq(j, k);
        const double iuq = partial_cumuq(j, k);
        return c1_ + s1_ * (k - tau_.front()) + k * iq - iuq;
    }

    std::vector<double> tau_, q_, cumq_, cumuq_;
    double c1_, s1_;
    double cm_ = 0.0, sm_ = 0.0, lambda_ = 0.0, kmax_ = 0.0;
    std::vector<Quote> quotes_, proj_;
    double max_shift_ = 0.0;
};

// Closed-form backed curve (model curves, toy curves in tests).
class AnalyticImpl final : public CallCurve::Impl {
public:
    AnalyticImpl(std::function<double(double)> c, std::function<double(double)> s,
                 std::function<double(double)> q, double lo, double hi, double kmax)
        : c_(std::move(c)), s_(std::move(s)), q_(std::move(q)), lo_(lo), hi_(hi), kmax_(kmax) {}

    double price(double k) const override { return c_(k); }
    double slope(double k) const override { return s_(k); }
    double curvature(double k) const override { return q_(k); }
    double k_lo() const override { return lo_; }
    double k_hi() const override { return hi_; }
    double kmax() const override { return kmax_; }

private:
    std::function<double(double)> c_, s_, q_;
    double lo_, hi_, kmax_;
};

// ---------------------------------------------------------------------------
// Fitting
// ---------------------------------------------------------------------------

// Phase A: least-squares projection of quote prices onto the discrete
// convex-decreasing cone with slope and static bounds.
std::vector<double> project_quotes(const std::vector<Quote>& quotes, const MarketContext& ctx) {
    const int m = static_cast<int>(quotes.size());
    const double P = std::max_element(quotes.begin(), quotes.end(), [](auto& a, auto& b) {
                         return a.price < b.price;
                     })->price;
    const double L = quotes.back().strike - quotes.front().strike;
    const double Bn = ctx.bond_price * L / P; // slope bound in normalized units

    Eigen::VectorXd b(m);
    std::vector<double> x(m);
    for (int i = 0; i < m; ++i) {
        b[i] = quotes[i].price / P;
        x[i] = (quotes[i].strike - quotes.front().strike) / L;
    }

    std::vector<Eigen::VectorXd> rows;
    std::vector<double> rhs;
    auto add_row = [&](const Eigen::VectorXd& r, double h) {
        rows.push_back(r);
        rhs.push_back(h);
    };

    for (int i = 0; i + 1 < m; ++i) {
        const double h = x[i + 1] - x[i];
        Eigen::VectorXd r = Eigen::VectorXd::Zero(m);
        // slope <= 0
        r[i] = 1.0 / h;
        r[i + 1] = -1.0 / h;
        add_row(r, 0.0);
        // slope >= -B
        add_row(-r, -Bn);
    }
    for (int i = 0; i + 2 < m; ++i) {
        const double h0 = x[i + 1] - x[i], h1 = x[i + 2] - x[i + 1];
        Eigen::VectorXd r = Eigen::VectorXd::Zero(m);
        r[i] = 1.0 / h0;
        r[i + 1] = -(1.0 / h0 + 1.0 / h1);
        r[i + 2] = 1.0 / h1;
        add_row(r, 0.0);
    }
    const double Sn = ctx.spot / P;
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(m);
        r[i] = -1.0;
        add_row(r, -Sn); // c_i <= S
        Eigen::VectorXd r2 = Eigen::VectorXd::Zero(m);
        r2[i] = 1.0;
        const double intrinsic =
            std::max(0.0, ctx.spot - quotes[i].strike * ctx.bond_price) / P;
        add_row(r2, intrinsic); // c_i >= (S - K B)+
    }
    {
        // The left linear extrapolation (continuing the first chord) must not
        // exceed the spot at K = 0: c1 - d1·K1 <= S.
        const double k1 = (quotes[0].strike - quotes.front().strike + quotes.front().strike) / L;
        const double h = x[1] - x[0];
        Eigen::VectorXd r = Eigen::VectorXd::Zero(m);
        r[0] = -(1.0 + k1 / h);
        r[1] = k1 / h;
        add_row(r, -Sn);
    }

    Eigen::MatrixXd G(rows.size(), m);
    Eigen::VectorXd h(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        G.row(i) = rows[i].transpose();
        h[i] = rhs[i];
    }
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
    Eigen::VectorXd c;
    if (!math::lsi(A, b, G, h, c))
        raise(ErrorCode::UnrepairableQuotes,
              "no arbitrage-free projection of the quotes exists under the static bounds");

    std::vector<double> out(m);
    for (int i = 0; i < m; ++i) out[i] = c[i] * P;
    return out;
}

struct SplineSolution {
    std::vector<double> knots, q;
    double s1 = 0.0;
    bool ok = false;
};

// Phase B: minimum-roughness nonnegative piecewise-linear q with exact
// interpolation of the projected quotes.
SplineSolution solve_spline(const std::vector<double>& K, const std::vector<double>& c,
                            const MarketContext& ctx, int subdiv) {
    const int m = static_cast<int>(K.size());
    const double L = K.back() - K.front();
    const double P = *std::max_element(c.begin(), c.end());

    std::vector<double> tau; // normalized knots in [0, 1]
    for (int i = 0; i + 1 < m; ++i) {
        const double a = (K[i] - K.front()) / L, b = (K[i + 1] - K.front()) / L;
        for (int s = 0; s < subdiv; ++s) tau.push_back(a + (b - a) * s / subdiv);
    }
    tau.push_back(1.0);
    const int p = static_cast<int>(tau.size());
    const int n = p + 1; // z = (s1, q_1..q_p), all normalized

    // ∫_0^X (X - u) hat_j(u) du for the piecewise-linear hat at knot j.
    auto second_integral_coeffs = [&](double X, Eigen::VectorXd& row) {
        row.setZero(n);
        row[0] = X; // s1 term
        for (int seg = 0; seg + 1 < p && tau[seg] < X; ++seg) {
            const double a = tau[seg];
            const double bseg = std::min(tau[seg + 1], X);
            const double hseg = tau[seg + 1] - tau[seg];
            // left basis (value 1 at tau[seg], 0 at tau[seg+1]):
            //   ∫ (X - u)(tau_{seg+1} - u)/h du over [a, bseg]
            // right basis symmetric.
            const double u1 = a, u2 = bseg;
            auto I = [&](double w0, double w1) {
                // ∫ (X - u)(w0 + w1 u) du on [u1, u2]
                const double d2 = (u2 * u2 - u1 * u1) / 2.0;
                const double d3 = (u2 * u2 * u2 - u1 * u1 * u1) / 3.0;
                return X * w0 * (u2 - u1) + (X * w1 - w0) * d2 - w1 * d3;
            };
            row[1 + seg] += I(tau[seg + 1] / hseg, -1.0 / hseg);
            row[1 + seg + 1] += I(-tau[seg] / hseg, 1.0 / hseg);
        }
    };

    // Equalities: interpolation of the projected quotes beyond the first.
    Eigen::MatrixXd E(m - 1, n);
    Eigen::VectorXd e(m - 1);
    Eigen::VectorXd row(n);
    for (int i = 1; i < m; ++i) {
        const double X = (K[i] - K.front()) / L;
        second_integral_coeffs(X, row);
        E.row(i - 1) = row.transpose();
        e[i - 1] = (c[i] - c[0]) / P;
    }

    // Objective: roughness of q plus a small ridge for strict convexity.
    std::vector<Eigen::VectorXd> wrows;
    for (int j = 0; j + 1 < p; ++j) {
        const double dt = tau[j + 1] - tau[j];
        Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
        r[1 + j] = -1.0 / std::sqrt(dt);
        r[1 + j + 1] = 1.0 / std::sqrt(dt);
        wrows.push_back(r);
    }
    const double ridge = 1e-6;
    Eigen::MatrixXd W(wrows.size() + n, n);
    W.setZero();
    for (std::size_t i = 0; i < wrows.size(); ++i) W.row(i) = wrows[i].transpose();
    for (int j = 0; j < n; ++j) W(wrows.size() + j, j) = ridge;
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(W.rows());

    // Inequalities: q >= 0, slope floor, decreasing at the last knot, and the
    // zero-strike cap C(0) <= S carried through the left extrapolation.
    std::vector<Eigen::VectorXd> grows;
    std::vector<double> gh;
    for (int j = 0; j < p; ++j) {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
        r[1 + j] = 1.0;
        grows.push_back(r);
        gh.push_back(0.0);
    }
    {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
        r[0] = 1.0;
        grows.push_back(r);
        gh.push_back(-ctx.bond_price * L / P); // s1 >= -B
        const double cap = (c[0] / P - ctx.spot / P) * L / K.front();
        grows.push_back(r);
        gh.push_back(cap); // s1 >= (c1 - S)/K1
    }
    {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
        r[0] = -1.0;
        for (int j = 0; j < p; ++j) {
            const double lo = (j == 0) ? tau[0] : tau[j - 1];
            const double hi = (j + 1 == p) ? tau[p - 1] : tau[j + 1];
            r[1 + j] = -0.5 * (hi - lo); // hat area
        }
        grows.push_back(r);
        gh.push_back(0.0); // C'(Km) <= 0
    }
    Eigen::MatrixXd G(grows.size(), n);
    Eigen::VectorXd h(grows.size());
    for (std::size_t i = 0; i < grows.size(); ++i) {
        G.row(i) = grows[i].transpose();
        h[i] = gh[i];
    }

    Eigen::VectorXd z;
    SplineSolution sol;
    if (!math::lsi_eq(W, zero, E, e, G, h, z)) return sol;

    sol.knots.resize(p);
    sol.q.resize(p);
    for (int j = 0; j < p; ++j) {
        sol.knots[j] = K.front() + tau[j] * L;
        sol.q[j] = std::max(0.0, z[1 + j] * P / (L * L));
    }
    sol.s1 = z[0] * P / L;
    sol.ok = true;
    return sol;
}

double bs_call_price(double S, double B, double sigma_rt, double K) {
    if (K <= 0.0) return S;
    const double d1 = std::log(S / (K * B)) / sigma_rt + 0.5 * sigma_rt;
    return S * math::norm_cdf(d1) - K * B * math::norm_cdf(d1 - sigma_rt);
}

} // namespace

// ---------------------------------------------------------------------------
// CallCurve surface
// ---------------------------------------------------------------------------

const MarketContext& CallCurve::context() const { return impl_->ctx; }
double CallCurve::price(double k) const { return impl_->price(k); }
double CallCurve::slope(double k) const { return impl_->slope(k); }
double CallCurve::curvature(double k) const { return impl_->curvature(k); }
double CallCurve::lowest_knot() const { return impl_->k_lo(); }
double CallCurve::highest_knot() const { return impl_->k_hi(); }
double CallCurve::left_slope() const { return impl_->left_slope(); }
double CallCurve::kmax() const { return impl_->kmax(); }
const std::vector<Quote>& CallCurve::quotes() const { return impl_->quotes(); }
const std::vector<Quote>& CallCurve::projected_quotes() const { return impl_->projected(); }
double CallCurve::max_projection_shift() const { return impl_->max_shift(); }

CallCurve CallCurve::fit(std::vector<Quote> quotes, const MarketContext& ctx,
                         const FitOptions& opt) {
    ctx.validate();
    if (quotes.size() < 4)
        raise(ErrorCode::InsufficientQuotes, "curve fitting needs at least 4 quotes");
    std::sort(quotes.begin(), quotes.end(),
              [](const Quote& a, const Quote& b) { return a.strike < b.strike; });
    for (std::size_t i = 0; i < quotes.size(); ++i) {
        if (!(quotes[i].strike > 0.0) || !(quotes[i].price > 0.0))
            raise(ErrorCode::InvalidInput, "quotes need positive strikes and prices");
        if (i > 0 && !(quotes[i].strike > quotes[i - 1].strike))
            raise(ErrorCode::InvalidInput, "quote strikes must be distinct");
    }

    std::vector<double> strikes(quotes.size()), prices(quotes.size());
    for (std::size_t i = 0; i < quotes.size(); ++i) {
        strikes[i] = quotes[i].strike;
        prices[i] = quotes[i].price;
    }

    std::vector<double> proj = project_quotes(quotes, ctx);
    double max_shift = 0.0;
    for (std::size_t i = 0; i < quotes.size(); ++i)
        max_shift = std::max(max_shift, std::fabs(proj[i] - prices[i]) / prices[i]);
    if (max_shift > opt.max_projection_rel)
        raise(ErrorCode::UnrepairableQuotes,
              "convexity projection moved a quote by " + std::to_string(max_shift * 100.0) +
                  "% (limit " + std::to_string(opt.max_projection_rel * 100.0) + "%)");
    log::debug("quote projection max relative shift ", max_shift);

    SplineSolution sol;
    for (int subdiv = std::max(1, opt.knots_per_interval); subdiv <= 16; subdiv *= 2) {
        sol = solve_spline(strikes, proj, ctx, subdiv);
        if (sol.ok) break;
        log::info("convex spline infeasible at ", subdiv, " knots per gap; refining");
    }
    if (!sol.ok)
        raise(ErrorCode::UnrepairableQuotes,
              "no convex C2 interpolant through the projected quotes");

    std::vector<Quote> projected(quotes.size());
    for (std::size_t i = 0; i < quotes.size(); ++i) projected[i] = {strikes[i], proj[i]};

    auto impl = std::make_shared<FittedImpl>(sol.knots, sol.q, proj[0], sol.s1,
                                             std::move(quotes), std::move(projected), max_shift);
    impl->ctx = ctx;

    // Reproduction check: the interpolation equalities must hold to solver
    // precision, well inside eps_fit.
    const double scale = *std::max_element(proj.begin(), proj.end());
    for (std::size_t i = 0; i < strikes.size(); ++i) {
        const double err = std::fabs(impl->price(strikes[i]) - proj[i]);
        if (err > opt.eps_fit * std::max(1.0, scale))
            raise(ErrorCode::InvalidInput,
                  "fitted curve fails to reproduce projected quotes (residual " +
                      std::to_string(err) + ")");
    }
    return CallCurve(std::move(impl));
}

CallCurve CallCurve::lognormal_model(const MarketContext& ctx, double sigma) {
    ctx.validate();
    if (!(sigma > 0.0)) raise(ErrorCode::InvalidInput, "model volatility must be positive");
    const double S = ctx.spot, B = ctx.bond_price;
    const double srt = sigma * std::sqrt(ctx.tau());
    const double mu_rn = std::log(S / B) - 0.5 * srt * srt; // log-space RN mean

    auto price = [S, B, srt](double k) { return bs_call_price(S, B, srt, k); };
    auto slope = [S, B, srt](double k) {
        if (k <= 0.0) return -B;
        const double d2 = std::log(S / (k * B)) / srt - 0.5 * srt;
        return -B * math::norm_cdf(d2);
    };
    auto curv = [S, B, srt](double k) {
        if (k <= 0.0) return 0.0;
        const double d2 = std::log(S / (k * B)) / srt - 0.5 * srt;
        return B * math::norm_pdf(d2) / (k * srt);
    };
    const double klo = std::exp(mu_rn + srt * math::norm_quantile(1e-7));
    const double khi = std::exp(mu_rn + srt * math::norm_quantile(1.0 - 1e-7));
    const double kmax = std::exp(mu_rn + srt * math::norm_quantile(1.0 - 1e-12));
    return from_functions(ctx, price, slope, curv, klo, khi, kmax);
}

CallCurve CallCurve::from_functions(const MarketContext& ctx, std::function<double(double)> price,
                                    std::function<double(double)> slope,
                                    std::function<double(double)> curvature, double k_lo,
                                    double k_hi, double kmax) {
    auto impl = std::make_shared<AnalyticImpl>(std::move(price), std::move(slope),
                                               std::move(curvature), k_lo, k_hi, kmax);
    impl->ctx = ctx;
    return CallCurve(std::move(impl));
}

CallCurve::FittedParams CallCurve::fitted_params() const {
    if (!impl_->fitted())
        raise(ErrorCode::InvalidInput, "curve is not a fitted curve");
    return static_cast<const FittedImpl&>(*impl_).params();
}

CallCurve CallCurve::from_fitted_params(const FittedParams& p, const MarketContext& ctx) {
    auto impl = std::make_shared<FittedImpl>(p.knots, p.q, p.c1, p.s1, p.quotes, p.projected,
                                             p.max_projection_shift);
    impl->ctx = ctx;
    return CallCurve(std::move(impl));
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

double digital_price(const CallCurve& curve, double strike) {
    if (strike < 0.0 || strike > curve.kmax())
        raise(ErrorCode::OutOfDomain, "digital strike outside [0, kmax]");
    const double v = -curve.slope(strike);
    return std::min(curve.context().bond_price, std::max(0.0, v));
}

double implied_short_rate(const CallCurve& curve) {
    const double d = -curve.left_slope();
    if (!(d > 0.0) || d > 1.0 + 1e-12)
        raise(ErrorCode::SlopeOutOfRange, "-C'(0+) must lie in (0, 1]");
    return -std::log(std::min(1.0, d)) / curve.context().tau();
}

DefaultMass detect_default_mass(const CallCurve& curve, double r_ext) {
    DefaultMass out;
    const double df = std::exp(-r_ext * curve.context().tau());
    double atom = df + curve.left_slope();
    if (atom < -1e-6)
        raise(ErrorCode::NegativeMass,
              "external rate inconsistent with the curve: negative default mass");
    if (atom < 0.0) atom = 0.0;
    out.atom_value = atom;
    out.probability = atom / curve.context().bond_price;
    return out;
}

ArbitrageReport check_quote_arbitrage(std::vector<Quote> quotes, const MarketContext& ctx) {
    ctx.validate();
    std::sort(quotes.begin(), quotes.end(),
              [](const Quote& a, const Quote& b) { return a.strike < b.strike; });
    ArbitrageReport rep;
    if (quotes.empty()) return rep;
    double pmax = 0.0;
    for (const Quote& q : quotes) pmax = std::max(pmax, std::fabs(q.price));
    const double tol = 1e-10 * std::max(1.0, pmax);

    for (std::size_t i = 0; i + 1 < quotes.size(); ++i) {
        const double s = (quotes[i + 1].price - quotes[i].price) /
                         (quotes[i + 1].strike - quotes[i].strike);
        if (s > tol)
            rep.violations.push_back({"slope", quotes[i].strike, s});
        if (s < -ctx.bond_price - tol)
            rep.violations.push_back({"slope", quotes[i].strike, -(s + ctx.bond_price)});
    }
    for (std::size_t i = 0; i + 2 < quotes.size(); ++i) {
        const double h0 = quotes[i + 1].strike - quotes[i].strike;
        const double h1 = quotes[i + 2].strike - quotes[i + 1].strike;
        const double dd = (quotes[i + 2].price - quotes[i + 1].price) / h1 -
                          (quotes[i + 1].price - quotes[i].price) / h0;
        if (dd < -tol)
            rep.violations.push_back({"butterfly", quotes[i + 1].strike, -dd});
    }
    for (const Quote& q : quotes) {
        const double intrinsic = std::max(0.0, ctx.spot - q.strike * ctx.bond_price);
        if (q.price < intrinsic - tol)
            rep.violations.push_back({"bound", q.strike, intrinsic - q.price});
        if (q.price > ctx.spot + tol)
            rep.violations.push_back({"bound", q.strike, q.price - ctx.spot});
    }
    return rep;
}

} // namespace spdval
