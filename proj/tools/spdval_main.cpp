#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "spdval/errors.hpp"
#include "spdval/io.hpp"
#include "spdval/log.hpp"
#include "spdval/metrics.hpp"
#include "spdval/valuation.hpp"

using nlohmann::json;
using namespace spdval;

namespace {

struct CommonArgs {
    std::string quotes, curve, spd_in, phi1, phi2, ctx, out;
    std::string csv, integrand_csv, map_csv;
    std::vector<int> ns;
    int n = 0;
    long seed = 0;
    double scale = 1.0, shift = 0.0;
    std::optional<double> tol_spd, tol_quad, tol_fit, tol_tail;
};

void apply_tolerance_overrides(const CommonArgs& a) {
    Tolerances t = default_tolerances();
    if (a.tol_spd) t.eps_spd_fitted = *a.tol_spd;
    if (a.tol_quad) t.eps_quad = *a.tol_quad;
    if (a.tol_fit) t.eps_fit = *a.tol_fit;
    if (a.tol_tail) t.eps_tail = *a.tol_tail;
    set_global_tolerances(t);
}

FitOptions fit_options() {
    FitOptions opt;
    opt.eps_fit = default_tolerances().eps_fit;
    return opt;
}

// Curve + SPD resolution: quotes imply a fit; a curve artifact loads lossless;
// a raw SPD JSON backs q with a sampled grid.
struct Surface {
    CallCurve curve; // may be invalid when only an SPD grid was given
    StatePriceDensity spd;
};

Surface resolve_surface(const CommonArgs& a) {
    Surface s;
    if (!a.quotes.empty()) {
        MarketContext ctx = io::load_context_json(a.ctx);
        s.curve = CallCurve::fit(io::load_quotes_csv(a.quotes), ctx, fit_options());
        s.spd = StatePriceDensity::from_curve(s.curve);
    } else if (!a.curve.empty()) {
        s.curve = io::curve_from_json(io::load_json(a.curve));
        s.spd = StatePriceDensity::from_curve(s.curve);
    } else if (!a.spd_in.empty()) {
        s.spd = io::spd_from_json(io::load_json(a.spd_in));
    } else {
        throw io::IoError("one of --quotes/--curve/--spd-in is required");
    }
    return s;
}

void write_error_report(const std::string& out, const std::string& code,
                        const std::string& message) {
    if (out.empty()) return;
    try {
        io::save_json(out, json{{"errors", json::array({{{"code", code}, {"message", message}}})}});
    } catch (...) {
        // Reporting must not mask the original failure.
    }
}

json seed_field(const CommonArgs& a) { return json(a.seed); }

int cmd_fit(const CommonArgs& a) {
    MarketContext ctx = io::load_context_json(a.ctx);
    CallCurve curve = CallCurve::fit(io::load_quotes_csv(a.quotes), ctx, fit_options());
    json j = io::curve_to_json(curve);
    j["seed"] = seed_field(a);
    io::save_json(a.out, j);
    log::info("fit: max projection shift ", curve.max_projection_shift());
    return 0;
}

int cmd_spd(const CommonArgs& a) {
    Surface s = resolve_surface(a);
    json j = io::spd_to_json(s.spd);
    j["seed"] = seed_field(a);
    const double bond = recover_bond(s.spd);
    j["recovered_bond"] = bond;
    j["bond_gap_rel"] =
        std::fabs(bond - s.spd.context().bond_price) / s.spd.context().bond_price;
    if (!a.out.empty()) io::save_json(a.out, j);
    if (!a.csv.empty()) io::save_spd_csv(a.csv, s.spd);
    return 0;
}

int cmd_check_arb(const CommonArgs& a) {
    MarketContext ctx = io::load_context_json(a.ctx);
    ArbitrageReport rep = check_quote_arbitrage(io::load_quotes_csv(a.quotes), ctx);
    json viols = json::array();
    for (const auto& v : rep.violations)
        viols.push_back({{"kind", v.kind}, {"strike", v.strike}, {"amount", v.amount}});
    json j{{"clean", rep.clean()}, {"violations", viols}, {"seed", seed_field(a)}};
    if (!a.out.empty()) io::save_json(a.out, j);
    for (const auto& v : rep.violations)
        log::warn("arbitrage ", v.kind, " at strike ", v.strike, " amount ", v.amount);
    return rep.clean() ? 0 : 1;
}

ValuationInputs resolve_inputs(const CommonArgs& a, const Surface& s) {
    ValuationInputs in;
    in.phi1 = io::load_distribution(a.phi1);
    in.phi2 = io::load_distribution(a.phi2);
    in.spd = s.spd;
    in.ctx = s.spd.context();
    return in;
}

void write_integrand_csv(const std::string& path, const ValuationInputs& in) {
    const BindingMap bm = build_binding_map(in.phi1, in.phi2);
    std::ofstream out(path);
    if (!out) throw io::IoError("cannot write " + path);
    out << "x,integrand\n";
    const double lo = in.phi1.support_lo(), hi = in.phi1.support_hi();
    for (int i = 0; i <= 512; ++i) {
        const double x = lo + (hi - lo) * i / 512;
        const double k = bm.map(x);
        const double p2 = in.phi2.density(k);
        const double v = p2 > 0.0 ? x * in.phi1.density(x) / p2 * in.spd.q(k) : 0.0;
        out << io::format_number(x) << "," << io::format_number(v) << "\n";
    }
}

int cmd_value(const CommonArgs& a) {
    Surface s = resolve_surface(a);
    ValuationInputs in = resolve_inputs(a, s);

    ValuationReport rep;
    const bool transformed = a.scale != 1.0 || a.shift != 0.0;
    if (a.n > 0) {
        if (transformed) {
            ValuationInputs t = in;
            t.phi1 = Distribution::affine(in.phi1, a.scale, a.shift);
            rep = finite_portfolio_value(t, a.n);
        } else {
            rep = finite_portfolio_value(in, a.n);
        }
    } else if (transformed) {
        ValuationInputs t = in;
        t.phi1 = Distribution::affine(in.phi1, a.scale, a.shift);
        rep = value_closed_form(t);
    } else {
        rep = value_closed_form(in);
    }

    // The portfolio itself goes to a sidecar; the report carries its path.
    const std::string portfolio_path = a.out + ".portfolio.json";
    io::save_json(portfolio_path, io::measure_to_json(rep.portfolio));

    json j = io::report_to_json(rep);
    j.erase("portfolio");
    j["portfolio_ref"] = portfolio_path;
    j["seed"] = seed_field(a);
    j["context"] = io::context_to_json(in.ctx);
    if (transformed) j["transform"] = {{"scale", a.scale}, {"shift", a.shift}};
    if (s.curve.valid()) {
        SpotRecovery spot = recover_spot(in.spd, s.curve);
        j["diagnostics"]["recovered_bond"] = recover_bond(in.spd);
        j["diagnostics"]["recovered_spot_integral"] = spot.from_integral;
        j["diagnostics"]["recovered_spot_limit"] = spot.from_limit;
    }
    io::save_json(a.out, j);
    if (!a.integrand_csv.empty()) write_integrand_csv(a.integrand_csv, in);
    if (!a.map_csv.empty())
        io::save_binding_map_csv(a.map_csv, build_binding_map(in.phi1, in.phi2));
    return 0;
}

int cmd_converge(const CommonArgs& a) {
    Surface s = resolve_surface(a);
    ValuationInputs in = resolve_inputs(a, s);
    std::vector<int> ns = a.ns;
    if (ns.empty()) ns = {10, 100, 1000};
    ConvergenceStudy study = convergence_study(in, ns);
    json rows = json::array();
    for (const auto& r : study.rows)
        rows.push_back({{"n", r.n}, {"value", r.value}, {"abs_error", r.abs_error}});
    io::save_json(a.out, json{{"reference", study.reference},
                              {"rows", rows},
                              {"seed", seed_field(a)}});
    return 0;
}

int cmd_sharpean(const CommonArgs& a) {
    MarketContext ctx = io::load_context_json(a.ctx);
    Distribution cf = io::load_distribution(a.phi1);
    SharpeanResult r = sharpean_operation(cf, ctx);
    io::save_json(a.out, json{{"shift", r.shift},
                              {"sigma", r.sigma},
                              {"score", r.score},
                              {"seed", seed_field(a)}});
    return 0;
}

int cmd_metrics(const CommonArgs& a) {
    Distribution p = io::load_distribution(a.phi1);
    Distribution q = io::load_distribution(a.phi2);
    MeasurePair pair = make_measure_pair(p, q);
    io::save_json(a.out,
                  json{{"relative_entropy_abs", relative_entropy(pair, EntropyVariant::absolute_log)},
                       {"relative_entropy_kl", relative_entropy(pair, EntropyVariant::standard_kl)},
                       {"symmetric_distance", symmetric_distance(pair)},
                       {"seed", seed_field(a)}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"state-price-density valuation of single-step cash flows"};
    app.require_subcommand(1);

    CommonArgs a;
    auto add_common = [&](CLI::App* cmd, bool needs_out) {
        cmd->add_option("--out", a.out, "output JSON report path")->required(needs_out);
        cmd->add_option("--seed", a.seed, "seed recorded in the report");
        cmd->add_option("--tol-spd", a.tol_spd, "override eps_spd");
        cmd->add_option("--tol-quad", a.tol_quad, "override eps_quad");
        cmd->add_option("--tol-fit", a.tol_fit, "override eps_fit");
        cmd->add_option("--tol-tail", a.tol_tail, "override eps_tail");
    };
    auto add_surface = [&](CLI::App* cmd) {
        cmd->add_option("--quotes", a.quotes, "quotes CSV (strike,price)");
        cmd->add_option("--curve", a.curve, "fitted-curve JSON artifact");
        cmd->add_option("--spd-in", a.spd_in, "state-price-density JSON artifact");
    };

    CLI::App* fit = app.add_subcommand("fit", "fit an arbitrage-consistent call curve");
    fit->add_option("--quotes", a.quotes)->required();
    fit->add_option("--ctx", a.ctx)->required();
    add_common(fit, true);

    CLI::App* spd = app.add_subcommand("spd", "extract the state price density");
    add_surface(spd);
    spd->add_option("--ctx", a.ctx, "market context JSON (with --quotes)");
    spd->add_option("--csv", a.csv, "also export sampled K,q CSV");
    add_common(spd, false);

    CLI::App* arb = app.add_subcommand("check-arb", "no-arbitrage report on raw quotes");
    arb->add_option("--quotes", a.quotes)->required();
    arb->add_option("--ctx", a.ctx)->required();
    add_common(arb, false);

    CLI::App* value = app.add_subcommand("value", "value a cash flow against the benchmark");
    add_surface(value);
    value->add_option("--ctx", a.ctx, "market context JSON (with --quotes)");
    value->add_option("--phi1", a.phi1, "cash-flow distribution")->required();
    value->add_option("--phi2", a.phi2, "benchmark physical distribution")->required();
    value->add_option("--n", a.n, "use the finite n-interval portfolio");
    value->add_option("--scale", a.scale, "value scale·CF instead");
    value->add_option("--shift", a.shift, "value CF + shift instead");
    value->add_option("--integrand-csv", a.integrand_csv, "dump (x, integrand) CSV");
    value->add_option("--map-csv", a.map_csv, "dump the binding map (x, K, Kprime) CSV");
    add_common(value, true);

    CLI::App* conv = app.add_subcommand("converge", "finite-portfolio convergence table");
    add_surface(conv);
    conv->add_option("--ctx", a.ctx, "market context JSON (with --quotes)");
    conv->add_option("--phi1", a.phi1)->required();
    conv->add_option("--phi2", a.phi2)->required();
    conv->add_option("--ns", a.ns, "partition counts")->delimiter(',');
    add_common(conv, true);

    CLI::App* sharpe = app.add_subcommand("sharpean", "affine-invariant cash-flow score");
    sharpe->add_option("--phi1", a.phi1)->required();
    sharpe->add_option("--ctx", a.ctx)->required();
    add_common(sharpe, true);

    CLI::App* metrics = app.add_subcommand("metrics", "distribution distance diagnostics");
    metrics->add_option("--phi1", a.phi1)->required();
    metrics->add_option("--phi2", a.phi2)->required();
    add_common(metrics, true);

    CLI11_PARSE(app, argc, argv);
    apply_tolerance_overrides(a);

    try {
        if (fit->parsed()) return cmd_fit(a);
        if (spd->parsed()) return cmd_spd(a);
        if (arb->parsed()) return cmd_check_arb(a);
        if (value->parsed()) return cmd_value(a);
        if (conv->parsed()) return cmd_converge(a);
        if (sharpe->parsed()) return cmd_sharpean(a);
        if (metrics->parsed()) return cmd_metrics(a);
    } catch (const Error& e) {
        log::error(e.what());
        write_error_report(a.out, error_code_name(e.code()), e.what());
        return 1;
    } catch (const io::IoError& e) {
        log::error(e.what());
        write_error_report(a.out, "IoError", e.what());
        return 2;
    } catch (const std::exception& e) {
        log::error(e.what());
        write_error_report(a.out, "InternalError", e.what());
        return 2;
    }
    return 2;
}
