#include "spdval/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spdval/errors.hpp"

namespace spdval::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    return out;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

double parse_double(const std::string& s, const std::string& path) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw IoError("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw IoError("bad numeric value '" + s + "' in " + path);
    }
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty file " + path);
    t.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != t.header.size())
            throw IoError("ragged row in " + path);
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& c : cells) row.push_back(parse_double(c, path));
        t.rows.push_back(std::move(row));
    }
    return t;
}

bool header_is(const CsvTable& t, std::initializer_list<const char*> names) {
    if (t.header.size() != names.size()) return false;
    std::size_t i = 0;
    for (const char* n : names) {
        std::string h = t.header[i++];
        std::transform(h.begin(), h.end(), h.begin(), ::tolower);
        if (h != n) return false;
    }
    return true;
}

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<Quote> load_quotes_csv(const std::string& path) {
    CsvTable t = read_csv(path);
    if (!header_is(t, {"strike", "price"}))
        throw IoError(path + ": expected header 'strike,price'");
    std::vector<Quote> quotes;
    quotes.reserve(t.rows.size());
    for (const auto& r : t.rows) quotes.push_back({r[0], r[1]});
    return quotes;
}

GridSpec load_density_csv(const std::string& path) {
    CsvTable t = read_csv(path);
    if (!header_is(t, {"x", "phi"}))
        throw IoError(path + ": expected header 'x,phi'");
    GridSpec spec;
    for (const auto& r : t.rows) {
        spec.nodes.push_back(r[0]);
        spec.values.push_back(r[1]);
    }
    return spec;
}

std::vector<double> load_samples_csv(const std::string& path) {
    CsvTable t = read_csv(path);
    if (!header_is(t, {"sample"}))
        throw IoError(path + ": expected header 'sample'");
    std::vector<double> out;
    out.reserve(t.rows.size());
    for (const auto& r : t.rows) out.push_back(r[0]);
    return out;
}

Distribution distribution_from_json(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    const json& p = j.value("params", json::object());
    if (family == "uniform")
        return Distribution::uniform(p.at("a").get<double>(), p.at("b").get<double>());
    if (family == "exponential")
        return Distribution::exponential(p.at("rate").get<double>());
    if (family == "normal")
        return Distribution::normal(p.at("mean").get<double>(), p.at("stddev").get<double>());
    if (family == "lognormal")
        return Distribution::lognormal(p.at("mu").get<double>(), p.at("sigma").get<double>());
    if (family == "mixture") {
        std::vector<std::pair<Distribution, double>> comps;
        for (const json& c : j.at("components"))
            comps.emplace_back(distribution_from_json(c), c.at("weight").get<double>());
        return Distribution::mixture(std::move(comps));
    }
    throw IoError("unknown distribution family '" + family + "'");
}

Distribution load_distribution(const std::string& path) {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
        return distribution_from_json(load_json(path));
    CsvTable t = read_csv(path);
    if (header_is(t, {"x", "phi"})) {
        GridSpec spec;
        for (const auto& r : t.rows) {
            spec.nodes.push_back(r[0]);
            spec.values.push_back(r[1]);
        }
        return Distribution::from_grid(std::move(spec));
    }
    if (header_is(t, {"sample"})) {
        std::vector<double> samples;
        for (const auto& r : t.rows) samples.push_back(r[0]);
        return estimate_density_from_samples(samples);
    }
    throw IoError(path + ": expected header 'x,phi' or 'sample'");
}

MarketContext load_context_json(const std::string& path) {
    const json j = load_json(path);
    MarketContext ctx;
    ctx.t = j.value("t", 0.0);
    ctx.T = j.at("T").get<double>();
    ctx.bond_price = j.at("bond_price").get<double>();
    ctx.spot = j.at("spot").get<double>();
    if (j.contains("short_rate")) ctx.short_rate = j.at("short_rate").get<double>();
    ctx.validate();
    return ctx;
}

json context_to_json(const MarketContext& ctx) {
    json j{{"t", ctx.t}, {"T", ctx.T}, {"bond_price", ctx.bond_price}, {"spot", ctx.spot}};
    if (ctx.short_rate) j["short_rate"] = *ctx.short_rate;
    return j;
}

json curve_to_json(const CallCurve& curve) {
    const CallCurve::FittedParams p = curve.fitted_params();
    json quotes = json::array(), projected = json::array();
    for (const Quote& q : p.quotes) quotes.push_back({q.strike, q.price});
    for (const Quote& q : p.projected) projected.push_back({q.strike, q.price});
    return json{{"context", context_to_json(curve.context())},
                {"knots", p.knots},
                {"q", p.q},
                {"c1", p.c1},
                {"s1", p.s1},
                {"tail_lambda", p.tail_lambda},
                {"quotes", quotes},
                {"projected_quotes", projected},
                {"max_projection_shift", p.max_projection_shift}};
}

CallCurve curve_from_json(const json& j) {
    MarketContext ctx;
    const json& c = j.at("context");
    ctx.t = c.value("t", 0.0);
    ctx.T = c.at("T").get<double>();
    ctx.bond_price = c.at("bond_price").get<double>();
    ctx.spot = c.at("spot").get<double>();
    if (c.contains("short_rate")) ctx.short_rate = c.at("short_rate").get<double>();

    CallCurve::FittedParams p;
    p.knots = j.at("knots").get<std::vector<double>>();
    p.q = j.at("q").get<std::vector<double>>();
    p.c1 = j.at("c1").get<double>();
    p.s1 = j.at("s1").get<double>();
    p.tail_lambda = j.value("tail_lambda", 0.0);
    for (const json& q : j.value("quotes", json::array()))
        p.quotes.push_back({q[0].get<double>(), q[1].get<double>()});
    for (const json& q : j.value("projected_quotes", json::array()))
        p.projected.push_back({q[0].get<double>(), q[1].get<double>()});
    p.max_projection_shift = j.value("max_projection_shift", 0.0);
    return CallCurve::from_fitted_params(p, ctx);
}

json spd_to_json(const StatePriceDensity& spd) {
    // Knot sampling dense enough for diagnostics; the curve artifact remains
    // the lossless representation.
    const int n = 513;
    json nodes = json::array(), values = json::array();
    for (int i = 0; i <= n; ++i) {
        const double k = spd.domain_hi() * i / n;
        nodes.push_back(k);
        values.push_back(spd.q(k));
    }
    return json{{"context", context_to_json(spd.context())},
                {"zero_atom", spd.zero_atom()},
                {"nodes", nodes},
                {"q", values}};
}

StatePriceDensity spd_from_json(const json& j) {
    MarketContext ctx;
    const json& c = j.at("context");
    ctx.t = c.value("t", 0.0);
    ctx.T = c.at("T").get<double>();
    ctx.bond_price = c.at("bond_price").get<double>();
    ctx.spot = c.at("spot").get<double>();
    if (c.contains("short_rate")) ctx.short_rate = c.at("short_rate").get<double>();
    return StatePriceDensity::from_grid(j.at("nodes").get<std::vector<double>>(),
                                        j.at("q").get<std::vector<double>>(),
                                        j.at("zero_atom").get<double>(), ctx);
}

void save_spd_csv(const std::string& path, const StatePriceDensity& spd, int samples) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "K,q\n";
    for (int i = 0; i <= samples; ++i) {
        const double k = spd.domain_hi() * i / samples;
        out << format_number(k) << "," << format_number(spd.q(k)) << "\n";
    }
}

void save_binding_map_csv(const std::string& path, const BindingMap& bm, int samples) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "x,K,Kprime\n";
    const double lo = bm.source().support_lo(), hi = bm.source().support_hi();
    for (int i = 0; i <= samples; ++i) {
        const double x = lo + (hi - lo) * i / samples;
        out << format_number(x) << "," << format_number(bm.map(x)) << ","
            << format_number(bm.derivative(x)) << "\n";
    }
}

json measure_to_json(const SignedMeasure& rho, int ac_samples) {
    json ac = json::array();
    if (rho.has_ac_part()) {
        const double lo = rho.domain_lo(), hi = rho.domain_hi();
        for (int i = 0; i <= ac_samples; ++i) {
            const double k = lo + (hi - lo) * i / ac_samples;
            ac.push_back({k, rho.density(k)});
        }
    }
    json atoms = json::array();
    for (const Atom& a : rho.atoms()) atoms.push_back({a.location, a.weight});
    return json{{"ac", ac}, {"atoms", atoms}};
}

json report_to_json(const ValuationReport& rep) {
    return json{{"value", rep.value},
                {"method", rep.method},
                {"n", rep.n},
                {"diagnostics",
                 {{"tail_mass_phi1", rep.diagnostics.tail_mass_phi1},
                  {"tail_mass_phi2", rep.diagnostics.tail_mass_phi2},
                  {"quad_error", rep.diagnostics.quad_error},
                  {"measure_preservation", rep.diagnostics.measure_preservation}}},
                {"portfolio", measure_to_json(rep.portfolio)}};
}

json load_json(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace spdval::io
