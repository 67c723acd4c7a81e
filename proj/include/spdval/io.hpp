#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "spdval/binding_map.hpp"
#include "spdval/call_curve.hpp"
#include "spdval/distribution.hpp"
#include "spdval/market_context.hpp"
#include "spdval/signed_measure.hpp"
#include "spdval/state_price_density.hpp"
#include "spdval/valuation.hpp"

namespace spdval::io {

using json = nlohmann::json;

// I/O failures (missing files, malformed content) throw IoError so the CLI can
// map them to exit code 2, distinct from domain validation errors.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- ingestion ---
std::vector<Quote> load_quotes_csv(const std::string& path);
GridSpec load_density_csv(const std::string& path);
std::vector<double> load_samples_csv(const std::string& path);
//! .json -> analytic family config; .csv -> density grid or samples (by header).
Distribution load_distribution(const std::string& path);
Distribution distribution_from_json(const json& j);
MarketContext load_context_json(const std::string& path);

// --- artifacts ---
json curve_to_json(const CallCurve& curve);
CallCurve curve_from_json(const json& j);
json spd_to_json(const StatePriceDensity& spd);
StatePriceDensity spd_from_json(const json& j);
void save_spd_csv(const std::string& path, const StatePriceDensity& spd, int samples = 513);
void save_binding_map_csv(const std::string& path, const BindingMap& bm, int samples = 257);

json context_to_json(const MarketContext& ctx);
json measure_to_json(const SignedMeasure& rho, int ac_samples = 257);
json report_to_json(const ValuationReport& rep);

json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);

//! %.17g formatting used by every CSV writer, lossless on round-trip.
std::string format_number(double v);

} // namespace spdval::io
