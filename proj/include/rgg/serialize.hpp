#pragma once
// CSV and JSON serialization of Monte Carlo results. Doubles are written with
// 17 significant digits so reruns compare byte-for-byte.

#include <string>

#include <json.hpp>

#include "rgg/montecarlo.hpp"
#include "rgg/strfmt.hpp"

namespace rgg {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSweepCsvHeader =
    "n,r,property,k,trials,successes,p_hat,ci_lo,ci_hi,unknown,seed";

inline std::string to_csv_row(const SweepRow& row) {
  std::string out;
  out += std::to_string(row.n);
  out += ',';
  out += detail::format_g17(row.r);
  out += ',';
  out += property_name(row.property.kind);
  out += ',';
  out += std::to_string(row.property.k);
  out += ',';
  out += std::to_string(row.trials);
  out += ',';
  out += std::to_string(row.successes);
  out += ',';
  out += detail::format_g17(row.p_hat);
  out += ',';
  out += detail::format_g17(row.ci_lo);
  out += ',';
  out += detail::format_g17(row.ci_hi);
  out += ',';
  out += std::to_string(row.unknown_count);
  out += ',';
  out += std::to_string(row.master_seed);
  return out;
}

inline Json to_json(const ThresholdEstimate& t) {
  Json j;
  j["n"] = t.n;
  j["property"] = property_name(t.property.kind);
  j["k"] = t.property.k;
  j["r_star"] = t.r_star;
  j["bracket"] = Json{{"r_lo", t.r_lo}, {"r_hi", t.r_hi}};
  j["trials_per_probe"] = t.trials_per_probe;
  return j;
}

inline Json to_json(const ExponentFit& f) {
  Json pts = Json::array();
  for (const auto& p : f.points)
    pts.push_back(Json{{"n", p.n}, {"r_star", p.r_star}});
  Json j;
  j["points"] = std::move(pts);
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["stderr_slope"] = f.stderr_slope;
  return j;
}

inline ThresholdEstimate threshold_from_json(const Json& j) {
  ThresholdEstimate t;
  t.n = j.at("n").get<std::int64_t>();
  t.property = parse_property(j.at("property").get<std::string>(),
                              j.value("k", 0));
  t.r_star = j.at("r_star").get<double>();
  t.r_lo = j.at("bracket").at("r_lo").get<double>();
  t.r_hi = j.at("bracket").at("r_hi").get<double>();
  t.trials_per_probe = j.at("trials_per_probe").get<std::int64_t>();
  return t;
}

}  // namespace rgg
