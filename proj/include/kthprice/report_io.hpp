#pragma once

#include "kthprice/verification.hpp"

#include <json.hpp>

#include <cstdio>
#include <string>
#include <string_view>

namespace kthprice {

/// 12 significant digits.
inline std::string format_decimal(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// v rounded to 12 significant digits, for JSON output.
inline double round_decimal(double v)
{
  return std::stod(format_decimal(v));
}

/// RFC 4180 field: quoted when it contains a comma, quote or line break.
inline std::string csv_field(std::string_view field)
{
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

inline nlohmann::ordered_json to_json(const VerificationReport &report)
{
  nlohmann::ordered_json j;
  j["check"] = report.check;
  nlohmann::ordered_json params;
  params["n"] = report.config.n;
  params["k"] = report.config.k;
  params["bid"] = report.bid;
  params["dist"] = {{"a", round_decimal(report.a)}, {"b", round_decimal(report.b)},
                    {"omega", round_decimal(report.omega)}};
  j["params"] = params;
  auto grid = nlohmann::ordered_json::array();
  for (double x : report.grid) {
    grid.push_back(round_decimal(x));
  }
  j["grid"] = grid;
  auto errors = nlohmann::ordered_json::array();
  for (double e : report.errors) {
    errors.push_back(round_decimal(e));
  }
  j["errors"] = errors;
  j["max_error"] = round_decimal(report.max_error);
  j["tolerance"] = report.tolerance;
  j["pass"] = report.pass;
  if (report.seed) {
    j["seed"] = *report.seed;
  }
  if (!report.settings.empty()) {
    nlohmann::ordered_json settings;
    for (const auto &[key, value] : report.settings) {
      settings[key] = value;
    }
    j["settings"] = settings;
  }
  return j;
}

inline nlohmann::ordered_json to_json(const MonteCarloResult &result)
{
  return {{"estimate", round_decimal(result.estimate)},
          {"standard_error", round_decimal(result.standard_error)},
          {"samples", result.samples},
          {"seed", result.seed}};
}

}  // namespace kthprice
