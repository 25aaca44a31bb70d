#include <sstream>

#include <json.hpp>

#include "ptl/checker.hpp"

namespace ptl {

namespace {

using nlohmann::json;

std::string with_decimal(const Rational& r, bool decimal) {
  std::string out = to_string(r);
  if (decimal && r.convert_to<Integer>() != r) out += "  -- approx " + to_decimal_string(r);
  return out;
}

Rational rational_field(const json& j) {
  Rational r;
  if (!j.is_string() || !parse_rational(j.get<std::string>(), r))
    throw ParseError({}, "report: expected a rational string, found " + j.dump());
  return r;
}

}  // namespace

std::string format_report(const CheckReport& r, bool decimal) {
  std::ostringstream out;
  out << to_string(r.verdict) << ": " << r.summary << "\n";
  if (r.witness) {
    out << "  witness: state " << r.witness->state;
    if (!r.witness->model.empty()) out << " of model " << r.witness->model;
    out << "\n";
    for (const auto& step : r.witness->trail) out << "    " << step << "\n";
  }
  if (r.numeric) out << "  numeric: " << with_decimal(*r.numeric, decimal) << "\n";
  for (const auto& v : r.values) out << "  value: " << v.name << " = " << with_decimal(v.value, decimal) << "\n";
  for (const auto& w : r.warnings) out << "  warning: " << w << "\n";
  return out.str();
}

std::string report_to_json(const CheckReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["summary"] = r.summary;
  if (r.witness) {
    j["witness"] = {{"model", r.witness->model}, {"state", r.witness->state}, {"trail", r.witness->trail}};
  } else {
    j["witness"] = nullptr;
  }
  j["numeric"] = r.numeric ? json(to_fraction_string(*r.numeric)) : json(nullptr);
  j["warnings"] = r.warnings;
  j["values"] = json::array();
  for (const auto& v : r.values) j["values"].push_back({{"name", v.name}, {"value", to_fraction_string(v.value)}});
  return j.dump(2);
}

CheckReport report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError({}, std::string("report: ") + e.what());
  }
  CheckReport r;
  try {
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict == "satisfied")
      r.verdict = Verdict::Satisfied;
    else if (verdict == "violated")
      r.verdict = Verdict::Violated;
    else if (verdict == "error")
      r.verdict = Verdict::Error;
    else
      throw ParseError({}, "report: unknown verdict '" + verdict + "'");
    r.summary = j.value("summary", "");
    if (j.contains("witness") && !j["witness"].is_null()) {
      const auto& w = j["witness"];
      r.witness = Witness{w.at("model").get<std::string>(), w.at("state").get<std::string>(),
                          w.value("trail", std::vector<std::string>{})};
    }
    if (j.contains("numeric") && !j["numeric"].is_null()) r.numeric = rational_field(j["numeric"]);
    r.warnings = j.value("warnings", std::vector<std::string>{});
    if (j.contains("values"))
      for (const auto& v : j["values"]) r.values.push_back({v.at("name").get<std::string>(), rational_field(v.at("value"))});
  } catch (const json::exception& e) {
    throw ParseError({}, std::string("report: ") + e.what());
  }
  return r;
}

}  // namespace ptl
