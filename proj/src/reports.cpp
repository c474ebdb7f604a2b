#include "cnr/reports.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace cnr {

using nlohmann::json;

namespace {

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json parse_or_throw(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
}

void require_keys(const json& j, std::set<std::string> keys, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + ": expected an object");
  std::set<std::string> present;
  for (const auto& item : j.items()) present.insert(item.key());
  if (present != keys) throw ParseError(std::string(what) + ": unexpected key set");
}

bool is_pair(const json& j) { return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(); }

bool all_numbers(const json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_number(); });
}

}  // namespace

std::string to_json(const StarReport& r) {
  json j;
  j["holds"] = r.holds;
  j["worst_point"] = complex_json(r.worst_point);
  j["worst_t"] = r.worst_t;
  j["worst_gap"] = r.worst_gap;
  return j.dump(2);
}

std::string to_json(const LadderLimitReport& r) {
  json j;
  j["pairwise"] = r.pairwise;
  j["cauchy_tail"] = r.cauchy_tail;
  return j.dump(2);
}

std::string to_json(const ConvergenceReport& r, const std::vector<std::string>& cloud_files) {
  json j;
  j["sizes"] = r.sizes;
  j["pairwise_hausdorff"] = r.pairwise_hausdorff;
  j["star_centers"] = json::array();
  for (auto z : r.star_centers) j["star_centers"].push_back(complex_json(z));
  j["center_decay"] = r.center_decay;
  j["cauchy_tail"] = r.cauchy_tail;
  j["cloud_files"] = cloud_files;
  return j.dump(2);
}

void validate_star_report_json(const std::string& text) {
  const json j = parse_or_throw(text);
  require_keys(j, {"holds", "worst_point", "worst_t", "worst_gap"}, "star report");
  if (!j["holds"].is_boolean() || !is_pair(j["worst_point"]) || !j["worst_t"].is_number() ||
      !j["worst_gap"].is_number())
    throw ParseError("star report: field types");
}

void validate_ladder_report_json(const std::string& text) {
  const json j = parse_or_throw(text);
  require_keys(j, {"pairwise", "cauchy_tail"}, "ladder report");
  if (!all_numbers(j["pairwise"]) || !j["cauchy_tail"].is_number()) throw ParseError("ladder report: field types");
}

void validate_convergence_report_json(const std::string& text) {
  const json j = parse_or_throw(text);
  require_keys(j, {"sizes", "pairwise_hausdorff", "star_centers", "center_decay", "cauchy_tail", "cloud_files"},
               "convergence report");
  const auto rungs = j["sizes"].size();
  if (!all_numbers(j["sizes"]) || !all_numbers(j["pairwise_hausdorff"]) || !j["center_decay"].is_number() ||
      !j["cauchy_tail"].is_number() || !j["star_centers"].is_array() || !j["cloud_files"].is_array())
    throw ParseError("convergence report: field types");
  if (j["pairwise_hausdorff"].size() + 1 != rungs || j["star_centers"].size() != rungs ||
      (!j["cloud_files"].empty() && j["cloud_files"].size() != rungs))
    throw ParseError("convergence report: lengths inconsistent with sizes");
  for (const auto& z : j["star_centers"])
    if (!is_pair(z)) throw ParseError("convergence report: star_centers entries must be [re, im]");
}

}  // namespace cnr
