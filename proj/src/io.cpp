#include "wcomp/io.hpp"

#include <fstream>
#include <limits>
#include <ostream>

#include "wcomp/errors.hpp"

namespace wcomp::io {

namespace {

std::uint64_t require_uint(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(where + ": missing \"" + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw InvalidArgument(where + ": \"" + key + "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

}  // namespace

Json composition_to_json(const Composition& u) {
  Json arr = Json::array();
  for (Part p : u.parts()) arr.push_back(p);
  return arr;
}

Json family_to_json(const Family& family) {
  Json members = Json::array();
  for (const Composition& u : family.members()) members.push_back(composition_to_json(u));
  return Json{{"n", family.space().n()}, {"l", family.space().l()}, {"members", std::move(members)}};
}

Family family_from_json(const Json& j) {
  const std::uint64_t n = require_uint(j, "n", "family");
  const std::uint64_t l = require_uint(j, "l", "family");
  if (n > std::numeric_limits<Part>::max()) throw InvalidArgument("family: n too large");
  const CompositionSpace space(static_cast<Part>(n), static_cast<std::size_t>(l));
  if (!j.contains("members") || !j.at("members").is_array()) throw InvalidArgument("family: \"members\" must be an array");
  Family family(space);
  std::size_t index = 0;
  for (const Json& m : j.at("members")) {
    const std::string where = "family member #" + std::to_string(index) + " " + m.dump();
    if (!m.is_array()) throw InvalidArgument(where + ": not an array");
    std::vector<Part> parts;
    for (const Json& p : m) {
      if (!p.is_number_integer() || p.get<std::int64_t>() < 0 || p.get<std::int64_t>() > std::numeric_limits<Part>::max())
        throw InvalidArgument(where + ": parts must be non-negative integers");
      parts.push_back(p.get<Part>());
    }
    const Composition u(std::move(parts));
    if (u.length() != l) throw InvalidArgument(where + ": has " + std::to_string(u.length()) + " parts, expected " + std::to_string(l));
    if (u.sum() != n) throw InvalidArgument(where + ": sums to " + std::to_string(u.sum()) + ", expected " + std::to_string(n));
    family.insert(u);
    ++index;
  }
  return family;
}

Json system_to_json(const FamilySystem& system) {
  Json fams = Json::array();
  for (const Family& f : system.families()) fams.push_back(family_to_json(f));
  return Json{{"t", system.t()}, {"families", std::move(fams)}};
}

FamilySystem system_from_json(const Json& j) {
  const std::uint64_t t = require_uint(j, "t", "system");
  if (!j.contains("families") || !j.at("families").is_array()) throw InvalidArgument("system: \"families\" must be an array");
  std::vector<Family> fams;
  std::size_t index = 0;
  for (const Json& f : j.at("families")) {
    try {
      fams.push_back(family_from_json(f));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("system family #" + std::to_string(index) + ": " + e.what());
    }
    ++index;
  }
  return FamilySystem(std::move(fams), static_cast<std::size_t>(t));
}

Json search_result_to_json(const SearchResult& result) {
  Json witnesses = Json::array();
  for (const Family& f : result.witnesses) witnesses.push_back(family_to_json(f));
  Json out{{"product", to_decimal(result.product)},
           {"optimal", result.optimal},
           {"nodes", result.nodes},
           {"witnesses", std::move(witnesses)}};
  if (result.all_maximizers) {
    Json all = Json::array();
    for (const auto& system : *result.all_maximizers) {
      Json s = Json::array();
      for (const Family& f : system) s.push_back(family_to_json(f));
      all.push_back(std::move(s));
    }
    out["all_maximizers"] = std::move(all);
  }
  return out;
}

SearchResult search_result_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("product") || !j.at("product").is_string())
    throw InvalidArgument("search result: \"product\" must be a decimal string");
  SearchResult r;
  try {
    r.product = from_decimal(j.at("product").get<std::string>());
  } catch (const std::exception&) {
    throw InvalidArgument("search result: malformed product");
  }
  if (!j.contains("optimal") || !j.at("optimal").is_boolean()) throw InvalidArgument("search result: missing \"optimal\"");
  r.optimal = j.at("optimal").get<bool>();
  r.nodes = require_uint(j, "nodes", "search result");
  if (!j.contains("witnesses") || !j.at("witnesses").is_array()) throw InvalidArgument("search result: missing witnesses");
  for (const Json& f : j.at("witnesses")) r.witnesses.push_back(family_from_json(f));
  if (j.contains("all_maximizers")) {
    std::vector<std::vector<Family>> all;
    for (const Json& s : j.at("all_maximizers")) {
      std::vector<Family> system;
      for (const Json& f : s) system.push_back(family_from_json(f));
      all.push_back(std::move(system));
    }
    r.all_maximizers = std::move(all);
  }
  return r;
}

Json bound_report_to_json(const BoundReport& report) {
  Json cases = Json::object();
  for (const auto& [label, value] : report.per_case_thresholds) cases[label] = to_decimal(value);
  Json out{{"per_case_thresholds", std::move(cases)}, {"sufficient_n0", to_decimal(report.sufficient_n0)}};
  if (report.rhs) out["rhs"] = to_decimal(*report.rhs);
  return out;
}

Json scan_row_to_json(const ScanRow& row) {
  Json stars = Json::array();
  for (const auto& T : row.stars_observed) stars.push_back(T);
  return Json{{"n", row.n},
              {"max_product", to_decimal(row.max_product)},
              {"star_bound", to_decimal(row.star_bound)},
              {"equals_star", row.equals_star},
              {"unique_star", row.unique_star},
              {"T_observed", std::move(stars)},
              {"optimal", row.optimal},
              {"nodes", row.nodes}};
}

ScanRow scan_row_from_json(const Json& j) {
  ScanRow row;
  try {
    row.n = j.at("n").get<std::uint64_t>();
    row.max_product = from_decimal(j.at("max_product").get<std::string>());
    row.star_bound = from_decimal(j.at("star_bound").get<std::string>());
    row.equals_star = j.at("equals_star").get<bool>();
    row.unique_star = j.at("unique_star").get<bool>();
    row.stars_observed = j.at("T_observed").get<std::vector<std::vector<std::size_t>>>();
    row.optimal = j.at("optimal").get<bool>();
    row.nodes = j.at("nodes").get<std::uint64_t>();
  } catch (const std::exception& e) {
    throw InvalidArgument(std::string("scan row: ") + e.what());
  }
  return row;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << kScanCsvHeader << '\n';
  for (const ScanRow& row : rows) {
    out << row.n << ',' << to_decimal(row.max_product) << ',' << to_decimal(row.star_bound) << ',';
    if (row.optimal)
      out << (row.equals_star ? "true" : "false") << ',' << (row.unique_star ? "true" : "false");
    else
      out << "unknown,unknown";
    out << ',' << format_star_sets(row.stars_observed) << '\n';
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

}  // namespace wcomp::io
