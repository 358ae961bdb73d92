#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "wcomp/bounds.hpp"
#include "wcomp/family.hpp"
#include "wcomp/search.hpp"

namespace wcomp::io {

using Json = nlohmann::json;

Json composition_to_json(const Composition& u);

/// {"n": int, "l": int, "members": [[int, ...], ...]}
Json family_to_json(const Family& family);
/// Validates every member against n and l; InvalidArgument names the first
/// offending member by position.
Family family_from_json(const Json& j);

/// {"t": int, "families": [family, ...]}
Json system_to_json(const FamilySystem& system);
FamilySystem system_from_json(const Json& j);

/// {"product": "decimal", "optimal": bool, "nodes": int, "witnesses": [...],
///  "all_maximizers": [[family, ...], ...]} (last key only when collected)
Json search_result_to_json(const SearchResult& result);
SearchResult search_result_from_json(const Json& j);

Json bound_report_to_json(const BoundReport& report);

Json scan_row_to_json(const ScanRow& row);
ScanRow scan_row_from_json(const Json& j);

inline constexpr const char* kScanCsvHeader = "n,max_product,star_bound,equals_star,unique_star,T_observed";
/// Header line, then one line per row. Rows without proven optimality print
/// "unknown" in the two flag columns.
void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);

/// Reads a whole JSON file; InvalidArgument on I/O or parse failure.
Json read_json_file(const std::string& path);

}  // namespace wcomp::io
