#include <limits>

#include "wcomp/bounds.hpp"
#include "wcomp/errors.hpp"
#include "wcomp/search.hpp"

namespace wcomp {

ScanRow scan_row(std::size_t l1, std::size_t l2, std::size_t t, std::uint64_t n, std::uint64_t budget,
                 unsigned workers) {
  if (n > std::numeric_limits<Part>::max()) throw InvalidArgument("scan: n too large");
  SearchProblem problem;
  problem.spaces = {CompositionSpace(static_cast<Part>(n), l1), CompositionSpace(static_cast<Part>(n), l2)};
  problem.t = t;
  problem.node_budget = budget;
  problem.all_maximizers = true;
  problem.workers = workers;
  const SearchResult result = max_product_r2(problem);

  ScanRow row;
  row.n = n;
  row.max_product = result.product;
  row.star_bound = theorem_rhs({{n, l1}, {n, l2}}, t);
  row.optimal = result.optimal;
  row.nodes = result.nodes;
  if (row.optimal) {
    const ExtremalReport report = verify_extremal(result, t);
    row.equals_star = row.max_product == row.star_bound;
    row.unique_star = row.equals_star && report.unique;
    row.stars_observed = report.stars_observed;
  }
  return row;
}

std::vector<ScanRow> scan_threshold(std::size_t l1, std::size_t l2, std::size_t t, std::uint64_t n_min,
                                    std::uint64_t n_max, std::uint64_t budget, unsigned workers) {
  if (std::min(l1, l2) < t + 2) throw InvalidArgument("scan needs min(l1,l2) >= t + 2");
  std::vector<ScanRow> rows;
  for (std::uint64_t n = n_min; n <= n_max; ++n) rows.push_back(scan_row(l1, l2, t, n, budget, workers));
  return rows;
}

std::optional<std::uint64_t> empirical_threshold(const std::vector<ScanRow>& rows) {
  for (const ScanRow& row : rows)
    if (row.optimal && row.equals_star && row.unique_star) return row.n;
  return std::nullopt;
}

}  // namespace wcomp
