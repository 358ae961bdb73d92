#include <algorithm>
#include <limits>

#include "wcomp/errors.hpp"
#include "wcomp/search.hpp"

namespace wcomp {

namespace {

// All t-subsets of {1..l} in lexicographic order.
std::vector<std::vector<std::size_t>> t_subsets(std::size_t l, std::size_t t) {
  std::vector<std::vector<std::size_t>> out;
  if (t > l) return out;
  std::vector<std::size_t> cur(t);
  for (std::size_t i = 0; i < t; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    std::size_t i = t;
    while (i > 0 && cur[i - 1] == l - t + i) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < t; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace

ExtremalReport verify_extremal(const SearchResult& result, std::size_t t) {
  if (!result.optimal) throw InvalidArgument("verify_extremal needs an optimal search result");
  if (!result.all_maximizers) throw InvalidArgument("verify_extremal needs the full set of maximizers");
  ExtremalReport report;
  const auto& maximizers = *result.all_maximizers;
  if (maximizers.empty()) return report;

  std::size_t l = std::numeric_limits<std::size_t>::max();
  for (const Family& f : maximizers.front()) l = std::min(l, f.space().l());
  const auto candidates = t_subsets(l, t);

  bool all_stars = true;
  for (const std::vector<Family>& system : maximizers) {
    const bool has_empty = std::any_of(system.begin(), system.end(), [](const Family& f) { return f.empty(); });
    std::optional<std::vector<std::size_t>> match;
    if (!has_empty) {
      for (const auto& T : candidates) {
        const bool is_star_system = std::all_of(system.begin(), system.end(), [&](const Family& f) {
          return f == make_star(f.space(), StarSpec{T});
        });
        if (is_star_system) {
          match = T;
          break;
        }
      }
    }
    if (match)
      report.stars_observed.push_back(*match);
    else
      all_stars = false;
  }
  report.is_star = all_stars;
  std::vector<std::vector<std::size_t>> seen = report.stars_observed;
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  report.unique = all_stars && seen == candidates && maximizers.size() == candidates.size();
  return report;
}

}  // namespace wcomp
