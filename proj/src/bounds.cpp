#include "wcomp/bounds.hpp"

#include <algorithm>

#include "wcomp/errors.hpp"

namespace wcomp {

using boost::multiprecision::pow;

BigInt binomial(std::uint64_t a, std::int64_t b) {
  if (b < 0 || static_cast<std::uint64_t>(b) > a) return 0;
  std::uint64_t k = static_cast<std::uint64_t>(b);
  k = std::min(k, a - k);
  BigInt acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc *= a - k + i;
    acc /= i;
  }
  return acc;
}

BigInt theorem_rhs(const std::vector<SpaceShape>& spaces, std::size_t t) {
  BigInt p = 1;
  for (const SpaceShape& s : spaces) {
    const std::int64_t lower = static_cast<std::int64_t>(s.l) - static_cast<std::int64_t>(t) - 1;
    const std::int64_t upper = static_cast<std::int64_t>(s.n) + lower;
    if (upper < 0) return 0;
    p *= binomial(static_cast<std::uint64_t>(upper), lower);
  }
  return p;
}

BoundReport sufficient_n0(const std::vector<std::uint64_t>& ls, std::size_t t) {
  if (ls.empty()) throw InvalidArgument("need at least one part count");
  const std::uint64_t l = *std::min_element(ls.begin(), ls.end());
  if (l < t + 2) throw InvalidArgument("thresholds need l = min(l_j) >= t + 2");

  BoundReport report;
  const BigInt choose = binomial(l, static_cast<std::int64_t>(t));
  for (std::size_t j = 0; j < ls.size(); ++j) {
    const std::uint64_t slack = ls[j] - t - 1;  // >= 1
    const BigInt case1 = pow(BigInt(slack) * choose * choose, 2);
    if (slack > 20) throw InvalidArgument("part count too large for an explicit threshold");
    const unsigned exponent = 1U << static_cast<unsigned>(slack);
    const BigInt case3 = pow(BigInt(2 * (l - t)), exponent) + 1;
    const std::string idx = std::to_string(j + 1);
    report.per_case_thresholds.emplace("case1_" + idx, case1);
    report.per_case_thresholds.emplace("case3_" + idx, case3);
    report.sufficient_n0 = std::max({report.sufficient_n0, case1, case3});
  }
  return report;
}

BoundReport bound_report(const std::vector<SpaceShape>& spaces, std::size_t t) {
  std::vector<std::uint64_t> ls;
  for (const SpaceShape& s : spaces) ls.push_back(s.l);
  BoundReport report = sufficient_n0(ls, t);
  report.rhs = theorem_rhs(spaces, t);
  return report;
}

bool pairwise_combination_holds(const BigInt& general_product,
                                const std::map<std::pair<std::size_t, std::size_t>, BigInt>& pairwise_maxima,
                                std::size_t r) {
  if (r < 2) throw InvalidArgument("pairwise combination needs r >= 2");
  BigInt rhs = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      const auto it = pairwise_maxima.find({i, j});
      if (it == pairwise_maxima.end()) return false;
      rhs *= it->second;
    }
  return pow(general_product, static_cast<unsigned>(r - 1)) <= rhs;
}

std::string format_star_sets(const std::vector<std::vector<std::size_t>>& sets) {
  std::string out;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    if (k != 0) out += ';';
    out += '{';
    for (std::size_t i = 0; i < sets[k].size(); ++i) {
      if (i != 0) out += ',';
      out += std::to_string(sets[k][i]);
    }
    out += '}';
  }
  return out;
}

}  // namespace wcomp
