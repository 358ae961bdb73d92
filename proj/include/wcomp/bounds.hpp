#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wcomp/bigint.hpp"

namespace wcomp {

/// C(a, b), exact; zero when b < 0 or b > a.
BigInt binomial(std::uint64_t a, std::int64_t b);

struct SpaceShape {
  std::uint64_t n = 0;
  std::uint64_t l = 1;
};

/// prod_j C(n_j + l_j - t - 1, l_j - t - 1): the product of the star sizes,
/// and the extremal product bound for large n.
BigInt theorem_rhs(const std::vector<SpaceShape>& spaces, std::size_t t);

struct BoundReport {
  std::optional<BigInt> rhs;
  /// "case1_j" = ((l_j - t - 1) C(l,t)^2)^2 and "case3_j" = (2(l-t))^(2^(l_j-t-1)) + 1,
  /// j 1-based.
  std::map<std::string, BigInt> per_case_thresholds;
  /// Max over per_case_thresholds: an n_0 beyond which stars are the unique
  /// maximizers. Sufficient, far from tight.
  BigInt sufficient_n0 = 0;
};

/// Thresholds for part counts ls with l = min(ls) >= t + 2; InvalidArgument otherwise.
BoundReport sufficient_n0(const std::vector<std::uint64_t>& ls, std::size_t t);

/// sufficient_n0 plus theorem_rhs for the given spaces.
BoundReport bound_report(const std::vector<SpaceShape>& spaces, std::size_t t);

/// general^(r-1) <= prod_{i<j} pairwise[{i,j}], in exact integers. Keys are
/// 0-based index pairs with i < j; a missing pair makes the check fail.
bool pairwise_combination_holds(const BigInt& general_product,
                                const std::map<std::pair<std::size_t, std::size_t>, BigInt>& pairwise_maxima,
                                std::size_t r);

struct ScanRow {
  std::uint64_t n = 0;
  BigInt max_product = 0;
  BigInt star_bound = 0;
  bool equals_star = false;
  bool unique_star = false;
  std::vector<std::vector<std::size_t>> stars_observed;
  bool optimal = false;
  std::uint64_t nodes = 0;
};

/// One scan row: the exact maximum over P(n,l1) x P(n,l2) with every maximizer.
ScanRow scan_row(std::size_t l1, std::size_t l2, std::size_t t, std::uint64_t n, std::uint64_t budget,
                 unsigned workers = 1);

/// Rows for n_min..n_max in ascending n. Requires min(l1,l2) >= t + 2.
std::vector<ScanRow> scan_threshold(std::size_t l1, std::size_t l2, std::size_t t, std::uint64_t n_min,
                                    std::uint64_t n_max, std::uint64_t budget, unsigned workers = 1);

/// Least n among optimal rows where the stars are the unique maximizers.
std::optional<std::uint64_t> empirical_threshold(const std::vector<ScanRow>& rows);

/// "{1};{2};{3}"
std::string format_star_sets(const std::vector<std::vector<std::size_t>>& sets);

}  // namespace wcomp
