#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wcomp/bigint.hpp"
#include "wcomp/bitset.hpp"
#include "wcomp/composition.hpp"
#include "wcomp/family.hpp"

namespace wcomp {

/// Input to the maximum-product searches: r spaces and the threshold t.
struct SearchProblem {
  std::vector<CompositionSpace> spaces;
  std::size_t t = 1;
  /// Node cap per top-level branch; see max_product_r2.
  std::uint64_t node_budget = 50'000'000;
  /// Cardinality caps per space for the exhaustive oracle and for exact r >= 3
  /// search. Empty means default_micro_limits(r).
  std::vector<Rank> micro_limits;
  /// Collect every maximizer, not just the canonical witness.
  bool all_maximizers = false;
  /// Worker threads for max_product_r2. Results do not depend on this.
  unsigned workers = 1;

  std::size_t r() const noexcept { return spaces.size(); }
  /// Minimum part count over the spaces.
  std::size_t l() const noexcept;
  std::vector<Rank> limits() const;
};

/// {20, unbounded} for r = 2; 12 for each of the first r - 1 spaces otherwise.
std::vector<Rank> default_micro_limits(std::size_t r);

struct SearchResult {
  BigInt product = 0;
  std::vector<Family> witnesses;
  bool optimal = false;
  std::uint64_t nodes = 0;
  std::optional<std::vector<std::vector<Family>>> all_maximizers;
};

/// The compatibility relation |I(u, v)| >= t between two spaces, with the two
/// polar maps of the Galois connection it induces.
class PolarPair {
 public:
  PolarPair(const CompositionSpace& first, const CompositionSpace& second, std::size_t t);

  const CompositionSpace& first() const noexcept { return first_; }
  const CompositionSpace& second() const noexcept { return second_; }
  std::size_t t() const noexcept { return t_; }

  /// Row of u (rank in the first space): its compatible partners in the second.
  const DynamicBitset& partners_of_first(Rank u) const noexcept { return rows_first_[u]; }
  const DynamicBitset& partners_of_second(Rank v) const noexcept { return rows_second_[v]; }

  /// comp_2(S) = { v : |I(u,v)| >= t for all u in S }, S a subset of the first space.
  DynamicBitset polar_of_first(const DynamicBitset& s) const;
  /// comp_1(S) for S a subset of the second space.
  DynamicBitset polar_of_second(const DynamicBitset& s) const;

 private:
  CompositionSpace first_;
  CompositionSpace second_;
  std::size_t t_;
  std::vector<DynamicBitset> rows_first_;
  std::vector<DynamicBitset> rows_second_;
};

/// { v in spaces[target] : every tuple completing v with one chosen member from
/// each other family has |I| >= t }. `chosen[target]` is ignored; if any other
/// list is empty the condition is vacuous and the whole space is returned.
Family compat_set(const std::vector<CompositionSpace>& spaces, std::size_t target,
                  const std::vector<std::vector<Composition>>& chosen, std::size_t t);

/// (comp_2(S), comp_1(comp_2(S))) for S in the first space of a two-space problem.
std::pair<Family, Family> closure_r2(const SearchProblem& problem, const Family& s);

/// Exact max |A_1||A_2| over 2-cross t-intersecting pairs, by enumerating
/// closed pairs (concepts) Close-by-One style with an admissible product bound.
/// The budget caps nodes in each top-level branch; optimal = false if any
/// branch ran out.
SearchResult max_product_r2(const SearchProblem& problem);

/// Exact max of prod |A_j| for any r >= 2 by branch-and-bound over inclusion
/// decisions with compatibility propagation; the last family is completed
/// maximally. Spaces beyond the micro limits make the result non-optimal.
SearchResult max_product_general(const SearchProblem& problem);

/// Exhaustive ground truth: every subset of the first r - 1 spaces, the last
/// family completed by its compatible set. Throws InvalidArgument when a space
/// exceeds its micro limit.
SearchResult brute_oracle(const SearchProblem& problem);

struct ExtremalReport {
  bool is_star = false;
  /// The common star set T of each maximizer that is a star system, in order.
  std::vector<std::vector<std::size_t>> stars_observed;
  /// Every maximizer is a star system and every t-set of [l] occurs.
  bool unique = false;
};

/// Classifies the maximizers of an optimal result with all_maximizers filled.
/// Throws InvalidArgument otherwise.
ExtremalReport verify_extremal(const SearchResult& result, std::size_t t);

/// Product of the family sizes.
BigInt product_of(const std::vector<Family>& families);

}  // namespace wcomp
