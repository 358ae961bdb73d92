#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wcomp/bigint.hpp"
#include "wcomp/bitset.hpp"
#include "wcomp/composition.hpp"

namespace wcomp {

/// A subfamily of one composition space, stored as a membership mask over ranks.
class Family {
 public:
  /// Largest space a family may be materialised over.
  static constexpr Rank kMaxDenseSize = Rank{1} << 28;

  explicit Family(CompositionSpace space);
  Family(CompositionSpace space, DynamicBitset members);

  static Family full(CompositionSpace space);
  /// Throws InvalidArgument naming the first member that is not in `space`.
  static Family from_members(CompositionSpace space, std::span<const Composition> members);

  const CompositionSpace& space() const noexcept { return space_; }
  const DynamicBitset& bits() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.count(); }
  bool empty() const noexcept { return members_.none(); }

  bool contains(const Composition& u) const { return space_.contains(u) && members_.test(space_.rank(u)); }
  bool contains_rank(Rank k) const noexcept { return k < space_.size() && members_.test(k); }

  void insert(const Composition& u) { members_.set(space_.rank(u)); }
  void insert_rank(Rank k) noexcept { members_.set(k); }

  std::vector<Rank> ranks() const;
  std::vector<Composition> members() const;

  bool is_subset_of(const Family& other) const noexcept {
    return space_ == other.space_ && members_.is_subset_of(other.members_);
  }

  friend bool operator==(const Family& a, const Family& b) noexcept {
    return a.space_ == b.space_ && a.members_ == b.members_;
  }

 private:
  CompositionSpace space_;
  DynamicBitset members_;
};

/// r families, possibly over different spaces, together with the threshold t.
class FamilySystem {
 public:
  /// Throws InvalidArgument unless r >= 2 and t >= 1.
  FamilySystem(std::vector<Family> families, std::size_t t);

  const std::vector<Family>& families() const noexcept { return families_; }
  std::size_t r() const noexcept { return families_.size(); }
  std::size_t t() const noexcept { return t_; }
  /// Minimum part count over the spaces; agreement is measured on [l].
  std::size_t l() const noexcept { return l_; }
  /// l >= t + 2, where star systems are the extremal systems for large n.
  bool in_theorem_regime() const noexcept { return l_ >= t_ + 2; }

 private:
  std::vector<Family> families_;
  std::size_t t_;
  std::size_t l_;
};

/// The coordinate set T of a star family (1-based).
struct StarSpec {
  std::vector<std::size_t> coords;
};

/// Every u in the space with u(i) = 0 for all i in T.
Family make_star(const CompositionSpace& space, const StarSpec& spec);

struct CrossCheck {
  bool holds = true;
  // Lexicographically least violating tuple, by ranks; empty when holds.
  std::vector<Rank> witness_ranks;
  std::vector<Composition> witness;
};

/// Checks |I(u_1,...,u_r)| >= t over [l] for every tuple of members.
CrossCheck is_cross_t_intersecting(const FamilySystem& system);

/// A(xs; ys): members with u(xs[i]) = ys[i] for every i. Same space.
Family slice(const Family& family, std::span<const std::size_t> xs, std::span<const Part> ys);

/// A*(xs; ys): the slice with coordinates xs removed, a family over
/// P(n - sum(ys), l - |xs|).
Family project(const Family& family, std::span<const std::size_t> xs, std::span<const Part> ys);

/// No two distinct members agree on any coordinate.
bool is_independent(const Family& family);

/// Takes the lowest-rank remaining member and discards everything it conflicts
/// with, until nothing is left.
Family greedy_independent(const Family& family);

struct IndependentResult {
  Family family;
  bool optimal = false;
  std::uint64_t nodes = 0;
};

/// Largest independent subfamily by branch-and-bound over the conflict graph.
/// Among maxima the lexicographically least rank sequence is returned. When
/// `node_budget` runs out the best subfamily found so far comes back with
/// optimal = false.
IndependentResult max_independent(const Family& family, std::uint64_t node_budget = 10'000'000);

/// Parameters of the independent-subfamily guarantee. `parts` is the number of
/// parts of the compositions (the ambient space is P(m, parts)).
struct GuaranteeParams {
  std::uint64_t m = 1;
  std::uint64_t n = 1;
  std::uint64_t q = 1;
  std::uint64_t parts = 2;
  std::uint64_t s = 2;
};

/// n >= (2s)^(2^(parts-2) q) + 1 and |A|^q >= n * C(n+parts-2, parts-2)^q,
/// evaluated in exact integers. Throws InvalidArgument on malformed params.
bool guarantee_applies(const GuaranteeParams& p, const BigInt& family_size);

enum class DichotomyVerdict { HypothesisFails, BranchA, BranchB, Both };

std::string to_string(DichotomyVerdict v);

struct DichotomyResult {
  DichotomyVerdict verdict = DichotomyVerdict::HypothesisFails;
  // Exact maximum independent subfamily size of A*(xs; ys).
  std::size_t independent_size = 0;
  // A member u with |I(v, u)| <= t - 1, when branch (a) holds.
  std::optional<Composition> branch_a_witness;
};

/// Decides, for A over P(n1,l1) and v of length l2 with l = min(l1,l2) >= t+2:
/// if A*(xs; ys) has an independent set of size l - t + 1, then either some
/// u in A has |I(v,u)| <= t - 1 (branch a) or v(xs[i]) = ys[i] for all i
/// (branch b). Throws std::logic_error if neither holds.
DichotomyResult dichotomy_check(const Family& a, const Composition& v, std::span<const std::size_t> xs,
                                std::span<const Part> ys, std::size_t t);

}  // namespace wcomp
