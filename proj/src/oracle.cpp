#include <algorithm>

#include "wcomp/errors.hpp"
#include "wcomp/search.hpp"

namespace wcomp {

namespace {

// Exhaustive maximisation. Shares nothing with the branch-and-bound searches
// beyond the composition types: agreement is recomputed here from the parts.
class Exhaustive {
 public:
  explicit Exhaustive(const SearchProblem& problem)
      : problem_(problem), r_(problem.r()), l_(problem.l()), t_(problem.t) {
    for (const CompositionSpace& s : problem.spaces) elements_.push_back(s.elements());
    chosen_.resize(r_);
  }

  void run() {
    // Before any family is fixed, every tuple prefix is the empty one, which
    // constrains nothing.
    std::vector<Profile> start{Profile(l_, kWildcard)};
    enter_family(0, start);
  }

  SearchResult result() const {
    SearchResult out;
    out.optimal = true;
    out.nodes = visited_;
    if (best_systems_.empty()) {
      out.product = 0;
      for (const CompositionSpace& s : problem_.spaces) out.witnesses.emplace_back(s);
      if (problem_.all_maximizers) out.all_maximizers = std::vector<std::vector<Family>>{out.witnesses};
      return out;
    }
    out.product = best_;
    out.witnesses = best_systems_.front();
    if (problem_.all_maximizers) out.all_maximizers = best_systems_;
    return out;
  }

 private:
  static constexpr std::int64_t kWildcard = -2;
  static constexpr std::int64_t kBroken = -1;
  using Profile = std::vector<std::int64_t>;

  Profile extend(const Profile& p, const Composition& x) const {
    Profile q = p;
    for (std::size_t i = 0; i < l_; ++i) {
      if (q[i] == kWildcard)
        q[i] = x[i];
      else if (q[i] != static_cast<std::int64_t>(x[i]))
        q[i] = kBroken;
    }
    return q;
  }

  DynamicBitset last_compatible(const Profile& p) const {
    const auto& last = elements_[r_ - 1];
    DynamicBitset out(last.size());
    for (std::size_t w = 0; w < last.size(); ++w) {
      std::size_t agree = 0;
      for (std::size_t i = 0; i < l_; ++i)
        if (p[i] == kWildcard || p[i] == static_cast<std::int64_t>(last[w][i])) ++agree;
      if (agree >= t_) out.set(w);
    }
    return out;
  }

  void enter_family(std::size_t f, const std::vector<Profile>& prefixes) {
    if (f == r_ - 1) return;
    const auto& elems = elements_[f];
    if (f == r_ - 2) {
      // Masks of last-family members compatible with every tuple ending in x.
      std::vector<DynamicBitset> mask;
      for (const Composition& x : elems) {
        DynamicBitset m(elements_[r_ - 1].size(), true);
        for (const Profile& p : prefixes) m &= last_compatible(extend(p, x));
        mask.push_back(std::move(m));
      }
      DynamicBitset all(elements_[r_ - 1].size(), true);
      subsets_last(0, mask, all);
    } else {
      subsets_inner(f, 0, prefixes);
    }
  }

  // Subsets of an inner family f < r - 2; on completion, descend with the
  // extended prefix set.
  void subsets_inner(std::size_t f, std::size_t idx, const std::vector<Profile>& prefixes) {
    const auto& elems = elements_[f];
    if (idx == elems.size()) {
      ++visited_;
      if (chosen_[f].empty()) return;  // product 0
      std::vector<Profile> next;
      for (const Profile& p : prefixes)
        for (std::size_t k : chosen_[f]) next.push_back(extend(p, elems[k]));
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      enter_family(f + 1, next);
      return;
    }
    chosen_[f].push_back(idx);
    subsets_inner(f, idx + 1, prefixes);
    chosen_[f].pop_back();
    subsets_inner(f, idx + 1, prefixes);
  }

  void subsets_last(std::size_t idx, const std::vector<DynamicBitset>& mask, const DynamicBitset& completion) {
    const std::size_t f = r_ - 2;
    if (idx == mask.size()) {
      ++visited_;
      consider(completion);
      return;
    }
    chosen_[f].push_back(idx);
    subsets_last(idx + 1, mask, completion & mask[idx]);
    chosen_[f].pop_back();
    subsets_last(idx + 1, mask, completion);
  }

  void consider(const DynamicBitset& completion) {
    std::uint64_t p = completion.count();
    for (std::size_t j = 0; j + 1 < r_; ++j) p *= chosen_[j].size();
    if (p == 0 || p < best_) return;
    if (p == best_ && !problem_.all_maximizers) return;
    if (p > best_) {
      best_ = p;
      best_systems_.clear();
    }
    std::vector<Family> system;
    for (std::size_t j = 0; j + 1 < r_; ++j) {
      Family fam(problem_.spaces[j]);
      for (std::size_t k : chosen_[j]) fam.insert_rank(k);
      system.push_back(std::move(fam));
    }
    system.emplace_back(problem_.spaces[r_ - 1], completion);
    best_systems_.push_back(std::move(system));
  }

  const SearchProblem& problem_;
  std::size_t r_;
  std::size_t l_;
  std::size_t t_;
  std::vector<std::vector<Composition>> elements_;
  std::vector<std::vector<std::size_t>> chosen_;
  std::uint64_t visited_ = 0;
  std::uint64_t best_ = 0;
  std::vector<std::vector<Family>> best_systems_;
};

}  // namespace

SearchResult brute_oracle(const SearchProblem& problem) {
  if (problem.r() < 2) throw InvalidArgument("brute_oracle requires r >= 2 spaces");
  if (problem.t == 0) throw InvalidArgument("t must be positive");
  const std::vector<Rank> caps = problem.limits();
  if (caps.size() != problem.r()) throw InvalidArgument("one micro limit per space is required");
  for (std::size_t j = 0; j < problem.r(); ++j)
    if (problem.spaces[j].size() > caps[j])
      throw InvalidArgument("brute_oracle: |P(" + problem.spaces[j].to_string() + ")| = " +
                            std::to_string(problem.spaces[j].size()) + " exceeds the limit " + std::to_string(caps[j]));
  Exhaustive search(problem);
  search.run();
  return search.result();
}

}  // namespace wcomp
