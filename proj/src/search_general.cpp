#include <algorithm>
#include <limits>

#include "search_internal.hpp"
#include "wcomp/errors.hpp"
#include "wcomp/search.hpp"

namespace wcomp {

namespace {

class InclusionSearch {
 public:
  InclusionSearch(const SearchProblem& problem, std::uint64_t seed)
      : problem_(problem), r_(problem.r()), l_(problem.l()), t_(problem.t), seed_(seed) {
    for (const CompositionSpace& s : problem.spaces) {
      if (s.size() > Family::kMaxDenseSize) throw InvalidArgument("space too large for search: P(" + s.to_string() + ")");
      elements_.push_back(s.elements());
      cand_.emplace_back(static_cast<std::size_t>(s.size()), true);
    }
    // pair_rows_[i][j][u]: members of space j that agree with u (from space i)
    // on at least t of the first l coordinates.
    pair_rows_.resize(r_, std::vector<std::vector<DynamicBitset>>(r_));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < r_; ++j) {
        if (i == j) continue;
        auto& rows = pair_rows_[i][j];
        rows.assign(elements_[i].size(), DynamicBitset(elements_[j].size()));
        for (std::size_t a = 0; a < elements_[i].size(); ++a)
          for (std::size_t b = 0; b < elements_[j].size(); ++b)
            if (agree_count(elements_[i][a], elements_[j][b], l_) >= t_) rows[a].set(b);
      }
    chosen_.resize(r_);
  }

  void run() { decide(0, 0); }

  SearchResult result() const {
    SearchResult out;
    out.nodes = nodes_;
    out.optimal = !exhausted_;
    if (maximizers_.empty()) {
      out.product = 0;
      for (const CompositionSpace& s : problem_.spaces) out.witnesses.emplace_back(s);
      if (problem_.all_maximizers) out.all_maximizers = std::vector<std::vector<Family>>{out.witnesses};
      return out;
    }
    out.product = best_;
    out.witnesses = maximizers_.front();
    if (problem_.all_maximizers) out.all_maximizers = maximizers_;
    return out;
  }

 private:
  std::uint64_t upper_bound(std::size_t f, std::size_t idx) const {
    std::uint64_t ub = 1;
    for (std::size_t j = 0; j < r_; ++j) {
      std::uint64_t size = 0;
      if (j < f)
        size = chosen_[j].size();
      else if (j == f)
        size = chosen_[j].size() + count_from(cand_[j], idx);
      else
        size = cand_[j].count();
      if (size == 0) return 0;
      ub *= size;
    }
    return ub;
  }

  static std::uint64_t count_from(const DynamicBitset& b, std::size_t idx) {
    std::uint64_t c = 0;
    for (std::size_t k = b.find_next(idx); k < b.size(); k = b.find_next(k + 1)) ++c;
    return c;
  }

  bool pruned(std::uint64_t ub) const {
    if (ub == 0 || ub < seed_) return true;
    if (maximizers_.empty()) return false;
    return problem_.all_maximizers ? ub < best_ : ub <= best_;
  }

  void decide(std::size_t f, std::size_t idx) {
    if (exhausted_) return;
    if (++nodes_ > problem_.node_budget) {
      exhausted_ = true;
      return;
    }
    if (f == r_ - 1) {
      record();
      return;
    }
    if (pruned(upper_bound(f, idx))) return;

    const std::size_t k = cand_[f].find_next(idx);
    if (k == cand_[f].size()) {
      if (!chosen_[f].empty()) decide(f + 1, 0);
      return;
    }

    // Include k.
    const std::vector<DynamicBitset> saved = cand_;
    chosen_[f].push_back(k);
    for (std::size_t j = f + 1; j < r_; ++j) cand_[j] &= pair_rows_[f][j][k];
    if (f == r_ - 2) restrict_last(k);
    decide(f, k + 1);
    chosen_[f].pop_back();
    cand_ = saved;
    if (exhausted_) return;

    // Exclude k.
    cand_[f].reset(k);
    decide(f, k + 1);
    cand_[f].set(k);
  }

  // With family r-2 gaining member k and families 0..r-3 final, keep only the
  // last-family candidates that complete every new tuple with |I| >= t.
  void restrict_last(std::size_t k) {
    if (r_ < 3) return;
    std::vector<std::size_t> pick(r_ - 2, 0);
    const Composition& x = elements_[r_ - 2][k];
    DynamicBitset& last = cand_[r_ - 1];
    while (true) {
      std::vector<const Composition*> tuple;
      for (std::size_t j = 0; j + 2 < r_; ++j) tuple.push_back(&elements_[j][chosen_[j][pick[j]]]);
      tuple.push_back(&x);
      std::vector<std::size_t> coords;
      for (std::size_t i = 0; i < l_; ++i) {
        const Part v = (*tuple.front())[i];
        if (std::all_of(tuple.begin() + 1, tuple.end(), [&](const Composition* u) { return (*u)[i] == v; }))
          coords.push_back(i);
      }
      if (coords.size() < t_) {
        last.reset_all();
        return;
      }
      for (std::size_t w = last.find_first(); w < last.size(); w = last.find_next(w + 1)) {
        std::size_t agree = 0;
        for (std::size_t i : coords) agree += elements_[r_ - 1][w][i] == x[i] ? 1U : 0U;
        if (agree < t_) last.reset(w);
      }
      // next tuple over families 0..r-3
      std::size_t d = 0;
      while (d < pick.size() && ++pick[d] == chosen_[d].size()) pick[d++] = 0;
      if (d == pick.size()) return;
    }
  }

  void record() {
    std::uint64_t p = cand_[r_ - 1].count();
    for (std::size_t j = 0; j + 1 < r_; ++j) p *= chosen_[j].size();
    if (p == 0 || p < seed_) return;
    if (!maximizers_.empty()) {
      if (p < best_) return;
      if (p == best_ && !problem_.all_maximizers) return;
    }
    if (maximizers_.empty() || p > best_) {
      best_ = p;
      maximizers_.clear();
    }
    std::vector<Family> system;
    for (std::size_t j = 0; j + 1 < r_; ++j) {
      Family fam(problem_.spaces[j]);
      for (std::size_t k : chosen_[j]) fam.insert_rank(k);
      system.push_back(std::move(fam));
    }
    system.emplace_back(problem_.spaces[r_ - 1], cand_[r_ - 1]);
    maximizers_.push_back(std::move(system));
  }

  const SearchProblem& problem_;
  std::size_t r_;
  std::size_t l_;
  std::size_t t_;
  std::uint64_t seed_;
  std::vector<std::vector<Composition>> elements_;
  std::vector<std::vector<std::vector<DynamicBitset>>> pair_rows_;
  std::vector<DynamicBitset> cand_;
  std::vector<std::vector<std::size_t>> chosen_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::uint64_t best_ = 0;
  std::vector<std::vector<Family>> maximizers_;
};

}  // namespace

SearchResult max_product_general(const SearchProblem& problem) {
  if (problem.r() < 2) throw InvalidArgument("max_product_general requires r >= 2 spaces");
  if (problem.t == 0) throw InvalidArgument("t must be positive");
  const std::vector<Rank> caps = problem.limits();
  if (caps.size() != problem.r()) throw InvalidArgument("one micro limit per space is required");
  bool within_limits = true;
  for (std::size_t j = 0; j + 1 < problem.r(); ++j) within_limits = within_limits && problem.spaces[j].size() <= caps[j];

  const BigInt star = detail::star_product(problem.spaces, problem.t);
  const std::uint64_t seed = star > std::numeric_limits<std::uint64_t>::max() ? 0 : static_cast<std::uint64_t>(star);
  InclusionSearch search(problem, seed);
  search.run();
  SearchResult out = search.result();
  out.optimal = out.optimal && within_limits;
  return out;
}

}  // namespace wcomp
