#include <cstddef>
#include <vector>

#include "wcomp/family.hpp"

namespace wcomp {

namespace {

// Maximum clique over the "agree nowhere" graph of the members, which is a
// maximum independent subfamily. Vertices are visited in rank order and the
// include branch is taken first, so the first maximum recorded is the
// lexicographically least one.
class IndependentSearch {
 public:
  IndependentSearch(std::vector<DynamicBitset> adjacency, std::uint64_t budget)
      : adj_(std::move(adjacency)), budget_(budget), best_(adj_.size()), current_(adj_.size()) {}

  void run() {
    DynamicBitset all(adj_.size(), true);
    expand(all, 0);
  }

  const DynamicBitset& best() const noexcept { return best_; }
  bool exhausted() const noexcept { return exhausted_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  std::size_t colour_bound(const DynamicBitset& candidates) const {
    DynamicBitset uncoloured = candidates;
    std::size_t colours = 0;
    while (uncoloured.any()) {
      ++colours;
      DynamicBitset open = uncoloured;
      for (std::size_t v = open.find_first(); v < open.size(); v = open.find_next(v + 1)) {
        uncoloured.reset(v);
        open.subtract(adj_[v]);
      }
    }
    return colours;
  }

  void expand(DynamicBitset candidates, std::size_t depth) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (depth > best_size_) {
      best_size_ = depth;
      best_ = current_;
    }
    while (candidates.any()) {
      if (depth + colour_bound(candidates) <= best_size_) return;
      const std::size_t v = candidates.find_first();
      current_.set(v);
      expand(candidates & adj_[v], depth + 1);
      current_.reset(v);
      if (exhausted_) return;
      candidates.reset(v);
    }
  }

  std::vector<DynamicBitset> adj_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  DynamicBitset best_;
  std::size_t best_size_ = 0;
  DynamicBitset current_;
};

}  // namespace

IndependentResult max_independent(const Family& family, std::uint64_t node_budget) {
  const std::vector<Rank> ranks = family.ranks();
  const std::vector<Composition> us = family.members();
  const std::size_t l = family.space().l();
  const std::size_t m = us.size();

  std::vector<DynamicBitset> adjacency(m, DynamicBitset(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (agree_count(us[i], us[j], l) == 0) {
        adjacency[i].set(j);
        adjacency[j].set(i);
      }

  IndependentSearch search(std::move(adjacency), node_budget);
  search.run();

  Family out(family.space());
  search.best().for_each([&](std::size_t i) { out.insert_rank(ranks[i]); });
  return IndependentResult{std::move(out), !search.exhausted(), search.nodes()};
}

}  // namespace wcomp
