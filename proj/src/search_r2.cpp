#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

#include "search_internal.hpp"
#include "wcomp/errors.hpp"
#include "wcomp/search.hpp"

namespace wcomp {

namespace {

struct Concept {
  DynamicBitset extent;  // subset of the first space
  DynamicBitset intent;  // subset of the second space
};

bool extent_less(const Concept& a, const Concept& b) { return lex_less(a.extent, b.extent); }

// Close-by-One over the extents in the first space. One instance explores the
// subtree below one child of the root concept; it keeps its own incumbent, so
// its node count and findings do not depend on other branches.
class CloseByOne {
 public:
  CloseByOne(const PolarPair& rel, std::uint64_t seed, std::uint64_t budget, bool collect_all)
      : rel_(rel), n1_(static_cast<std::size_t>(rel.first().size())), best_(seed), budget_(budget), collect_all_(collect_all) {}

  void run_child(const Concept& root, std::size_t j) { visit_child(root, j); }

  std::uint64_t best() const noexcept { return best_; }
  std::vector<Concept>& maximizers() noexcept { return maximizers_; }
  std::uint64_t nodes() const noexcept { return nodes_; }
  bool exhausted() const noexcept { return exhausted_; }

  void consider(const Concept& c) {
    const std::uint64_t p = static_cast<std::uint64_t>(c.extent.count()) * c.intent.count();
    if (p == 0 || p < best_) return;
    if (p > best_) {
      best_ = p;
      maximizers_.clear();
    }
    if (collect_all_ || maximizers_.empty()) {
      maximizers_.push_back(c);
    } else if (extent_less(c, maximizers_.front())) {
      maximizers_.front() = c;
    }
  }

 private:
  void process(const Concept& c, std::size_t from) {
    for (std::size_t j = from; j < n1_ && !exhausted_; ++j) {
      if (c.extent.test(j)) continue;
      visit_child(c, j);
    }
  }

  void visit_child(const Concept& c, std::size_t j) {
    DynamicBitset intent = c.intent & rel_.partners_of_first(j);
    const std::size_t intent_size = intent.count();
    if (intent_size == 0) return;
    // Extents below this child lie inside extent + [j, n1).
    if (static_cast<std::uint64_t>(c.extent.count() + (n1_ - j)) * intent_size < best_) return;

    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    DynamicBitset extent = rel_.polar_of_second(intent);
    if (!extent.equal_below(c.extent, j)) return;  // not canonical: generated elsewhere
    Concept child{std::move(extent), std::move(intent)};
    consider(child);
    if (subtree_bound(child, j) < best_) return;
    process(child, j + 1);
  }

  // Adding a set X of candidates k > j shrinks the intent to at most
  // min over X of |intent & row(k)|, so with |X| = m the intent is at most the
  // m-th largest of those counts.
  std::uint64_t subtree_bound(const Concept& c, std::size_t j) const {
    std::vector<std::size_t> shrunk;
    for (std::size_t k = j + 1; k < n1_; ++k) {
      if (c.extent.test(k)) continue;
      const std::size_t d = c.intent.and_count(rel_.partners_of_first(k));
      if (d > 0) shrunk.push_back(d);
    }
    std::sort(shrunk.begin(), shrunk.end(), std::greater<>());
    const std::uint64_t base = c.extent.count();
    std::uint64_t bound = 0;
    for (std::size_t m = 0; m < shrunk.size(); ++m) bound = std::max(bound, (base + m + 1) * shrunk[m]);
    return bound;
  }

  const PolarPair& rel_;
  std::size_t n1_;
  std::uint64_t best_;
  std::uint64_t budget_;
  bool collect_all_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<Concept> maximizers_;
};

struct TaskOutcome {
  std::uint64_t best = 0;
  std::vector<Concept> maximizers;
  std::uint64_t nodes = 0;
  bool exhausted = false;
};

template <typename F>
void run_tasks(std::size_t count, unsigned workers, F&& task) {
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  for (std::thread& th : pool) th.join();
}

}  // namespace

SearchResult max_product_r2(const SearchProblem& problem) {
  if (problem.r() != 2) throw InvalidArgument("max_product_r2 requires exactly two spaces");
  if (problem.t == 0) throw InvalidArgument("t must be positive");
  const PolarPair rel(problem.spaces[0], problem.spaces[1], problem.t);
  const std::size_t n1 = static_cast<std::size_t>(rel.first().size());

  DynamicBitset root_intent(static_cast<std::size_t>(rel.second().size()), true);
  DynamicBitset root_extent = rel.polar_of_second(root_intent);
  const Concept root{std::move(root_extent), std::move(root_intent)};

  const BigInt star = detail::star_product(problem.spaces, problem.t);
  const std::uint64_t seed = static_cast<std::uint64_t>(star);

  std::vector<std::size_t> children;
  for (std::size_t j = 0; j < n1; ++j)
    if (!root.extent.test(j)) children.push_back(j);

  std::vector<TaskOutcome> outcomes(children.size());
  run_tasks(children.size(), problem.workers, [&](std::size_t i) {
    CloseByOne cbo(rel, seed, problem.node_budget, problem.all_maximizers);
    cbo.run_child(root, children[i]);
    outcomes[i] = TaskOutcome{cbo.best(), std::move(cbo.maximizers()), cbo.nodes(), cbo.exhausted()};
  });

  // Deterministic reduction: the root first, then branches in generator order.
  CloseByOne reducer(rel, 0, 0, problem.all_maximizers);
  reducer.consider(root);
  SearchResult result;
  result.nodes = 1;
  result.optimal = true;
  for (TaskOutcome& o : outcomes) {
    result.nodes += o.nodes;
    result.optimal = result.optimal && !o.exhausted;
    for (const Concept& c : o.maximizers) reducer.consider(c);
  }
  std::vector<Concept>& best = reducer.maximizers();
  std::sort(best.begin(), best.end(), extent_less);

  auto as_system = [&](const Concept& c) {
    return std::vector<Family>{Family(problem.spaces[0], c.extent), Family(problem.spaces[1], c.intent)};
  };
  if (best.empty()) {
    result.product = 0;
    result.witnesses = {Family(problem.spaces[0]), Family(problem.spaces[1])};
  } else {
    result.product = reducer.best();
    result.witnesses = as_system(best.front());
  }
  if (problem.all_maximizers) {
    std::vector<std::vector<Family>> all;
    for (const Concept& c : best) all.push_back(as_system(c));
    if (all.empty()) all.push_back(result.witnesses);
    result.all_maximizers = std::move(all);
  }
  return result;
}

}  // namespace wcomp
