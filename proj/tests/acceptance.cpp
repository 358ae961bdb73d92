// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "support/brute.hpp"
#include "wcomp/bounds.hpp"
#include "wcomp/family.hpp"
#include "wcomp/io.hpp"
#include "wcomp/search.hpp"

using namespace wcomp;
using io::Json;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.ok = false;
    v.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (v.ok && secs >= limit_seconds) {
    v.ok = false;
    v.detail = "exceeded time limit";
  }
  if (!v.ok) ++failures;
  std::printf("%s criterion %2d: %s (%.2fs / limit %.0fs)%s%s\n", v.ok ? "PASS" : "FAIL", id, title, secs, limit_seconds,
              v.detail.empty() ? "" : " - ", v.detail.c_str());
  std::fflush(stdout);
}

std::vector<brute::Tuple> tuples(const CompositionSpace& s) {
  std::vector<brute::Tuple> out;
  for (const Composition& u : s.elements()) out.emplace_back(u.parts().begin(), u.parts().end());
  return out;
}

SearchProblem problem(std::vector<CompositionSpace> spaces, std::size_t t, unsigned workers) {
  SearchProblem p;
  p.spaces = std::move(spaces);
  p.t = t;
  p.workers = workers;
  return p;
}

std::string label(const std::vector<CompositionSpace>& spaces, std::size_t t) {
  std::string s;
  for (const CompositionSpace& sp : spaces) s += (s.empty() ? "" : " x ") + sp.to_string();
  return s + " t=" + std::to_string(t);
}

// ---- criterion 3: oracle equivalence on a fixed grid

struct GridInstance {
  unsigned n1, n2;
  std::size_t l1, l2, t;
};

std::vector<GridInstance> oracle_grid() {
  std::vector<GridInstance> grid;
  for (std::size_t l1 = 3; l1 <= 5; ++l1)
    for (std::size_t l2 = 3; l2 <= 5; ++l2)
      for (std::size_t t = 1; t + 2 <= std::min(l1, l2); ++t)
        for (unsigned n1 = 0; n1 <= 4; ++n1)
          for (unsigned n2 = 0; n2 <= 4; ++n2)
            if (brute::binomial(n1 + l1 - 1, l1 - 1) <= 20 && brute::binomial(n2 + l2 - 1, l2 - 1) <= 20)
              grid.push_back({n1, n2, l1, l2, t});
  return grid;
}

Json run_oracle_grid(unsigned workers, Verdict& v, std::size_t& instances) {
  Json out = Json::array();
  bool saw_reference = false;
  instances = 0;
  for (const GridInstance& g : oracle_grid()) {
    const SearchProblem p = problem({CompositionSpace(g.n1, g.l1), CompositionSpace(g.n2, g.l2)}, g.t, workers);
    const SearchResult fast = max_product_r2(p);
    const SearchResult truth = brute_oracle(p);
    v.require(fast.optimal, label(p.spaces, p.t) + ": search not optimal");
    v.require(fast.product == truth.product, label(p.spaces, p.t) + ": search " + to_decimal(fast.product) +
                                                 " != oracle " + to_decimal(truth.product));
    if (g.n1 == 1 && g.n2 == 1 && g.l1 == 3 && g.l2 == 3 && g.t == 1) {
      saw_reference = true;
      v.require(fast.product == 9, "P(1,3) x P(1,3), t=1 should give 9");
    }
    out.push_back(Json{{"instance", label(p.spaces, p.t)}, {"result", io::search_result_to_json(fast)}});
    ++instances;
  }
  v.require(saw_reference, "reference instance missing from grid");
  v.require(instances >= 25, "grid has fewer than 25 instances");
  return out;
}

// ---- criterion 4: threshold scan

constexpr std::uint64_t kScanMax = 30;

Json run_scan(unsigned workers, Verdict& v, std::optional<std::uint64_t>& threshold) {
  const auto rows = scan_threshold(3, 3, 1, 1, kScanMax, 50'000'000, workers);
  Json out = Json::array();
  for (const ScanRow& r : rows) {
    v.require(r.optimal, "row n=" + std::to_string(r.n) + " not optimal");
    out.push_back(io::scan_row_to_json(r));
  }
  v.require(rows.front().n == 1 && rows.front().max_product == 9 && rows.front().star_bound == 4,
            "n=1 row should show 9 > 4");
  threshold = empirical_threshold(rows);
  return out;
}

// ---- criterion 8: pairwise combination for r = 3

const std::vector<std::tuple<std::vector<unsigned>, std::size_t, std::size_t>> kTripleInstances{
    {{1, 1, 1}, 3, 1}, {{2, 2, 2}, 3, 1}, {{1, 2, 3}, 3, 1}, {{1, 1, 2}, 4, 1}, {{1, 1, 1}, 4, 2}};

Json run_pairwise(unsigned workers, Verdict& v) {
  Json out = Json::array();
  for (const auto& [ns, l, t] : kTripleInstances) {
    std::vector<CompositionSpace> spaces;
    for (unsigned n : ns) spaces.emplace_back(n, l);
    const SearchResult general = max_product_general(problem(spaces, t, workers));
    v.require(general.optimal, label(spaces, t) + ": general search not optimal");
    std::map<std::pair<std::size_t, std::size_t>, BigInt> pairwise;
    Json pairs = Json::array();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        const SearchResult r = max_product_r2(problem({spaces[i], spaces[j]}, t, workers));
        v.require(r.optimal, label({spaces[i], spaces[j]}, t) + ": pair search not optimal");
        pairwise[{i, j}] = r.product;
        pairs.push_back(io::search_result_to_json(r));
      }
    v.require(pairwise_combination_holds(general.product, pairwise, 3), label(spaces, t) + ": combination fails");
    out.push_back(Json{{"instance", label(spaces, t)}, {"general", io::search_result_to_json(general)}, {"pairs", pairs}});
  }
  return out;
}

// ---- criterion 6: dichotomy instances

std::size_t direct_agreement(const Composition& a, const Composition& b, std::size_t l) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < l; ++i) c += a[i] == b[i] ? 1 : 0;
  return c;
}

Composition random_composition(unsigned n, std::size_t l, std::mt19937& rng) {
  // Stars and bars: l - 1 bar positions among n + l - 1 slots.
  std::vector<unsigned> slots(n + l - 1);
  std::iota(slots.begin(), slots.end(), 0U);
  std::shuffle(slots.begin(), slots.end(), rng);
  std::vector<unsigned> bars(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(l - 1));
  std::sort(bars.begin(), bars.end());
  std::vector<Part> parts;
  unsigned prev = 0;
  for (unsigned b : bars) {
    parts.push_back(b - prev);
    prev = b + 1;
  }
  parts.push_back(n + static_cast<unsigned>(l) - 1 - prev);
  return Composition(std::move(parts));
}

}  // namespace

int main() {
  criterion(1, "space identities for n <= 10, l <= 6", 10, [] {
    Verdict v;
    for (unsigned n = 0; n <= 10; ++n)
      for (std::size_t l = 1; l <= 6; ++l) {
        const CompositionSpace s(n, l);
        const auto expected = brute::compositions(n, l);
        std::uint64_t k = 0;
        for (const Composition& u : enumerate(s)) {
          v.require(k < expected.size() && std::equal(u.parts().begin(), u.parts().end(), expected[k].begin()),
                    s.to_string() + ": enumeration differs at " + std::to_string(k));
          v.require(s.rank(u) == k && s.unrank(k) == u, s.to_string() + ": rank/unrank fails at " + std::to_string(k));
          ++k;
        }
        v.require(k == brute::binomial(n + l - 1, l - 1), s.to_string() + ": wrong count");
        v.require(s.cardinality() == brute::binomial(n + l - 1, l - 1), s.to_string() + ": wrong cardinality");
      }
    return v;
  });

  criterion(2, "star sizes and r-copy star systems", 30, [] {
    Verdict v;
    for (unsigned n = 0; n <= 8; ++n)
      for (std::size_t l = 3; l <= 5; ++l)
        for (std::size_t t = 1; t + 2 <= l; ++t) {
          const CompositionSpace s(n, l);
          std::vector<std::size_t> pool(l);
          std::iota(pool.begin(), pool.end(), 1);
          std::vector<bool> pick(l, false);
          std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(t), true);
          do {  // every t-subset T
            StarSpec spec;
            for (std::size_t i = 0; i < l; ++i)
              if (pick[i]) spec.coords.push_back(pool[i]);
            const Family star = make_star(s, spec);
            v.require(star.size() == brute::binomial(n + l - t - 1, l - t - 1), s.to_string() + ": star size");
            for (std::size_t r = 2; r <= 4; ++r)
              v.require(is_cross_t_intersecting(FamilySystem(std::vector<Family>(r, star), t)).holds,
                        s.to_string() + ": star system rejected");
          } while (std::prev_permutation(pick.begin(), pick.end()));
        }
    return v;
  });

  Json c3_json, c4_json, c8_json;

  criterion(3, "two-family search equals exhaustive oracle on the grid", 300, [&] {
    Verdict v;
    std::size_t instances = 0;
    c3_json = run_oracle_grid(1, v, instances);
    if (v.ok) v.detail = std::to_string(instances) + " instances";
    return v;
  });

  criterion(4, "threshold scan l1=l2=3, t=1", 600, [&] {
    Verdict v;
    std::optional<std::uint64_t> threshold;
    c4_json = run_scan(1, v, threshold);
    const BigInt n0 = sufficient_n0({3, 3}, 1).sufficient_n0;
    v.require(n0 == 81, "sufficient n0 should be 81");
    v.require(threshold.has_value(), "no n <= " + std::to_string(kScanMax) + " with unique star maximizers");
    if (threshold) {
      v.require(BigInt(*threshold) <= n0, "threshold exceeds sufficient n0");
      if (v.ok) v.detail = "n* = " + std::to_string(*threshold) + " <= " + to_decimal(n0);
    }
    return v;
  });

  criterion(5, "closure laws on 500 random subsets per shape", 60, [] {
    Verdict v;
    std::mt19937 rng(2024);
    const std::vector<std::tuple<unsigned, std::size_t, unsigned, std::size_t, std::size_t>> shapes{
        {2, 3, 2, 3, 1}, {3, 3, 4, 3, 1}, {2, 4, 3, 4, 2}, {3, 4, 2, 5, 1}, {4, 5, 3, 5, 3}};
    for (const auto& [n1, l1, n2, l2, t] : shapes) {
      const CompositionSpace a(n1, l1), b(n2, l2);
      const PolarPair polar(a, b, t);
      for (int trial = 0; trial < 500; ++trial) {
        DynamicBitset s(a.size()), bigger(a.size());
        const unsigned density = 1 + rng() % 4;
        for (Rank k = 0; k < a.size(); ++k) {
          if (rng() % (density + 1) == 0) s.set(k);
          if (s.test(k) || rng() % 3 == 0) bigger.set(k);
        }
        const DynamicBitset cs = polar.polar_of_first(s);
        const DynamicBitset closed = polar.polar_of_second(cs);
        const std::string where = a.to_string() + " x " + b.to_string();
        v.require(s.is_subset_of(closed), where + ": closure not extensive");
        v.require(polar.polar_of_first(bigger).is_subset_of(cs), where + ": polar not antitone");
        v.require(polar.polar_of_first(closed) == cs, where + ": closure not idempotent");
        v.require(polar.polar_of_second(polar.polar_of_first(closed)) == closed, where + ": closed set moved");
      }
    }
    return v;
  });

  criterion(6, "dichotomy never lands in neither branch", 120, [] {
    Verdict v;
    // Worked examples.
    const Family star = make_star(CompositionSpace(5, 3), StarSpec{{1}});
    const std::vector<std::size_t> x1{1};
    const std::vector<Part> y0{0};
    v.require(dichotomy_check(star, {0, 2, 3}, x1, y0, 1).verdict == DichotomyVerdict::BranchB, "worked example B");
    v.require(dichotomy_check(star, {1, 2, 2}, x1, y0, 1).verdict == DichotomyVerdict::BranchA, "worked example A");
    const std::vector<Composition> lone{{0, 5, 0}};
    v.require(dichotomy_check(Family::from_members(CompositionSpace(5, 3), lone), {0, 2, 3}, x1, y0, 1).verdict ==
                  DichotomyVerdict::HypothesisFails,
              "worked example hypothesis failure");

    std::mt19937 rng(77);
    std::map<DichotomyVerdict, int> seen;
    int accepted = 0, attempts = 0;
    while (accepted < 1000 && attempts < 200000 && v.ok) {
      ++attempts;
      const std::size_t l1 = 3 + rng() % 3, l2 = 3 + rng() % 3, l = std::min(l1, l2);
      const std::size_t t = 1 + rng() % (l - 2);
      const unsigned n1 = rng() % 7, n2 = rng() % 7;
      const CompositionSpace space(n1, l1);
      if (space.size() > 300) continue;

      std::vector<std::size_t> coords(l);
      std::iota(coords.begin(), coords.end(), 1);
      std::shuffle(coords.begin(), coords.end(), rng);
      std::vector<std::size_t> xs(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(t));
      std::sort(xs.begin(), xs.end());
      std::vector<Part> ys(t);
      for (Part& y : ys) y = rng() % 2;

      // Slice-rich family: most of the slice A(xs; ys), a sprinkling of the rest.
      Family a(space);
      for (const Composition& u : space.elements()) {
        bool in_slice = true;
        for (std::size_t i = 0; i < t; ++i) in_slice = in_slice && u[xs[i] - 1] == ys[i];
        if (rng() % 10 < (in_slice ? 8U : 2U)) a.insert(u);
      }
      Composition v_comp = random_composition(n2, l2, rng);
      if (rng() % 2) {  // bias towards v(xs) = ys
        std::vector<Part> p(v_comp.parts().begin(), v_comp.parts().end());
        unsigned sum = 0;
        for (std::size_t i = 0; i < t; ++i) p[xs[i] - 1] = ys[i];
        for (Part q : p) sum += q;
        if (sum <= n2) {
          p[coords.back() - 1] += n2 - sum;  // coords.back() is not in xs since t <= l - 2
          v_comp = Composition(std::move(p));
        }
      }

      // Hypothesis, verified independently of dichotomy_check.
      unsigned ysum = 0;
      for (Part y : ys) ysum += y;
      if (ysum > n1) continue;
      const Family proj = project(a, xs, ys);
      if (proj.size() < l - t + 1) continue;
      std::vector<brute::Tuple> proj_tuples;
      for (const Composition& u : proj.members()) proj_tuples.emplace_back(u.parts().begin(), u.parts().end());
      std::size_t independent = 0;
      if (proj_tuples.size() <= 18) {
        independent = brute::max_independent(proj_tuples, l1 - t);
      } else {
        const IndependentResult r = max_independent(proj);
        if (!r.optimal) continue;
        independent = r.family.size();
      }
      if (independent < l - t + 1) continue;

      const DichotomyResult d = dichotomy_check(a, v_comp, xs, ys, t);
      bool branch_a = false, branch_b = true;
      for (const Composition& u : a.members()) branch_a = branch_a || direct_agreement(u, v_comp, l) + 1 <= t;
      for (std::size_t i = 0; i < t; ++i) branch_b = branch_b && v_comp[xs[i] - 1] == ys[i];
      const DichotomyVerdict expected = branch_a && branch_b ? DichotomyVerdict::Both
                                        : branch_a           ? DichotomyVerdict::BranchA
                                                             : DichotomyVerdict::BranchB;
      v.require(branch_a || branch_b, "direct check finds neither branch");
      v.require(d.verdict == expected, "verdict " + to_string(d.verdict) + " but direct check says " + to_string(expected));
      v.require(d.independent_size == independent, "independent size mismatch");
      ++seen[d.verdict];
      ++accepted;
    }
    v.require(accepted >= 1000, "only " + std::to_string(accepted) + " instances satisfied the hypothesis");
    if (v.ok)
      v.detail = std::to_string(accepted) + " instances: " + std::to_string(seen[DichotomyVerdict::BranchA]) + " A, " +
                 std::to_string(seen[DichotomyVerdict::BranchB]) + " B, " + std::to_string(seen[DichotomyVerdict::Both]) +
                 " both";
    return v;
  });

  criterion(7, "independence guarantee spot check", 1, [] {
    Verdict v;
    const Family full = Family::full(CompositionSpace(5, 2));
    v.require(guarantee_applies({5, 5, 1, 2, 2}, full.size()), "guarantee should apply");
    const IndependentResult r = max_independent(full);
    v.require(r.optimal && r.family.size() >= 3, "independent subfamily too small");
    v.require(r.family.size() == 6, "expected the whole space to be independent");
    return v;
  });

  criterion(8, "pairwise combination on three-family instances", 300, [&] {
    Verdict v;
    c8_json = run_pairwise(1, v);
    // The three-family values themselves, against a test-only exhaustive search.
    for (const auto& [ns, l, t] : kTripleInstances) {
      std::vector<CompositionSpace> spaces;
      for (unsigned n : ns) spaces.emplace_back(n, l);
      const BigInt expected = brute::max_product3(tuples(spaces[0]), tuples(spaces[1]), tuples(spaces[2]), t, l);
      v.require(max_product_general(problem(spaces, t, 1)).product == expected, label(spaces, t) + ": wrong maximum");
    }
    return v;
  });

  criterion(9, "bounds arithmetic tables", 1, [] {
    Verdict v;
    v.require(theorem_rhs({{5, 3}, {5, 3}}, 1) == 36, "rhs 36");
    v.require(sufficient_n0({3, 3}, 1).sufficient_n0 == 81, "n0 81");
    const BoundReport b = sufficient_n0({4, 4}, 2);
    v.require(b.per_case_thresholds.at("case1_1") == 1296 && b.per_case_thresholds.at("case3_1") == 17 &&
                  b.sufficient_n0 == 1296,
              "ls=(4,4) t=2 table");
    const BoundReport c = sufficient_n0({4, 3}, 1);
    v.require(c.per_case_thresholds.at("case1_1") == 324 && c.per_case_thresholds.at("case3_1") == 257 &&
                  c.per_case_thresholds.at("case1_2") == 81 && c.per_case_thresholds.at("case3_2") == 17 &&
                  c.sufficient_n0 == 324,
              "ls=(4,3) t=1 table");
    return v;
  });

  criterion(10, "criteria 3, 4, 8 byte-identical with 4 workers", 900, [&] {
    Verdict v;
    std::size_t instances = 0;
    std::optional<std::uint64_t> threshold;
    const std::string c3 = run_oracle_grid(4, v, instances).dump();
    const std::string c4 = run_scan(4, v, threshold).dump();
    const std::string c8 = run_pairwise(4, v).dump();
    v.require(!c3_json.is_null() && c3 == c3_json.dump(), "criterion 3 output differs");
    v.require(!c4_json.is_null() && c4 == c4_json.dump(), "criterion 4 output differs");
    v.require(!c8_json.is_null() && c8 == c8_json.dump(), "criterion 8 output differs");
    return v;
  });

  std::printf("%s: %d criterion/criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
