#include "wcomp/family.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "wcomp/errors.hpp"

namespace wcomp {

namespace {

DynamicBitset empty_mask(const CompositionSpace& space) {
  if (space.size() > Family::kMaxDenseSize)
    throw InvalidArgument("P(" + space.to_string() + ") is too large to hold a family in memory");
  return DynamicBitset(static_cast<std::size_t>(space.size()));
}

void check_positions(std::span<const std::size_t> xs, std::size_t l, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0 || xs[i] > l)
      throw InvalidArgument(std::string(what) + ": coordinate " + std::to_string(xs[i]) + " outside [1," +
                            std::to_string(l) + "]");
    if (i > 0 && xs[i] <= xs[i - 1])
      throw InvalidArgument(std::string(what) + ": coordinates must be strictly increasing");
  }
}

}  // namespace

Family::Family(CompositionSpace space) : space_(std::move(space)), members_(empty_mask(space_)) {}

Family::Family(CompositionSpace space, DynamicBitset members) : space_(std::move(space)), members_(std::move(members)) {
  if (members_.size() != space_.size()) throw InvalidArgument("membership mask width does not match the space");
}

Family Family::full(CompositionSpace space) {
  Family f(std::move(space));
  f.members_.set_all();
  return f;
}

Family Family::from_members(CompositionSpace space, std::span<const Composition> members) {
  Family f(std::move(space));
  for (const Composition& u : members) {
    if (!f.space_.contains(u))
      throw InvalidArgument("member " + u.to_string() + " is not in P(" + f.space_.to_string() + ")");
    f.insert(u);
  }
  return f;
}

std::vector<Rank> Family::ranks() const {
  std::vector<Rank> out;
  members_.for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

std::vector<Composition> Family::members() const {
  std::vector<Composition> out;
  members_.for_each([&](std::size_t i) { out.push_back(space_.unrank(i)); });
  return out;
}

FamilySystem::FamilySystem(std::vector<Family> families, std::size_t t) : families_(std::move(families)), t_(t), l_(0) {
  if (families_.size() < 2) throw InvalidArgument("a family system needs r >= 2 families");
  if (t_ == 0) throw InvalidArgument("the threshold t must be positive");
  l_ = std::numeric_limits<std::size_t>::max();
  for (const Family& f : families_) l_ = std::min(l_, f.space().l());
}

Family make_star(const CompositionSpace& space, const StarSpec& spec) {
  std::vector<std::size_t> coords = spec.coords;
  std::sort(coords.begin(), coords.end());
  check_positions(coords, space.l(), "star");
  Family star(space);
  Rank k = 0;
  for (const Composition& u : space) {
    if (std::all_of(coords.begin(), coords.end(), [&](std::size_t i) { return u[i - 1] == 0; })) star.insert_rank(k);
    ++k;
  }
  return star;
}

namespace {

// Agreement profile of a partial tuple: which of the first l coordinates still
// agree, and on what value.
struct Profile {
  std::vector<bool> agree;
  std::vector<Part> value;
  std::size_t count = 0;

  static Profile of(const Composition& u, std::size_t l) {
    Profile p;
    p.agree.assign(l, true);
    p.value.assign(u.parts().begin(), u.parts().begin() + static_cast<std::ptrdiff_t>(l));
    p.count = l;
    return p;
  }
  Profile extend(const Composition& u) const {
    Profile p = *this;
    for (std::size_t i = 0; i < agree.size(); ++i) {
      if (p.agree[i] && u[i] != p.value[i]) {
        p.agree[i] = false;
        --p.count;
      }
    }
    return p;
  }
  // Agreeing values, with -1 at broken coordinates.
  std::vector<std::int64_t> key() const {
    std::vector<std::int64_t> k(agree.size());
    for (std::size_t i = 0; i < agree.size(); ++i) k[i] = agree[i] ? std::int64_t{value[i]} : -1;
    return k;
  }
};

struct TupleSearch {
  const std::vector<std::vector<Rank>>& ranks;
  const std::vector<std::vector<Composition>>& members;
  std::size_t t;
  std::vector<std::size_t> choice;
  // Per depth, profiles already shown to have no violating completion.
  std::vector<std::set<std::vector<std::int64_t>>> dead;

  // Depth-first in lexicographic rank order; returns true on the first
  // violation. Skipping dead profiles keeps the witness lexicographically least.
  bool violated(std::size_t depth, const Profile& prefix) {
    if (depth == ranks.size()) return prefix.count < t;
    for (std::size_t i = 0; i < ranks[depth].size(); ++i) {
      choice[depth] = i;
      const Profile next = prefix.extend(members[depth][i]);
      if (next.count < t) {
        // Any completion violates; take the least one.
        for (std::size_t d = depth + 1; d < ranks.size(); ++d) choice[d] = 0;
        return true;
      }
      if (depth + 1 == ranks.size()) continue;
      std::vector<std::int64_t> key = next.key();
      if (dead[depth + 1].count(key) != 0) continue;
      if (violated(depth + 1, next)) return true;
      dead[depth + 1].insert(std::move(key));
    }
    return false;
  }
};

}  // namespace

CrossCheck is_cross_t_intersecting(const FamilySystem& system) {
  CrossCheck out;
  const auto& fams = system.families();
  if (std::any_of(fams.begin(), fams.end(), [](const Family& f) { return f.empty(); })) return out;
  const std::size_t l = system.l();
  const std::size_t t = system.t();

  if (system.r() == 2) {
    // Compatible-partner mask per member of the first family.
    const Family& a = fams[0];
    const Family& b = fams[1];
    const std::vector<Composition> bs = b.space().elements();
    for (Rank ra : a.ranks()) {
      const Composition u = a.space().unrank(ra);
      for (Rank rb : b.ranks()) {
        if (agree_count(u, bs[rb], l) < t) {
          out.holds = false;
          out.witness_ranks = {ra, rb};
          out.witness = {u, bs[rb]};
          return out;
        }
      }
    }
    return out;
  }

  std::vector<std::vector<Rank>> ranks;
  std::vector<std::vector<Composition>> members;
  for (const Family& f : fams) {
    ranks.push_back(f.ranks());
    members.push_back(f.members());
  }
  TupleSearch search{ranks, members, t, std::vector<std::size_t>(fams.size(), 0),
                     std::vector<std::set<std::vector<std::int64_t>>>(fams.size())};
  for (std::size_t i = 0; i < ranks[0].size(); ++i) {
    search.choice[0] = i;
    const Profile first = Profile::of(members[0][i], l);
    if (first.count < t) {
      for (std::size_t d = 1; d < fams.size(); ++d) search.choice[d] = 0;
    } else if (!search.violated(1, first)) {
      continue;
    }
    out.holds = false;
    for (std::size_t d = 0; d < fams.size(); ++d) {
      out.witness_ranks.push_back(ranks[d][search.choice[d]]);
      out.witness.push_back(members[d][search.choice[d]]);
    }
    return out;
  }
  return out;
}

Family slice(const Family& family, std::span<const std::size_t> xs, std::span<const Part> ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("slice needs as many values as coordinates");
  check_positions(xs, family.space().l(), "slice");
  Family out(family.space());
  family.bits().for_each([&](std::size_t k) {
    const Composition u = family.space().unrank(k);
    bool match = true;
    for (std::size_t i = 0; i < xs.size() && match; ++i) match = u[xs[i] - 1] == ys[i];
    if (match) out.insert_rank(k);
  });
  return out;
}

Family project(const Family& family, std::span<const std::size_t> xs, std::span<const Part> ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("project needs as many values as coordinates");
  const CompositionSpace& space = family.space();
  if (xs.size() >= space.l()) throw InvalidArgument("project must keep at least one coordinate");
  const std::uint64_t removed = std::accumulate(ys.begin(), ys.end(), std::uint64_t{0});
  if (removed > space.n())
    throw InvalidArgument("projected values sum to " + std::to_string(removed) + " > n = " + std::to_string(space.n()));
  const Family sliced = slice(family, xs, ys);
  Family out(CompositionSpace(static_cast<Part>(space.n() - removed), space.l() - xs.size()));
  sliced.bits().for_each([&](std::size_t k) { out.insert(remove_coords(space.unrank(k), xs)); });
  return out;
}

bool is_independent(const Family& family) {
  const std::vector<Composition> us = family.members();
  const std::size_t l = family.space().l();
  for (std::size_t i = 0; i < us.size(); ++i)
    for (std::size_t j = i + 1; j < us.size(); ++j)
      if (agree_count(us[i], us[j], l) != 0) return false;
  return true;
}

Family greedy_independent(const Family& family) {
  const std::vector<Rank> ranks = family.ranks();
  const std::vector<Composition> us = family.members();
  const std::size_t l = family.space().l();
  std::vector<bool> alive(us.size(), true);
  Family out(family.space());
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (!alive[i]) continue;
    out.insert_rank(ranks[i]);
    for (std::size_t j = i + 1; j < us.size(); ++j)
      if (alive[j] && agree_count(us[i], us[j], l) != 0) alive[j] = false;
  }
  return out;
}

bool guarantee_applies(const GuaranteeParams& p, const BigInt& family_size) {
  if (p.m == 0 || p.n == 0 || p.q == 0) throw InvalidArgument("guarantee parameters m, n, q must be positive");
  if (p.m > p.n) throw InvalidArgument("guarantee requires m <= n");
  if (p.parts < 2 || p.s < 2) throw InvalidArgument("guarantee requires parts >= 2 and s >= 2");

  // (2s)^(2^(parts-2) q) >= 4^(2^(parts-2)); once that exponent reaches 64 the
  // threshold exceeds any 64-bit n.
  if (p.parts - 2 >= 6) return false;
  const BigInt exponent = (BigInt(1) << static_cast<unsigned>(p.parts - 2)) * p.q;
  if (exponent >= 64) return false;
  const BigInt threshold = boost::multiprecision::pow(BigInt(2 * p.s), static_cast<unsigned>(exponent)) + 1;
  if (BigInt(p.n) < threshold) return false;

  const BigInt binom = count_compositions(p.n, p.parts - 1);  // C(n+parts-2, parts-2)
  const unsigned q = static_cast<unsigned>(p.q);
  return boost::multiprecision::pow(family_size, q) >= BigInt(p.n) * boost::multiprecision::pow(binom, q);
}

std::string to_string(DichotomyVerdict v) {
  switch (v) {
    case DichotomyVerdict::HypothesisFails:
      return "HYPOTHESIS_FAILS";
    case DichotomyVerdict::BranchA:
      return "BRANCH_A";
    case DichotomyVerdict::BranchB:
      return "BRANCH_B";
    case DichotomyVerdict::Both:
      return "BOTH";
  }
  return "?";
}

DichotomyResult dichotomy_check(const Family& a, const Composition& v, std::span<const std::size_t> xs,
                                std::span<const Part> ys, std::size_t t) {
  const std::size_t l = std::min(a.space().l(), v.length());
  if (t == 0) throw InvalidArgument("dichotomy: t must be positive");
  if (l < t + 2) throw InvalidArgument("dichotomy: needs l = min(l1,l2) >= t + 2");
  if (xs.size() != t || ys.size() != t) throw InvalidArgument("dichotomy: xs and ys must both have t entries");
  check_positions(xs, l, "dichotomy");

  DichotomyResult out;
  const std::uint64_t removed = std::accumulate(ys.begin(), ys.end(), std::uint64_t{0});
  if (removed <= a.space().n()) {
    const IndependentResult best = max_independent(project(a, xs, ys));
    if (!best.optimal && best.family.size() < l - t + 1)
      throw std::runtime_error("dichotomy: independent-set search ran out of budget before deciding the hypothesis");
    out.independent_size = best.family.size();
  }
  if (out.independent_size < l - t + 1) return out;

  bool branch_a = false;
  a.bits().for_each([&](std::size_t k) {
    if (branch_a) return;
    const Composition u = a.space().unrank(k);
    if (agree_count(v, u, l) + 1 <= t) {
      branch_a = true;
      out.branch_a_witness = u;
    }
  });
  bool branch_b = true;
  for (std::size_t i = 0; i < t; ++i) branch_b = branch_b && v[xs[i] - 1] == ys[i];

  if (branch_a && branch_b)
    out.verdict = DichotomyVerdict::Both;
  else if (branch_a)
    out.verdict = DichotomyVerdict::BranchA;
  else if (branch_b)
    out.verdict = DichotomyVerdict::BranchB;
  else
    throw std::logic_error("dichotomy: neither branch holds although the hypothesis does");
  return out;
}

}  // namespace wcomp
