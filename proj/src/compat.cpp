#include <algorithm>
#include <limits>
#include <set>

#include "wcomp/errors.hpp"
#include "wcomp/search.hpp"

namespace wcomp {

std::size_t SearchProblem::l() const noexcept {
  std::size_t l = std::numeric_limits<std::size_t>::max();
  for (const CompositionSpace& s : spaces) l = std::min(l, s.l());
  return spaces.empty() ? 0 : l;
}

std::vector<Rank> SearchProblem::limits() const {
  return micro_limits.empty() ? default_micro_limits(r()) : micro_limits;
}

std::vector<Rank> default_micro_limits(std::size_t r) {
  constexpr Rank kUnbounded = std::numeric_limits<Rank>::max();
  if (r == 2) return {20, kUnbounded};
  std::vector<Rank> caps(r, 12);
  if (r > 0) caps.back() = kUnbounded;
  return caps;
}

BigInt product_of(const std::vector<Family>& families) {
  BigInt p = 1;
  for (const Family& f : families) p *= f.size();
  return families.empty() ? BigInt(0) : p;
}

PolarPair::PolarPair(const CompositionSpace& first, const CompositionSpace& second, std::size_t t)
    : first_(first), second_(second), t_(t) {
  if (first.size() > Family::kMaxDenseSize || second.size() > Family::kMaxDenseSize)
    throw InvalidArgument("spaces too large for a compatibility table");
  const std::size_t l = std::min(first.l(), second.l());
  const std::vector<Composition> us = first.elements();
  const std::vector<Composition> vs = second.elements();
  rows_first_.assign(us.size(), DynamicBitset(vs.size()));
  rows_second_.assign(vs.size(), DynamicBitset(us.size()));
  for (std::size_t i = 0; i < us.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j)
      if (agree_count(us[i], vs[j], l) >= t) {
        rows_first_[i].set(j);
        rows_second_[j].set(i);
      }
}

DynamicBitset PolarPair::polar_of_first(const DynamicBitset& s) const {
  DynamicBitset out(static_cast<std::size_t>(second_.size()), true);
  s.for_each([&](std::size_t i) { out &= rows_first_[i]; });
  return out;
}

DynamicBitset PolarPair::polar_of_second(const DynamicBitset& s) const {
  DynamicBitset out(static_cast<std::size_t>(first_.size()), true);
  s.for_each([&](std::size_t j) { out &= rows_second_[j]; });
  return out;
}

namespace {

// Coordinates on which a tuple agrees, with the shared values; -1 marks a
// coordinate where the tuple already disagrees.
using AgreementProfile = std::vector<std::int64_t>;

void collect_profiles(const std::vector<std::vector<Composition>>& lists, std::size_t depth, AgreementProfile& cur,
                      std::set<AgreementProfile>& out) {
  if (depth == lists.size()) {
    out.insert(cur);
    return;
  }
  for (const Composition& u : lists[depth]) {
    AgreementProfile next = cur;
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (depth == 0)
        next[i] = u[i];
      else if (next[i] >= 0 && next[i] != static_cast<std::int64_t>(u[i]))
        next[i] = -1;
    }
    collect_profiles(lists, depth + 1, next, out);
  }
}

}  // namespace

Family compat_set(const std::vector<CompositionSpace>& spaces, std::size_t target,
                  const std::vector<std::vector<Composition>>& chosen, std::size_t t) {
  if (target >= spaces.size()) throw InvalidArgument("compat_set: target index out of range");
  if (chosen.size() != spaces.size()) throw InvalidArgument("compat_set: one chosen list per space is required");
  std::size_t l = std::numeric_limits<std::size_t>::max();
  for (const CompositionSpace& s : spaces) l = std::min(l, s.l());

  std::vector<std::vector<Composition>> others;
  for (std::size_t j = 0; j < spaces.size(); ++j) {
    if (j == target) continue;
    for (const Composition& u : chosen[j])
      if (!spaces[j].contains(u))
        throw InvalidArgument("compat_set: " + u.to_string() + " is not in P(" + spaces[j].to_string() + ")");
    if (chosen[j].empty()) return Family::full(spaces[target]);
    others.push_back(chosen[j]);
  }

  std::set<AgreementProfile> profiles;
  AgreementProfile start(l, 0);
  collect_profiles(others, 0, start, profiles);

  Family out(spaces[target]);
  Rank k = 0;
  for (const Composition& v : spaces[target]) {
    const bool ok = std::all_of(profiles.begin(), profiles.end(), [&](const AgreementProfile& p) {
      std::size_t agree = 0;
      for (std::size_t i = 0; i < l; ++i) agree += (p[i] >= 0 && p[i] == static_cast<std::int64_t>(v[i])) ? 1U : 0U;
      return agree >= t;
    });
    if (ok) out.insert_rank(k);
    ++k;
  }
  return out;
}

std::pair<Family, Family> closure_r2(const SearchProblem& problem, const Family& s) {
  if (problem.r() != 2) throw InvalidArgument("closure_r2 requires exactly two spaces");
  if (!(s.space() == problem.spaces[0])) throw InvalidArgument("closure_r2: S must live in the first space");
  const PolarPair polar(problem.spaces[0], problem.spaces[1], problem.t);
  DynamicBitset second = polar.polar_of_first(s.bits());
  DynamicBitset back = polar.polar_of_second(second);
  return {Family(problem.spaces[1], std::move(second)), Family(problem.spaces[0], std::move(back))};
}

}  // namespace wcomp
