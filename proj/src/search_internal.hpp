#pragma once

#include <vector>

#include "wcomp/bigint.hpp"
#include "wcomp/composition.hpp"

namespace wcomp::detail {

// Product of the star sizes |{u : u(i) = 0 for i in T}| for any t-set T of
// [l]; zero when t > l since no t-set fits.
inline BigInt star_product(const std::vector<CompositionSpace>& spaces, std::size_t t) {
  if (spaces.empty()) return 0;
  std::size_t l = spaces.front().l();
  for (const CompositionSpace& s : spaces) l = s.l() < l ? s.l() : l;
  if (t > l) return 0;
  BigInt p = 1;
  for (const CompositionSpace& s : spaces) {
    if (s.l() == t)
      p *= (s.n() == 0 ? 1 : 0);
    else
      p *= count_compositions(s.n(), s.l() - t);
  }
  return p;
}

}  // namespace wcomp::detail
