#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wcomp/bigint.hpp"

namespace wcomp {

using Part = std::uint32_t;
using Rank = std::uint64_t;

/// A weak composition: an ordered tuple of non-negative integers.
///
/// Coordinates are 1-based in the public accessors (`coord`), matching the
/// usual [l] = {1, ..., l} convention; `parts()` exposes the raw 0-based
/// storage.
class Composition {
 public:
  Composition() = default;
  explicit Composition(std::vector<Part> parts) : parts_(std::move(parts)) {}
  Composition(std::initializer_list<Part> parts) : parts_(parts) {}

  std::size_t length() const noexcept { return parts_.size(); }
  std::uint64_t sum() const noexcept;

  /// Value at 1-based coordinate i. Throws InvalidArgument when out of range.
  Part coord(std::size_t i) const;
  Part operator[](std::size_t zero_based) const noexcept { return parts_[zero_based]; }
  std::span<const Part> parts() const noexcept { return parts_; }

  /// Text form "(p1,p2,...)".
  std::string to_string() const;
  /// Parses "(0,2,1)" or "0,2,1".
  static Composition parse(std::string_view text);

  friend auto operator<=>(const Composition&, const Composition&) = default;
  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<Part> parts_;
};

/// Number of weak compositions of n into l parts, C(n+l-1, l-1). Throws on l = 0.
BigInt count_compositions(std::uint64_t n, std::uint64_t l);

/// The universe P(n,l) of weak compositions of n into l parts, ordered
/// lexicographically ascending on the part tuple. Ranks are 0-based.
class CompositionSpace {
 public:
  /// Throws InvalidArgument when l = 0 or the cardinality does not fit a Rank.
  CompositionSpace(Part n, std::size_t l);

  Part n() const noexcept { return n_; }
  std::size_t l() const noexcept { return l_; }
  Rank size() const noexcept { return size_; }
  BigInt cardinality() const { return BigInt(size_); }

  bool contains(const Composition& u) const noexcept;

  Rank rank(const Composition& u) const;
  Composition unrank(Rank k) const;

  Composition first() const;
  /// Advances u to its successor in the enumeration order; false at the end.
  bool next(Composition& u) const;

  /// Every element in rank order.
  std::vector<Composition> elements() const;

  std::string to_string() const;  // "n:l"
  static CompositionSpace parse(std::string_view text);

  friend bool operator==(const CompositionSpace& a, const CompositionSpace& b) noexcept {
    return a.n_ == b.n_ && a.l_ == b.l_;
  }

  class Iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Composition;
    using difference_type = std::ptrdiff_t;
    using pointer = const Composition*;
    using reference = const Composition&;

    Iterator() = default;
    Iterator(const CompositionSpace* space, bool at_end);

    reference operator*() const noexcept { return current_; }
    pointer operator->() const noexcept { return &current_; }
    Iterator& operator++();
    Iterator operator++(int) {
      Iterator copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const Iterator& a, const Iterator& b) noexcept { return a.done_ == b.done_ && (a.done_ || a.current_ == b.current_); }

   private:
    const CompositionSpace* space_ = nullptr;
    Composition current_;
    bool done_ = true;
  };

  Iterator begin() const { return Iterator(this, false); }
  Iterator end() const { return Iterator(this, true); }

 private:
  // counts(k, m): number of weak compositions of m into k parts, for k <= l, m <= n.
  Rank counts(std::size_t k, Part m) const noexcept { return (*table_)[k * (std::size_t{n_} + 1) + m]; }
  void check_member(const Composition& u) const;

  Part n_;
  std::size_t l_;
  Rank size_;
  std::shared_ptr<const std::vector<Rank>> table_;
};

/// Range over P(n,l) in enumeration order.
inline const CompositionSpace& enumerate(const CompositionSpace& space) { return space; }

/// I(u_1, ..., u_r) restricted to the first l coordinates: the sorted 1-based
/// indices where all compositions take the same value.
std::vector<std::size_t> agree_set(std::span<const Composition> us, std::size_t l);

/// |I(u, v)| over the first l coordinates, without validation.
inline std::size_t agree_count(const Composition& u, const Composition& v, std::size_t l) noexcept {
  std::size_t c = 0;
  for (std::size_t i = 0; i < l; ++i) c += (u[i] == v[i]) ? 1U : 0U;
  return c;
}

/// R(xs; u): deletes the 1-based coordinates xs (indices refer to u). An
/// empty xs is the identity.
Composition remove_coords(const Composition& u, std::span<const std::size_t> xs);

/// Parses a comma-separated list of non-negative integers ("1,3").
std::vector<std::size_t> parse_index_list(std::string_view text);

}  // namespace wcomp
