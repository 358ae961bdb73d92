#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace wcomp {

// Fixed-width bit set whose width is chosen at runtime. Bit i stands for the
// element of rank i in some composition space.
class DynamicBitset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  DynamicBitset() = default;
  explicit DynamicBitset(std::size_t nbits, bool value = false)
      : nbits_(nbits), words_((nbits + kWordBits - 1) / kWordBits, value ? ~Word{0} : Word{0}) {
    trim();
  }

  std::size_t size() const noexcept { return nbits_; }
  bool empty_width() const noexcept { return nbits_ == 0; }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void set_all() noexcept {
    std::fill(words_.begin(), words_.end(), ~Word{0});
    trim();
  }
  void reset_all() noexcept { std::fill(words_.begin(), words_.end(), Word{0}); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }
  bool any() const noexcept { return !none(); }

  // Index of the first set bit at or after `from`, or size() if there is none.
  std::size_t find_next(std::size_t from) const noexcept {
    if (from >= nbits_) return nbits_;
    std::size_t wi = from / kWordBits;
    Word w = words_[wi] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (w != 0) return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == words_.size()) return nbits_;
      w = words_[wi];
    }
  }
  std::size_t find_first() const noexcept { return find_next(0); }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      Word w = words_[wi];
      while (w != 0) {
        f(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  DynamicBitset& operator&=(const DynamicBitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  DynamicBitset& operator|=(const DynamicBitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // this &= ~o
  DynamicBitset& subtract(const DynamicBitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend DynamicBitset operator&(DynamicBitset a, const DynamicBitset& b) noexcept { return a &= b; }
  friend DynamicBitset operator|(DynamicBitset a, const DynamicBitset& b) noexcept { return a |= b; }

  std::size_t and_count(const DynamicBitset& o) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }
  bool is_subset_of(const DynamicBitset& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }
  // True iff this and o agree on every bit below `limit`.
  bool equal_below(const DynamicBitset& o, std::size_t limit) const noexcept {
    const std::size_t full = limit / kWordBits;
    for (std::size_t i = 0; i < full; ++i)
      if (words_[i] != o.words_[i]) return false;
    const std::size_t rem = limit % kWordBits;
    if (rem == 0) return true;
    const Word mask = (Word{1} << rem) - 1;
    return ((words_[full] ^ o.words_[full]) & mask) == 0;
  }

  // Compares the ascending index sequences of the two sets lexicographically.
  friend bool lex_less(const DynamicBitset& a, const DynamicBitset& b) noexcept {
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      const Word diff = a.words_[i] ^ b.words_[i];
      if (diff == 0) continue;
      const std::size_t d = i * kWordBits + static_cast<std::size_t>(std::countr_zero(diff));
      // The sequence holding d is smaller unless the other one ends before d.
      if (a.test(d)) return b.find_next(d + 1) < b.size();
      return a.find_next(d + 1) >= a.size();
    }
    return false;
  }

  friend bool operator==(const DynamicBitset&, const DynamicBitset&) = default;

 private:
  void trim() noexcept {
    const std::size_t rem = nbits_ % kWordBits;
    if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
  }

  std::size_t nbits_ = 0;
  std::vector<Word> words_;
};

}  // namespace wcomp
