#include "wcomp/composition.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>

#include "wcomp/errors.hpp"

namespace wcomp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw InvalidArgument("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

std::vector<std::uint64_t> parse_uint_list(std::string_view text, std::string_view what) {
  std::vector<std::uint64_t> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    out.push_back(parse_uint(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos), what));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::uint64_t Composition::sum() const noexcept {
  return std::accumulate(parts_.begin(), parts_.end(), std::uint64_t{0});
}

Part Composition::coord(std::size_t i) const {
  if (i == 0 || i > parts_.size())
    throw InvalidArgument("coordinate " + std::to_string(i) + " outside [1," + std::to_string(parts_.size()) + "]");
  return parts_[i - 1];
}

std::string Composition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i != 0) s += ',';
    s += std::to_string(parts_[i]);
  }
  s += ')';
  return s;
}

Composition Composition::parse(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '(') {
    if (text.back() != ')') throw InvalidArgument("malformed composition: '" + std::string(text) + "'");
    text = text.substr(1, text.size() - 2);
  }
  std::vector<Part> parts;
  for (std::uint64_t v : parse_uint_list(text, "composition part")) {
    if (v > std::numeric_limits<Part>::max()) throw InvalidArgument("composition part too large");
    parts.push_back(static_cast<Part>(v));
  }
  return Composition(std::move(parts));
}

BigInt count_compositions(std::uint64_t n, std::uint64_t l) {
  if (l == 0) throw InvalidArgument("a composition needs at least one part (l >= 1)");
  // C(n+l-1, l-1) by the multiplicative formula; every prefix product is exact.
  const std::uint64_t k = l - 1;
  BigInt acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc *= BigInt(n) + i;
    acc /= i;
  }
  return acc;
}

CompositionSpace::CompositionSpace(Part n, std::size_t l) : n_(n), l_(l), size_(0) {
  const BigInt card = count_compositions(n, l);
  if (card > std::numeric_limits<Rank>::max())
    throw InvalidArgument("P(" + std::to_string(n) + "," + std::to_string(l) + ") has " + card.str() +
                          " elements, beyond the native rank width");
  size_ = static_cast<Rank>(card);

  const std::size_t width = std::size_t{n} + 1;
  if (l >= (std::size_t{1} << 20) || width > (std::size_t{1} << 26) / (l + 1))
    throw InvalidArgument("P(" + std::to_string(n) + "," + std::to_string(l) + ") is too large to index");
  auto table = std::make_shared<std::vector<Rank>>((l + 1) * width, 0);
  (*table)[0] = 1;  // one way to write 0 with no parts
  for (std::size_t k = 1; k <= l; ++k) {
    Rank running = 0;
    for (std::size_t m = 0; m <= n; ++m) {
      // counts(k, m) = sum_{j <= m} counts(k-1, j)
      running += (*table)[(k - 1) * width + m];
      (*table)[k * width + m] = running;
    }
  }
  table_ = std::move(table);
}

bool CompositionSpace::contains(const Composition& u) const noexcept {
  return u.length() == l_ && u.sum() == n_;
}

void CompositionSpace::check_member(const Composition& u) const {
  if (!contains(u))
    throw InvalidArgument(u.to_string() + " is not an element of P(" + std::to_string(n_) + "," + std::to_string(l_) + ")");
}

Rank CompositionSpace::rank(const Composition& u) const {
  check_member(u);
  Rank r = 0;
  Part rem = n_;
  for (std::size_t i = 0; i + 1 < l_; ++i) {
    const std::size_t k = l_ - i;
    const Part a = u[i];
    // Elements with this prefix and a smaller value here: all of counts(k, rem)
    // minus those whose value here is at least a.
    r += counts(k, rem) - counts(k, rem - a);
    rem -= a;
  }
  return r;
}

Composition CompositionSpace::unrank(Rank k) const {
  if (k >= size_)
    throw InvalidArgument("rank " + std::to_string(k) + " outside [0," + std::to_string(size_) + ")");
  std::vector<Part> parts(l_, 0);
  Part rem = n_;
  for (std::size_t i = 0; i + 1 < l_; ++i) {
    const std::size_t tail = l_ - i - 1;
    Part a = 0;
    while (true) {
      const Rank block = counts(tail, rem - a);
      if (k < block) break;
      k -= block;
      ++a;
    }
    parts[i] = a;
    rem -= a;
  }
  parts[l_ - 1] = rem;
  return Composition(std::move(parts));
}

Composition CompositionSpace::first() const {
  std::vector<Part> parts(l_, 0);
  parts[l_ - 1] = n_;
  return Composition(std::move(parts));
}

bool CompositionSpace::next(Composition& u) const {
  std::vector<Part> p(u.parts().begin(), u.parts().end());
  // Rightmost position j < l-1 whose suffix still carries mass.
  std::uint64_t suffix = p[l_ - 1];
  for (std::size_t j = l_ - 1; j-- > 0;) {
    if (suffix > 0) {
      ++p[j];
      std::fill(p.begin() + static_cast<std::ptrdiff_t>(j) + 1, p.end(), Part{0});
      p[l_ - 1] = static_cast<Part>(suffix - 1);
      u = Composition(std::move(p));
      return true;
    }
    suffix += p[j];
  }
  return false;
}

std::vector<Composition> CompositionSpace::elements() const {
  std::vector<Composition> out;
  out.reserve(size_);
  for (const Composition& u : *this) out.push_back(u);
  return out;
}

std::string CompositionSpace::to_string() const { return std::to_string(n_) + ":" + std::to_string(l_); }

CompositionSpace CompositionSpace::parse(std::string_view text) {
  text = trim(text);
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw InvalidArgument("space must be written n:l, got '" + std::string(text) + "'");
  const std::uint64_t n = parse_uint(text.substr(0, colon), "space n");
  const std::uint64_t l = parse_uint(text.substr(colon + 1), "space l");
  if (n > std::numeric_limits<Part>::max()) throw InvalidArgument("space n too large");
  return CompositionSpace(static_cast<Part>(n), static_cast<std::size_t>(l));
}

CompositionSpace::Iterator::Iterator(const CompositionSpace* space, bool at_end) : space_(space), done_(at_end) {
  if (!at_end) current_ = space_->first();
}

CompositionSpace::Iterator& CompositionSpace::Iterator::operator++() {
  if (!done_ && !space_->next(current_)) {
    done_ = true;
    current_ = Composition();
  }
  return *this;
}

std::vector<std::size_t> agree_set(std::span<const Composition> us, std::size_t l) {
  if (us.empty()) throw InvalidArgument("agree_set needs at least one composition");
  for (const Composition& u : us)
    if (u.length() < l)
      throw InvalidArgument(u.to_string() + " is shorter than l = " + std::to_string(l));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < l; ++i) {
    const Part v = us.front()[i];
    if (std::all_of(us.begin() + 1, us.end(), [&](const Composition& w) { return w[i] == v; })) out.push_back(i + 1);
  }
  return out;
}

Composition remove_coords(const Composition& u, std::span<const std::size_t> xs) {
  std::vector<std::size_t> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] == 0 || sorted[i] > u.length())
      throw InvalidArgument("coordinate " + std::to_string(sorted[i]) + " outside [1," + std::to_string(u.length()) + "]");
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw InvalidArgument("coordinate " + std::to_string(sorted[i]) + " listed twice");
  }
  std::vector<Part> parts;
  parts.reserve(u.length() - sorted.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < u.length(); ++i) {
    if (next < sorted.size() && sorted[next] == i + 1) {
      ++next;
      continue;
    }
    parts.push_back(u[i]);
  }
  return Composition(std::move(parts));
}

std::vector<std::size_t> parse_index_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (std::uint64_t v : parse_uint_list(text, "index")) out.push_back(static_cast<std::size_t>(v));
  return out;
}

}  // namespace wcomp
