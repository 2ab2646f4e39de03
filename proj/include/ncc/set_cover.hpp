#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ncc {

/// Fixed-width dynamic bitset used by the cover and clique searches.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  std::size_t count_and(const Bitset& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& subtract(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  /// Index of the lowest set bit at or after `from`, or size().
  std::size_t next(std::size_t from) const {
    std::size_t w = from >> 6;
    if (w >= words_.size()) return nbits_;
    std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (cur) return (w << 6) + static_cast<std::size_t>(std::countr_zero(cur));
      if (++w >= words_.size()) return nbits_;
      cur = words_[w];
    }
  }
  const std::vector<std::uint64_t>& words() const { return words_; }
  bool operator==(const Bitset&) const = default;
  auto operator<=>(const Bitset& o) const { return words_ <=> o.words_; }

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto w : b.words()) h = (h ^ w) * 1099511628211ull + (h >> 29);
    return h;
  }
};

struct SetCoverResult {
  bool feasible = false;
  std::vector<std::size_t> chosen;  ///< indices into the input family, ascending
  std::size_t nodes = 0;            ///< search nodes visited
};

/// Exact minimum set cover of {0..universe-1}. Greedy upper bound, then
/// depth-first branch and bound on the least-covered element; ties resolve to
/// the lowest set index so results are deterministic.
SetCoverResult min_set_cover(std::size_t universe, const std::vector<Bitset>& sets);

}  // namespace ncc
