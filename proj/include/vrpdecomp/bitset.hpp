#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace vrpdecomp {

/// Fixed-width 128-bit set used for customer memories (ng-sets, U sets) and
/// for subset-row resource vectors. Bit i is customer i (bit 0 is unused for
/// customers since vertex 0 is the source depot).
class SmallBitset {
 public:
  static constexpr int kCapacity = 128;

  constexpr SmallBitset() = default;

  constexpr bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  constexpr void set(int i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  constexpr void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  constexpr void flip(int i) { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }

  constexpr bool empty() const { return (words_[0] | words_[1]) == 0; }
  constexpr int count() const { return std::popcount(words_[0]) + std::popcount(words_[1]); }

  constexpr bool subset_of(const SmallBitset& o) const {
    return (words_[0] & ~o.words_[0]) == 0 && (words_[1] & ~o.words_[1]) == 0;
  }

  constexpr SmallBitset operator&(const SmallBitset& o) const {
    SmallBitset r;
    r.words_ = {words_[0] & o.words_[0], words_[1] & o.words_[1]};
    return r;
  }
  constexpr SmallBitset operator|(const SmallBitset& o) const {
    SmallBitset r;
    r.words_ = {words_[0] | o.words_[0], words_[1] | o.words_[1]};
    return r;
  }
  /// Bits set here and clear in `o`.
  constexpr SmallBitset minus(const SmallBitset& o) const {
    SmallBitset r;
    r.words_ = {words_[0] & ~o.words_[0], words_[1] & ~o.words_[1]};
    return r;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int w = 0; w < 2; ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        out.push_back(w * 64 + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (int w = 0; w < 2; ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(w * 64 + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
  }

  /// Ordering compares the set as a 128-bit number with the lowest bit least
  /// significant; only used to make node numbering canonical.
  constexpr std::strong_ordering operator<=>(const SmallBitset& o) const {
    if (auto c = words_[1] <=> o.words_[1]; c != 0) return c;
    return words_[0] <=> o.words_[0];
  }
  constexpr bool operator==(const SmallBitset&) const = default;

  std::size_t hash() const {
    std::uint64_t h = words_[0] * 0x9E3779B97F4A7C15ULL;
    h ^= words_[1] + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }

 private:
  std::array<std::uint64_t, 2> words_{0, 0};
};

}  // namespace vrpdecomp
