#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace gstarx {

// Upper bound on graph size. Exact solvers are further capped by table and
// matrix limits (see values.hpp); this constant only bounds the bitset width
// and can be raised by recompiling.
inline constexpr int kMaxNodes = 256;

/// A set of node indices, stored as a fixed-width bitset.
class Coalition {
 public:
  static constexpr int kWords = kMaxNodes / 64;

  constexpr Coalition() = default;

  static Coalition single(int i) {
    Coalition c;
    c.insert(i);
    return c;
  }

  /// Nodes 0..63 given as a plain mask.
  static constexpr Coalition from_mask(std::uint64_t mask) {
    Coalition c;
    c.words_[0] = mask;
    return c;
  }

  static Coalition full(int n) {
    Coalition c;
    for (int i = 0; i < n; ++i) c.insert(i);
    return c;
  }

  static Coalition of(std::initializer_list<int> nodes) {
    Coalition c;
    for (int i : nodes) c.insert(i);
    return c;
  }

  bool contains(int i) const {
    return (words_[word(i)] >> bit(i)) & 1u;
  }

  void insert(int i) { words_[word(i)] |= std::uint64_t{1} << bit(i); }
  void erase(int i) { words_[word(i)] &= ~(std::uint64_t{1} << bit(i)); }

  int size() const {
    int count = 0;
    for (std::uint64_t w : words_) count += std::popcount(w);
    return count;
  }

  bool empty() const {
    for (std::uint64_t w : words_)
      if (w) return false;
    return true;
  }

  bool is_subset_of(const Coalition& other) const {
    for (int k = 0; k < kWords; ++k)
      if (words_[k] & ~other.words_[k]) return false;
    return true;
  }

  bool intersects(const Coalition& other) const {
    for (int k = 0; k < kWords; ++k)
      if (words_[k] & other.words_[k]) return true;
    return false;
  }

  /// Smallest member, or -1 when empty.
  int lowest() const {
    for (int k = 0; k < kWords; ++k)
      if (words_[k]) return k * 64 + std::countr_zero(words_[k]);
    return -1;
  }

  Coalition& operator|=(const Coalition& o) {
    for (int k = 0; k < kWords; ++k) words_[k] |= o.words_[k];
    return *this;
  }
  Coalition& operator&=(const Coalition& o) {
    for (int k = 0; k < kWords; ++k) words_[k] &= o.words_[k];
    return *this;
  }
  Coalition& operator-=(const Coalition& o) {
    for (int k = 0; k < kWords; ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  friend Coalition operator|(Coalition a, const Coalition& b) { return a |= b; }
  friend Coalition operator&(Coalition a, const Coalition& b) { return a &= b; }
  friend Coalition operator-(Coalition a, const Coalition& b) { return a -= b; }

  friend bool operator==(const Coalition&, const Coalition&) = default;

  /// Low 64 bits; sufficient whenever the graph has at most 64 nodes.
  std::uint64_t low_mask() const { return words_[0]; }

  /// Visits members in ascending order.
  template <class F>
  void for_each(F&& f) const {
    for (int k = 0; k < kWords; ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        f(k * 64 + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  std::vector<int> nodes() const {
    std::vector<int> out;
    out.reserve(size());
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  /// Position of member i among members in ascending order.
  int rank_of(int i) const {
    int r = 0;
    for (int k = 0; k < word(i); ++k) r += std::popcount(words_[k]);
    std::uint64_t below = (std::uint64_t{1} << bit(i)) - 1;
    return r + std::popcount(words_[word(i)] & below);
  }

  /// Member with the given rank (0-based, ascending); -1 if out of range.
  int nth(int rank) const {
    int found = -1;
    for_each([&](int i) {
      if (rank-- == 0) found = i;
    });
    return found;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](int i) {
      if (!first) s += ',';
      s += std::to_string(i);
      first = false;
    });
    return s + "}";
  }

  struct Hash {
    std::size_t operator()(const Coalition& c) const {
      std::uint64_t h = 0x9e3779b97f4a7c15ULL;
      for (std::uint64_t w : c.words_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

 private:
  static constexpr int word(int i) { return i >> 6; }
  static constexpr int bit(int i) { return i & 63; }

  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace gstarx
