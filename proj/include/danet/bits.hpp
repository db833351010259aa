#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace danet {

/// Growable fixed-order bit set. Vertex sets never exceed a few hundred bits
/// here, so a plain word vector beats anything fancier.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::uint32_t nbits) : n_(nbits), w_((nbits + 63) / 64, 0) {}

  void resize(std::uint32_t nbits) {
    n_ = nbits;
    w_.resize((nbits + 63) / 64, 0);
  }

  std::uint32_t size_bits() const { return n_; }
  std::size_t word_count() const { return w_.size(); }
  std::uint64_t word(std::size_t i) const { return w_[i]; }

  bool test(std::uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::uint32_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::uint32_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

  std::uint32_t count() const {
    std::uint32_t c = 0;
    for (std::uint64_t w : w_) c += std::uint32_t(std::popcount(w));
    return c;
  }
  bool any() const {
    for (std::uint64_t w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  bool operator==(const Bits& o) const = default;

  /// true iff every bit of this is also set in o.
  bool subset_of(const Bits& o) const {
    assert(w_.size() == o.w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  void intersect(const Bits& o) {
    assert(w_.size() == o.w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  }

  /// Ascending set-bit traversal.
  template <class F>
  void for_each(F f) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      std::uint64_t w = w_[wi];
      while (w) {
        std::uint32_t b = std::uint32_t(std::countr_zero(w));
        f(std::uint32_t(wi * 64 + b));
        w &= w - 1;
      }
    }
  }

  /// Position of the k-th set bit (k zero-based; caller guarantees k < count()).
  std::uint32_t select(std::uint32_t k) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      std::uint32_t c = std::uint32_t(std::popcount(w_[wi]));
      if (k < c) {
        std::uint64_t w = w_[wi];
        while (k--) w &= w - 1;
        return std::uint32_t(wi * 64 + std::countr_zero(w));
      }
      k -= c;
    }
    assert(false && "select out of range");
    return 0;
  }

  std::uint64_t hash() const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (std::uint64_t w : w_) {
      h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace danet
