#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace apx {

// Fixed-size bitset over a cover universe.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static Bits full(std::size_t n) {
    Bits b(n);
    for (auto& w : b.w_) w = ~std::uint64_t{0};
    if (n % 64 && !b.w_.empty()) b.w_.back() = (std::uint64_t{1} << (n % 64)) - 1;
    return b;
  }

  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  std::size_t count_and(const Bits& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(w_[i] & o.w_[i]));
    return c;
  }
  bool none() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  void and_not(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
  }
  void or_with(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  }
  // Index of the lowest set bit, or size() when empty.
  std::size_t first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
    return n_;
  }
  template <typename F>
  void for_each(F f) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      for (std::uint64_t w = w_[i]; w; w &= w - 1)
        f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
  }

  std::size_t size() const { return n_; }
  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace apx
