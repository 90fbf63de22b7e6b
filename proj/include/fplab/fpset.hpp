#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fplab/field.hpp"

namespace fplab {

/// Subset of F_p held as a dense bitmap with a cached cardinality.
/// Operations are pure: they never mutate their inputs.
class FpSet {
 public:
  explicit FpSet(FieldRef ctx);
  static FpSet full(FieldRef ctx);
  static FpSet from_elements(FieldRef ctx, std::span<const std::uint64_t> xs);
  static FpSet from_elements(FieldRef ctx, std::initializer_list<std::uint64_t> xs);

  const FieldRef& context() const noexcept { return ctx_; }
  std::uint64_t prime() const noexcept { return ctx_->prime(); }
  std::uint64_t size() const noexcept { return card_; }
  bool empty() const noexcept { return card_ == 0; }
  double density() const noexcept { return static_cast<double>(card_) / static_cast<double>(prime()); }

  bool contains(std::uint64_t x) const {
    return (words_[x >> 6] >> (x & 63)) & 1u;
  }
  void insert(std::uint64_t x);
  void erase(std::uint64_t x);

  std::vector<std::uint64_t> elements() const;

  template <class F>
  void for_each(F&& f) const {  // ascending order
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        unsigned b = static_cast<unsigned>(__builtin_ctzll(bits));
        f(static_cast<std::uint64_t>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  /// { x + c mod p : x in set }, cyclic bitmap shift.
  FpSet shifted(std::uint64_t c) const;
  /// { -x mod p }.
  FpSet negated() const;
  FpSet complement() const;

  friend FpSet operator&(const FpSet& a, const FpSet& b);
  friend FpSet operator|(const FpSet& a, const FpSet& b);
  FpSet minus(const FpSet& other) const;
  FpSet sym_diff(const FpSet& other) const;

  std::uint64_t intersection_size(const FpSet& other) const;
  bool intersects(const FpSet& other) const;
  bool is_subset_of(const FpSet& other) const;
  bool operator==(const FpSet& other) const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

 private:
  FieldRef ctx_;
  std::vector<std::uint64_t> words_;
  std::uint64_t card_ = 0;

  void recount();
  void clear_tail();
  friend void require_same_field(const FpSet& a, const FpSet& b);
};

/// Throws on a context mismatch (different primes).
void require_same_field(const FpSet& a, const FpSet& b);

}  // namespace fplab
