#include "fplab/fpset.hpp"

#include <bit>
#include <stdexcept>

namespace fplab {

namespace {
std::size_t word_count(std::uint64_t p) { return static_cast<std::size_t>((p + 63) / 64); }
}

FpSet::FpSet(FieldRef ctx) : ctx_(std::move(ctx)), words_(word_count(ctx_->prime()), 0) {}

FpSet FpSet::full(FieldRef ctx) {
  FpSet s(std::move(ctx));
  const std::uint64_t p = s.prime();
  for (auto& w : s.words_) w = ~0ull;
  s.clear_tail();
  s.card_ = p;
  return s;
}

FpSet FpSet::from_elements(FieldRef ctx, std::span<const std::uint64_t> xs) {
  FpSet s(std::move(ctx));
  for (std::uint64_t x : xs) s.insert(x);
  return s;
}

FpSet FpSet::from_elements(FieldRef ctx, std::initializer_list<std::uint64_t> xs) {
  return from_elements(std::move(ctx), std::span<const std::uint64_t>(xs.begin(), xs.size()));
}

void FpSet::insert(std::uint64_t x) {
  if (x >= prime()) throw std::out_of_range("FpSet::insert: residue out of range");
  std::uint64_t& w = words_[x >> 6];
  std::uint64_t bit = 1ull << (x & 63);
  if (!(w & bit)) { w |= bit; ++card_; }
}

void FpSet::erase(std::uint64_t x) {
  if (x >= prime()) throw std::out_of_range("FpSet::erase: residue out of range");
  std::uint64_t& w = words_[x >> 6];
  std::uint64_t bit = 1ull << (x & 63);
  if (w & bit) { w &= ~bit; --card_; }
}

std::vector<std::uint64_t> FpSet::elements() const {
  std::vector<std::uint64_t> out;
  out.reserve(card_);
  for_each([&](std::uint64_t x) { out.push_back(x); });
  return out;
}

void FpSet::recount() {
  std::uint64_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  card_ = c;
}

void FpSet::clear_tail() {
  const std::uint64_t p = prime();
  const unsigned tail = static_cast<unsigned>(p & 63);
  if (tail) words_.back() &= (1ull << tail) - 1;
}

FpSet FpSet::shifted(std::uint64_t c) const {
  const std::uint64_t p = prime();
  c %= p;
  if (c == 0 || card_ == 0) return *this;
  FpSet out(ctx_);
  for_each([&](std::uint64_t x) {
    std::uint64_t y = x + c;
    if (y >= p) y -= p;
    out.words_[y >> 6] |= 1ull << (y & 63);
  });
  out.card_ = card_;
  return out;
}

FpSet FpSet::negated() const {
  FpSet out(ctx_);
  const std::uint64_t p = prime();
  for_each([&](std::uint64_t x) {
    std::uint64_t y = x == 0 ? 0 : p - x;
    out.words_[y >> 6] |= 1ull << (y & 63);
  });
  out.card_ = card_;
  return out;
}

FpSet FpSet::complement() const {
  FpSet out(ctx_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  out.clear_tail();
  out.card_ = prime() - card_;
  return out;
}

FpSet operator&(const FpSet& a, const FpSet& b) {
  require_same_field(a, b);
  FpSet out(a.ctx_);
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] = a.words_[i] & b.words_[i];
  out.recount();
  return out;
}

FpSet operator|(const FpSet& a, const FpSet& b) {
  require_same_field(a, b);
  FpSet out(a.ctx_);
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] = a.words_[i] | b.words_[i];
  out.recount();
  return out;
}

FpSet FpSet::minus(const FpSet& other) const {
  require_same_field(*this, other);
  FpSet out(ctx_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & ~other.words_[i];
  out.recount();
  return out;
}

FpSet FpSet::sym_diff(const FpSet& other) const {
  require_same_field(*this, other);
  FpSet out(ctx_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] ^ other.words_[i];
  out.recount();
  return out;
}

std::uint64_t FpSet::intersection_size(const FpSet& other) const {
  require_same_field(*this, other);
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    c += static_cast<std::uint64_t>(std::popcount(words_[i] & other.words_[i]));
  return c;
}

bool FpSet::intersects(const FpSet& other) const {
  require_same_field(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

bool FpSet::is_subset_of(const FpSet& other) const {
  require_same_field(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool FpSet::operator==(const FpSet& other) const {
  return prime() == other.prime() && words_ == other.words_;
}

void require_same_field(const FpSet& a, const FpSet& b) {
  if (a.prime() != b.prime())
    throw std::invalid_argument("operands belong to different prime fields");
}

}  // namespace fplab
