#include "fplab/spectral.hpp"

#include <cmath>
#include <utility>

namespace fplab {

GridFunction::GridFunction(FieldRef ctx, std::vector<std::complex<double>> values, bool integral)
    : ctx_(std::move(ctx)), values_(std::move(values)), integral_(integral) {
  if (values_.size() != ctx_->prime())
    throw std::invalid_argument("GridFunction: value vector length must equal p");
}

GridFunction GridFunction::zero(FieldRef ctx) {
  std::uint64_t p = ctx->prime();
  return GridFunction(std::move(ctx), std::vector<std::complex<double>>(p, {0.0, 0.0}), true);
}

GridFunction GridFunction::constant(FieldRef ctx, std::complex<double> c) {
  std::uint64_t p = ctx->prime();
  bool integral = c.imag() == 0.0 && c.real() == std::round(c.real());
  return GridFunction(std::move(ctx), std::vector<std::complex<double>>(p, c), integral);
}

GridFunction GridFunction::delta(FieldRef ctx, std::uint64_t at) {
  std::uint64_t p = ctx->prime();
  std::vector<std::complex<double>> v(p, {0.0, 0.0});
  v.at(at) = {1.0, 0.0};
  return GridFunction(std::move(ctx), std::move(v), true);
}

GridFunction GridFunction::indicator(const FpSet& a) {
  std::vector<std::complex<double>> v(a.prime(), {0.0, 0.0});
  a.for_each([&](std::uint64_t x) { v[x] = {1.0, 0.0}; });
  return GridFunction(a.context(), std::move(v), true);
}

std::complex<double> GridFunction::sum() const {
  std::complex<double> s{0.0, 0.0};
  for (const auto& v : values_) s += v;
  return s;
}

double GridFunction::l1_norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::abs(v);
  return s;
}

double GridFunction::l2_norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return std::sqrt(s);
}

GridFunction GridFunction::scaled(std::complex<double> c) const {
  std::vector<std::complex<double>> v(values_);
  for (auto& x : v) x *= c;
  bool integral = integral_ && c.imag() == 0.0 && c.real() == std::round(c.real());
  return GridFunction(ctx_, std::move(v), integral);
}

GridFunction GridFunction::plus(const GridFunction& other) const {
  if (prime() != other.prime()) throw std::invalid_argument("GridFunction: field mismatch");
  std::vector<std::complex<double>> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values_[i];
  return GridFunction(ctx_, std::move(v), integral_ && other.integral_);
}

GridFunction GridFunction::minus(const GridFunction& other) const {
  if (prime() != other.prime()) throw std::invalid_argument("GridFunction: field mismatch");
  std::vector<std::complex<double>> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= other.values_[i];
  return GridFunction(ctx_, std::move(v), integral_ && other.integral_);
}

GridFunction GridFunction::pointwise(const GridFunction& other) const {
  if (prime() != other.prime()) throw std::invalid_argument("GridFunction: field mismatch");
  std::vector<std::complex<double>> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= other.values_[i];
  return GridFunction(ctx_, std::move(v), integral_ && other.integral_);
}

Spectrum dft(const GridFunction& f) {
  return Spectrum{f.context(), f.context()->forward_dft(f.values())};
}

GridFunction idft(const Spectrum& s) {
  const auto& ctx = *s.ctx;
  if (s.coeffs.size() != ctx.prime()) throw std::invalid_argument("idft: length mismatch");
  std::vector<std::complex<double>> tmp(s.coeffs);
  for (auto& z : tmp) z = std::conj(z);
  tmp = ctx.forward_dft(tmp);
  const double scale = 1.0 / static_cast<double>(ctx.prime());
  for (auto& z : tmp) z = std::conj(z) * scale;
  return GridFunction(s.ctx, std::move(tmp), false);
}

namespace {

GridFunction spectral_product(const GridFunction& f, const GridFunction& g, bool conjugate_f) {
  if (f.prime() != g.prime()) throw std::invalid_argument("spectral product: field mismatch");
  Spectrum fs = dft(f);
  Spectrum gs = dft(g);
  for (std::size_t i = 0; i < fs.coeffs.size(); ++i) {
    std::complex<double> a = conjugate_f ? std::conj(fs.coeffs[i]) : fs.coeffs[i];
    fs.coeffs[i] = a * gs.coeffs[i];
  }
  GridFunction raw = idft(fs);
  if (!(f.integral() && g.integral())) return raw;

  // exact-integer contract: round and verify
  std::vector<std::complex<double>> rounded(raw.values().begin(), raw.values().end());
  for (auto& v : rounded) {
    double r = std::round(v.real());
    double dev = std::abs(v - std::complex<double>{r, 0.0});
    if (dev >= 0.25)
      throw PrecisionError("spectral path deviation " + std::to_string(dev) +
                           " >= 0.25; exact contract exhausted");
    v = {r, 0.0};
  }
  return GridFunction(f.context(), std::move(rounded), true);
}

}  // namespace

GridFunction convolve(const GridFunction& f, const GridFunction& g) {
  return spectral_product(f, g, false);
}

GridFunction correlate(const GridFunction& f, const GridFunction& g) {
  return spectral_product(f, g, true);
}

double wiener_norm(const GridFunction& f) {
  Spectrum s = dft(f);
  double acc = 0.0;
  for (const auto& c : s.coeffs) acc += std::abs(c);
  return acc / static_cast<double>(f.prime());
}

double wiener_norm(const FpSet& a) { return wiener_norm(GridFunction::indicator(a)); }

double parseval_defect(const GridFunction& f) {
  double time_energy = 0.0;
  for (const auto& v : f.values()) time_energy += std::norm(v);
  if (time_energy == 0.0) return 0.0;
  Spectrum s = dft(f);
  double freq_energy = 0.0;
  for (const auto& c : s.coeffs) freq_energy += std::norm(c);
  const double p = static_cast<double>(f.prime());
  return std::abs(p * time_energy - freq_energy) / (p * time_energy);
}

}  // namespace fplab
