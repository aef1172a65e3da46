#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "bahnlab/rational.hpp"

namespace bahnlab {

// splitmix64; used to derive per-task seeds from (base_seed, indices) so that
// results do not depend on worker scheduling.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) { return mix64(a ^ mix64(b)); }
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(mix64(a, b), c);
}

inline std::uint64_t hash_string(const std::string& s) {
  // FNV-1a, 64-bit
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic, portable random source. The engine is std::mt19937_64 (its
// output stream is pinned by the standard); every distribution below is
// hand-rolled from engine output so results are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // 53-bit uniform in [0, 1).
  double next_unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Exact Bernoulli(p) for rational p: compares the 53-bit draw against p
  // without any floating-point rounding.
  bool bernoulli(const Rat& p) {
    std::uint64_t k = eng_() >> 11;
    static const BigInt two53 = BigInt(1) << 53;
    return BigInt(k) * denominator(p) < numerator(p) * two53;
  }

 private:
  std::mt19937_64 eng_;
};

enum class PriceDist { uniform, normal, pareto };

inline const char* to_string(PriceDist d) {
  switch (d) {
    case PriceDist::uniform: return "uniform";
    case PriceDist::normal: return "normal";
    case PriceDist::pareto: return "pareto";
  }
  return "?";
}

// Ticket price samplers (doubles; quantized to cents by quantize_price).
//   uniform: U[25, 75]                     (mean 50)
//   normal:  50 + 5*z, clamped at 0        (mean 50, variance 25; Box-Muller,
//                                           cosine branch, two draws per sample)
//   pareto:  Lomax(shape 2, scale 50)      (inverse CDF)
inline double sample_price(Rng& rng, PriceDist dist) {
  switch (dist) {
    case PriceDist::uniform:
      return 25.0 + 50.0 * rng.next_unit();
    case PriceDist::normal: {
      double u1 = rng.next_unit();
      double u2 = rng.next_unit();
      if (u1 <= 0) u1 = 0x1.0p-53;
      double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
      double x = 50.0 + 5.0 * z;
      return x < 0 ? 0.0 : x;
    }
    case PriceDist::pareto: {
      double u = rng.next_unit();
      return 50.0 * (1.0 / std::sqrt(1.0 - u) - 1.0);
    }
  }
  return 0.0;
}

// Exponential(mean) via inverse CDF; one draw per sample.
inline double sample_exp(Rng& rng, double mean) {
  double u = rng.next_unit();
  return -mean * std::log1p(-u);
}

// Prices are kept on a cent grid so that all downstream cost accounting is
// exact. Rounds half away from zero, clamps at 0.
inline Rat quantize_price(double value) {
  if (value <= 0) return Rat(0);
  long long cents = std::llround(value * 100.0);
  if (cents < 0) cents = 0;
  return Rat(cents, 100);
}

}  // namespace bahnlab
