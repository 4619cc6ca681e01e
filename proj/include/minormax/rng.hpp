#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace minormax {

/// Identifies one Monte Carlo replicate. Every random stream a replicate
/// uses is a pure function of (master_seed, replicate_index) plus a fixed
/// stream label, so results do not depend on thread count or scheduling.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t replicate_index = 0;
};

/// Labels of the independent streams inside one replicate.
enum class Stream : std::uint32_t {
  kGoeDiagonal = 1,
  kGoeOffDiagonal = 2,
  kWishartColumn = 3,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for stream `label`, sub-index `index` (e.g. a Wishart column) of
/// replicate `seed`: each field is absorbed through one splitmix64 step.
inline constexpr std::uint64_t derive_stream_seed(const SeedSpec& seed, Stream label, std::uint64_t index = 0) {
  std::uint64_t state = seed.master_seed;
  std::uint64_t h = splitmix64(state);
  state = h ^ seed.replicate_index;
  h = splitmix64(state);
  state = h ^ (static_cast<std::uint64_t>(label) << 56);
  h = splitmix64(state);
  state = h ^ index;
  return splitmix64(state);
}

/// xoshiro256++ (Blackman and Vigna), state filled from splitmix64.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) {
      word = splitmix64(sm);
    }
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  constexpr result_type operator()() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on (0, 1], 53-bit resolution.
  double uniform_open_closed() { return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_{};
};

/// Exact N(0, 1) sampler: 128-layer ziggurat in Doornik's ZIGNOR form
/// (R = 3.442619855899, V = 9.91256303526217e-3) with Marsaglia's
/// exponential-rejection tail. One 64-bit draw supplies the layer index
/// (low 7 bits) and the signed abscissa (top 53 bits). The layer table is
/// computed once and is part of the reproducibility contract.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed), table_(&Table::instance()) {}

  double operator()() {
    for (;;) {
      const std::uint64_t bits = rng_();
      const unsigned layer = static_cast<unsigned>(bits & 0x7f);
      const double u = 2.0 * (static_cast<double>(bits >> 11) * 0x1.0p-53) - 1.0;
      if (std::abs(u) < table_->ratio[layer]) {
        return u * table_->x[layer];
      }
      if (layer == 0) {
        return tail(u < 0.0);
      }
      const double x = u * table_->x[layer];
      const double f0 = std::exp(-0.5 * (table_->x[layer] * table_->x[layer] - x * x));
      const double f1 = std::exp(-0.5 * (table_->x[layer + 1] * table_->x[layer + 1] - x * x));
      if (f1 + rng_.uniform_open_closed() * (f0 - f1) < 1.0) {
        return x;
      }
    }
  }

  Xoshiro256pp& engine() { return rng_; }

 private:
  static constexpr int kLayers = 128;
  static constexpr double kR = 3.442619855899;
  static constexpr double kV = 9.91256303526217e-3;

  struct Table {
    std::array<double, kLayers + 1> x{};
    std::array<double, kLayers> ratio{};
    static const Table& instance();
  };

  double tail(bool negative) {
    double x = 0.0;
    double y = 0.0;
    do {
      x = std::log(rng_.uniform_open_closed()) / kR;
      y = std::log(rng_.uniform_open_closed());
    } while (-2.0 * y < x * x);
    return negative ? x - kR : kR - x;
  }

  Xoshiro256pp rng_;
  const Table* table_;
};

}  // namespace minormax
