// Counter-based random number generation.
//
// Every variate is a pure function of (seed, stream, index). Simulations
// address randomness by slot and by link instead of advancing shared state,
// so draws can be skipped freely and adding secondary users never perturbs
// the streams of existing ones. Runs are reproducible bit for bit from the
// seed alone.
#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace cra {

// Philox4x32-10 block cipher (Salmon et al., SC'11 parameters). Verified
// against the published known-answer vectors in the unit tests.
struct Philox4x32 {
  struct Block {
    uint32_t x[4];
  };

  static Block round10(const uint32_t ctr[4], const uint32_t key[2]) {
    uint32_t c0 = ctr[0], c1 = ctr[1], c2 = ctr[2], c3 = ctr[3];
    uint32_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
      const uint64_t p0 = uint64_t{0xD2511F53u} * c0;
      const uint64_t p1 = uint64_t{0xCD9E8D57u} * c2;
      const uint32_t n0 = uint32_t(p1 >> 32) ^ c1 ^ k0;
      const uint32_t n1 = uint32_t(p1);
      const uint32_t n2 = uint32_t(p0 >> 32) ^ c3 ^ k1;
      const uint32_t n3 = uint32_t(p0);
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    return Block{{c0, c1, c2, c3}};
  }

  // Counter layout: words {index_lo, index_hi, stream_lo, stream_hi},
  // key = {seed_lo, seed_hi}.
  static Block block(uint64_t seed, uint64_t stream, uint64_t index) {
    const uint32_t ctr[4] = {uint32_t(index), uint32_t(index >> 32),
                             uint32_t(stream), uint32_t(stream >> 32)};
    const uint32_t key[2] = {uint32_t(seed), uint32_t(seed >> 32)};
    return round10(ctr, key);
  }
};

// One logical random stream: a (seed, stream) pair addressed by draw index.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

  uint64_t bits(uint64_t index) const {
    const auto b = Philox4x32::block(seed_, stream_, index);
    return (uint64_t(b.x[1]) << 32) | b.x[0];
  }

  // Uniform on the open interval (0,1); never 0 or 1, safe under log().
  double uniform(uint64_t index) const {
    return (double(bits(index) >> 11) + 0.5) * 0x1.0p-53;
  }

  // Exponential with the given rate (mean 1/rate), by inverse CDF.
  double exponential(uint64_t index, double rate) const {
    return -std::log(uniform(index)) / rate;
  }

  bool bernoulli(uint64_t index, double p) const {
    return uniform(index) < p;
  }

 private:
  uint64_t seed_;
  uint64_t stream_;
};

// Stream identifiers: an 8-bit purpose tag and two 28-bit sub-indices.
constexpr uint64_t stream_id(uint64_t purpose, uint64_t i = 0, uint64_t j = 0) {
  return (purpose << 56) | ((i & 0xFFFFFFFull) << 28) | (j & 0xFFFFFFFull);
}

namespace streams {
// Slot simulator: one stream per link and per decision, indexed by slot.
inline constexpr uint64_t pu_arrival = 1;
inline constexpr uint64_t su_access = 2;      // i = SU
inline constexpr uint64_t su_own_gain = 3;    // i = SU, gain to own destination
inline constexpr uint64_t su_cross_gain = 4;  // i = interferer, j = receiver SU
inline constexpr uint64_t pu_to_su_gain = 5;  // i = receiver SU
inline constexpr uint64_t pu_own_gain = 6;
inline constexpr uint64_t su_to_pu_gain = 7;  // i = SU
// Monte Carlo channel oracle, indexed by sample.
inline constexpr uint64_t mc_own = 8;
inline constexpr uint64_t mc_pu_gain = 9;
inline constexpr uint64_t mc_interferer = 10;  // i = interferer
// Optimizer start points, indexed by coordinate.
inline constexpr uint64_t opt_start = 11;  // i = start number
}  // namespace streams

constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Deterministic child seed for a tagged sub-run (grid point, validation run).
inline uint64_t derive_seed(uint64_t base, std::initializer_list<uint64_t> tags) {
  uint64_t h = splitmix64(base);
  for (uint64_t t : tags) h = splitmix64(h ^ t);
  return h;
}

}  // namespace cra
