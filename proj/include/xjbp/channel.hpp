#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xjbp/bits.hpp"

namespace xjbp {

// splitmix64: fully specified, trivially portable across languages; the
// basis of the per-frame determinism contract.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform01() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double uniform_open0() {  // (0, 1]
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }
};

// One-shot splitmix64 step.
std::uint64_t mix64(std::uint64_t x);

// Standard normal pairs via Box-Muller over a SplitMix64 stream.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}
  explicit GaussianSource(SplitMix64 rng) : rng_(rng) {}

  double next();

 private:
  SplitMix64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct ChannelParams {
  double ebno_db = 0.0;
  double rate = 0.0;
  double sigma2 = 0.0;  // 1 / (2 * rate * 10^(ebno_db/10)), unit-energy BPSK

  static ChannelParams make(double ebno_db, double rate);
};

// BPSK over AWGN: s = 1 - 2x, y = s + noise(0, sigma2), llr = 2y/sigma2,
// clamped to +-kSat. Deterministic for a given seed.
std::vector<double> transmit(const BitVector& x, const ChannelParams& params,
                             std::uint64_t seed);
void transmit_into(const BitVector& x, const ChannelParams& params,
                   GaussianSource& noise, std::span<double> llrs);

// Seed chain for one simulated frame; depends only on its arguments, never
// on thread placement.
std::uint64_t frame_seed(std::uint64_t base_seed, std::uint32_t variant_id,
                         double ebno_db, std::uint64_t frame_index);

}  // namespace xjbp
