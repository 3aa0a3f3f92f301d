#include "xjbp/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "xjbp/kernels.hpp"

namespace xjbp {

std::uint64_t mix64(std::uint64_t x) {
  return SplitMix64(x).next();
}

double GaussianSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 stays away from zero so the log is finite.
  double u1 = rng_.uniform_open0();
  double u2 = rng_.uniform01();
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

ChannelParams ChannelParams::make(double ebno_db, double rate) {
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("code rate must lie in (0, 1]");
  }
  if (!std::isfinite(ebno_db)) {
    throw std::invalid_argument("Eb/N0 must be finite");
  }
  ChannelParams p;
  p.ebno_db = ebno_db;
  p.rate = rate;
  p.sigma2 = 1.0 / (2.0 * rate * std::pow(10.0, ebno_db / 10.0));
  return p;
}

void transmit_into(const BitVector& x, const ChannelParams& params,
                   GaussianSource& noise, std::span<double> llrs) {
  if (llrs.size() != x.size()) {
    throw std::invalid_argument("LLR buffer length does not match codeword");
  }
  double sigma = std::sqrt(params.sigma2);
  double scale = 2.0 / params.sigma2;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double s = x[i] ? -1.0 : 1.0;
    double y = s + sigma * noise.next();
    llrs[i] = std::min(std::max(y * scale, -kSat), kSat);
  }
}

std::vector<double> transmit(const BitVector& x, const ChannelParams& params,
                             std::uint64_t seed) {
  std::vector<double> llrs(x.size());
  GaussianSource noise(seed);
  transmit_into(x, params, noise, llrs);
  return llrs;
}

std::uint64_t frame_seed(std::uint64_t base_seed, std::uint32_t variant_id,
                         double ebno_db, std::uint64_t frame_index) {
  std::uint64_t ebno_key =
      static_cast<std::uint64_t>(std::llround(ebno_db * 1e6));
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ variant_id);
  h = mix64(h ^ ebno_key);
  h = mix64(h ^ frame_index);
  return h;
}

}  // namespace xjbp
