#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace logvlasov {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// A block cipher on a 128-bit counter under a 64-bit key; any counter value
// can be evaluated independently, which is what makes per-particle streams
// reproducible regardless of the thread count.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
      const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
      const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
      const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

// One stream per (seed, particle id, event index).  Draws inside the event
// advance a 32-bit block counter; each block yields two doubles.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t particle_id, std::uint32_t event_index)
      : seed_(seed), pid_(particle_id), event_(event_index) {}

  // Uniform on [0,1), 53-bit mantissa from one 64-bit half of a block.
  double uniform() {
    if (cached_) {
      cached_ = false;
      return to_unit(hi_);
    }
    const auto out = next_block();
    hi_ = (std::uint64_t(out[2]) << 32) | out[3];
    cached_ = true;
    return to_unit((std::uint64_t(out[0]) << 32) | out[1]);
  }

  // Box-Muller pair of standard normals.
  std::array<double, 2> gaussian_pair() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double a = 2.0 * M_PI * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  double exponential() { return -std::log1p(-uniform()); }

  // Flux-weighted normal speed: density v e^{-v^2/2} on v > 0.
  double rayleigh() { return std::sqrt(2.0 * exponential()); }

 private:
  std::array<std::uint32_t, 4> next_block() {
    if (block_ == UINT32_MAX) throw std::runtime_error("random stream exhausted");
    const std::array<std::uint32_t, 4> ctr = {std::uint32_t(pid_), std::uint32_t(pid_ >> 32),
                                              event_, block_++};
    const std::array<std::uint32_t, 2> key = {std::uint32_t(seed_), std::uint32_t(seed_ >> 32)};
    return Philox4x32::block(ctr, key);
  }

  static double to_unit(std::uint64_t bits) {
    return double(bits >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed_;
  std::uint64_t pid_;
  std::uint32_t event_;
  std::uint32_t block_ = 0;
  std::uint64_t hi_ = 0;
  bool cached_ = false;
};

}  // namespace logvlasov
