#pragma once

// Counter-based splittable RNG (Philox4x32-10, Salmon et al., SC 2011).
// Output is a pure function of (seed, stream_id, counter), so distinct
// stream ids give independent reproducible streams regardless of how work
// is partitioned across threads.

#include <cmath>
#include <cstdint>

namespace etaens {

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64() {
    if (buf_pos_ >= 2) refill();
    return buf_[buf_pos_++];
  }

  // 53-bit uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // standard normal via Box-Muller; one spare value is cached
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));  // u1 < 1 always
    const double a = 6.28318530717958647692528676655900577 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo,
                      std::uint32_t& hi) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(p);
    hi = static_cast<std::uint32_t>(p >> 32);
  }

  void refill() {
    std::uint32_t c[4] = {static_cast<std::uint32_t>(counter_),
                          static_cast<std::uint32_t>(counter_ >> 32),
                          static_cast<std::uint32_t>(stream_),
                          static_cast<std::uint32_t>(stream_ >> 32)};
    std::uint32_t k[2] = {static_cast<std::uint32_t>(seed_),
                          static_cast<std::uint32_t>(seed_ >> 32)};
    for (int round = 0; round < 10; ++round) {
      std::uint32_t lo0, hi0, lo1, hi1;
      mulhilo(0xD2511F53u, c[0], lo0, hi0);
      mulhilo(0xCD9E8D57u, c[2], lo1, hi1);
      const std::uint32_t n0 = hi1 ^ c[1] ^ k[0];
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c[3] ^ k[1];
      const std::uint32_t n3 = lo0;
      c[0] = n0;
      c[1] = n1;
      c[2] = n2;
      c[3] = n3;
      k[0] += 0x9E3779B9u;
      k[1] += 0xBB67AE85u;
    }
    buf_[0] = (static_cast<std::uint64_t>(c[1]) << 32) | c[0];
    buf_[1] = (static_cast<std::uint64_t>(c[3]) << 32) | c[2];
    buf_pos_ = 0;
    ++counter_;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::uint64_t buf_[2] = {0, 0};
  int buf_pos_ = 2;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace etaens
