#ifndef NETTEST_RNG_HPP
#define NETTEST_RNG_HPP

#include <cstdint>

namespace nettest {

// Counter-based deterministic random stream. Value i of stream s under seed
// is mix(key(seed, s) + (i+1) * PHI) where mix is the splitmix64 finalizer
// and PHI is the 64-bit golden-ratio constant. Streams with distinct ids are
// independent for practical purposes and reproducible across platforms.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 random bits.
  double next_double();

  bool bernoulli(double p) { return next_double() < p; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t state_;
};

}  // namespace nettest

#endif
