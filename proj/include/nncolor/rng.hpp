#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace nncolor {

/// Counter-based random stream (Philox4x32-10).
///
/// The key is the 64-bit seed, the upper half of the counter is the stream id,
/// and the lower half counts blocks. Two streams with the same (seed, stream_id)
/// produce identical sequences; different stream ids never share a block.
/// Satisfies UniformRandomBitGenerator so it can drive <random> distributions.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on the open interval (0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Exponential(1).
  double exponential();
  /// Poisson(mean); mean 0 yields 0.
  std::uint64_t poisson(double mean);
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  /// Independent child stream, keyed by this stream's identity and `tag`.
  RngStream derive(std::uint64_t tag) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t blocks_used() const { return counter_; }

  /// Raw Philox4x32-10 block function; exposed for known-answer tests.
  static std::array<std::uint32_t, 4> philox(std::array<std::uint32_t, 4> ctr,
                                             std::array<std::uint32_t, 2> key);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

/// SplitMix64 finalizer; used for hashing labels and deriving stream tags.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace nncolor
