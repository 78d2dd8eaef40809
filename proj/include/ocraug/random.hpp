#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace ocraug {

/// Counter-based random stream (Philox4x32-10) addressed by a 64-bit key.
///
/// A stream is a pure function of its key and position, so copies replay the
/// same draws and streams for different keys never share state. Draw helpers
/// are implemented here rather than through <random> distributions so the
/// sequence of values is identical across standard library implementations.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key) : key_(key) {}

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform01();

  // Uniform on [lo, hi); returns lo exactly when lo == hi.
  double uniform(double lo, double hi);

  // Unbiased integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  // Independent child stream. Children with different tags are independent of
  // each other and of the parent.
  RandomStream fork(std::uint64_t tag) const;

  // UniformRandomBitGenerator surface.
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  friend bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int block_used_ = 4;
};

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_string(std::string_view s);

/// Stream for one (master seed, sample id, replica) key.
RandomStream derive_rng(std::uint64_t master_seed, std::string_view sample_id,
                        std::uint64_t replica);

}  // namespace ocraug
