#include "ocraug/random.hpp"

#include <cassert>

namespace ocraug {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a offset basis
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return mix64(h ^ s.size());
}

std::uint64_t RandomStream::next_u64() {
  if (block_used_ >= 4) {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32), 0u, 0u};
    block_ = philox4x32_10(ctr, {static_cast<std::uint32_t>(key_),
                                 static_cast<std::uint32_t>(key_ >> 32)});
    ++counter_;
    block_used_ = 0;
  }
  const std::uint64_t hi = block_[block_used_];
  const std::uint64_t lo = block_[block_used_ + 1];
  block_used_ += 2;
  return (hi << 32) | lo;
}

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  const double u = uniform01();
  if (lo == hi) return lo;
  return lo + (hi - lo) * u;
}

std::uint64_t RandomStream::uniform_index(std::uint64_t n) {
  assert(n > 0);
  // Rejection sampling on the top of the range keeps the result unbiased.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

RandomStream RandomStream::fork(std::uint64_t tag) const {
  return RandomStream(mix64(key_ ^ mix64(tag ^ 0xA0761D6478BD642Full)));
}

RandomStream derive_rng(std::uint64_t master_seed, std::string_view sample_id,
                        std::uint64_t replica) {
  std::uint64_t k = mix64(master_seed);
  k = mix64(k ^ hash_string(sample_id));
  k = mix64(k ^ (replica * 0xE7037ED1A0B428DBull));
  return RandomStream(k);
}

}  // namespace ocraug
