#include "lenc/random.hpp"

#include <stdexcept>

namespace lenc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ull;
  return h;
}

}  // namespace

RandomSource RandomSource::seeded(std::uint64_t seed) {
  RandomSource r;
  r.seed_ = seed;
  r.engine_.seed(splitmix64(seed));
  return r;
}

RandomSource RandomSource::system() {
  RandomSource r;
  r.device_ = std::make_unique<std::random_device>();
  return r;
}

RandomSource RandomSource::fork(std::string_view label) const {
  if (seed_) return seeded(splitmix64(*seed_ ^ fnv1a(label)));
  return system();
}

std::uint64_t RandomSource::next_u64() {
  if (device_) {
    std::uint64_t hi = (*device_)();
    std::uint64_t lo = (*device_)();
    return (hi << 32) ^ lo;
  }
  return engine_();
}

void RandomSource::fill(std::span<std::uint8_t> bytes) {
  for (std::size_t i = 0; i < bytes.size(); i += 8) {
    std::uint64_t w = next_u64();
    for (std::size_t k = 0; k < 8 && i + k < bytes.size(); ++k) bytes[i + k] = static_cast<std::uint8_t>(w >> (8 * k));
  }
}

std::uint64_t RandomSource::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("RandomSource::below(0)");
  // 2^64 mod bound; values above max() - rem would bias the result.
  const std::uint64_t rem = (max() % bound + 1) % bound;
  std::uint64_t x;
  do x = next_u64();
  while (rem != 0 && x > max() - rem);
  return x % bound;
}

std::vector<bool> RandomSource::bits(std::size_t count) {
  std::vector<bool> out(count);
  for (std::size_t i = 0; i < count; i += 64) {
    std::uint64_t w = next_u64();
    for (std::size_t k = 0; k < 64 && i + k < count; ++k) out[i + k] = (w >> k) & 1;
  }
  return out;
}

}  // namespace lenc
