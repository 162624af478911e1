#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace lenc {

/// Source of all randomness in the flow.
///
/// A seeded source is a deterministic generator; `fork(label)` derives an
/// independent child stream from the seed and the label, so each stage draws
/// from its own stream regardless of how much other stages consumed. The
/// system source reads the operating system's entropy pool and cannot be
/// replayed.
class RandomSource {
 public:
  using result_type = std::uint64_t;

  static RandomSource seeded(std::uint64_t seed);
  static RandomSource system();

  RandomSource(RandomSource &&) noexcept = default;
  RandomSource &operator=(RandomSource &&) noexcept = default;

  RandomSource fork(std::string_view label) const;

  std::uint64_t next_u64();
  bool next_bit() { return next_u64() & 1; }
  void fill(std::span<std::uint8_t> bytes);
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  std::vector<bool> bits(std::size_t count);

  bool deterministic() const { return seed_.has_value(); }
  std::optional<std::uint64_t> seed() const { return seed_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next_u64(); }

 private:
  RandomSource() = default;

  std::optional<std::uint64_t> seed_;
  std::mt19937_64 engine_;
  std::unique_ptr<std::random_device> device_;
};

/// In-place Fisher-Yates shuffle driven by `rng`.
template <typename T>
void shuffle(std::vector<T> &items, RandomSource &rng) {
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng.below(i)]);
}

}  // namespace lenc
