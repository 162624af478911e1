#pragma once

#include <array>
#include <cstdint>

namespace lenc::aes {

using Block = std::array<std::uint8_t, 16>;
using Key128 = std::array<std::uint8_t, 16>;

/// AES-128 (FIPS-197) with a precomputed key schedule. The schedule is wiped
/// on destruction.
class Aes128 {
 public:
  explicit Aes128(const Key128 &key);
  ~Aes128();
  Aes128(const Aes128 &) = delete;
  Aes128 &operator=(const Aes128 &) = delete;

  Block encrypt(const Block &in) const;
  Block decrypt(const Block &in) const;

 private:
  std::array<std::array<std::uint8_t, 16>, 11> round_keys_;
};

Block encrypt_block(const Key128 &key, const Block &block);
Block decrypt_block(const Key128 &key, const Block &block);

}  // namespace lenc::aes
