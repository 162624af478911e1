#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lenc/aes.hpp"
#include "lenc/nandnor_map.hpp"
#include "lenc/random.hpp"

namespace lenc {

using BitString = std::vector<bool>;

std::string to_bit_text(const BitString &bits);
BitString from_bit_text(const std::string &text);
/// Hex of the bits packed MSB-first into bytes; the last byte is zero-padded.
std::string to_hex(const BitString &bits);
BitString from_hex(const std::string &hex, std::size_t bit_count);

/// Bijection between code bits and {NAND, NOR} plus the order in which the
/// mapped gates are read out into the plaintext.
struct CodingScheme {
  bool bit_for_nand = false;
  bool bit_for_nor = true;
  std::vector<std::size_t> gate_order;

  bool code(GateKind kind) const;
  GateKind kind_for(bool bit) const { return bit == bit_for_nand ? GateKind::NAND : GateKind::NOR; }
};

/// Draws the code-word assignment and a uniformly random gate order.
/// Throws std::invalid_argument when `gate_count` is zero.
CodingScheme make_coding_scheme(std::size_t gate_count, RandomSource &rng);

/// Bit i is the code of gate `cs.gate_order[i]`.
BitString encode(const MappedNetlist &m, const CodingScheme &cs);

/// Block permutation applied to each 128-bit message.
class BlockCipher {
 public:
  virtual ~BlockCipher() = default;
  virtual aes::Block encrypt(const aes::Block &block) = 0;
};

/// Result of encrypting the plaintext. Deliberately has no key field.
struct EncryptionTrace {
  std::size_t plaintext_len = 0;
  std::size_t pad_len = 0;
  BitString ciphertext;
};

/// Draws a fresh AES-128 key from `rng`. Exposed so tests can replay a seeded
/// stream; the flow itself never keeps the result.
aes::Key128 draw_block_key(RandomSource &rng);

/// Pads the plaintext with random bits to a multiple of 128 and encrypts each
/// block with AES-128 (ECB) under a single key drawn from `rng`, which is
/// wiped afterwards. Throws std::invalid_argument on empty input.
EncryptionTrace encrypt(const BitString &plaintext, RandomSource &rng);

/// Same, with an injected cipher instead of AES. Padding bits are still drawn
/// from `rng`.
EncryptionTrace encrypt(const BitString &plaintext, RandomSource &rng, BlockCipher &cipher);

/// Rebuilds the mapped netlist with gate `cs.gate_order[i]` set to the kind
/// coded by ciphertext bit i. Interconnect, PIs and POs are unchanged.
Netlist decode(const EncryptionTrace &trace, const CodingScheme &cs, const MappedNetlist &m);

/// Number of gate positions whose kind differs between two netlists with
/// identical gate lists.
std::size_t count_kind_flips(const Netlist &a, const Netlist &b);

}  // namespace lenc
