#pragma once

#include <optional>
#include <string_view>

#include "lenc/encryptor.hpp"
#include "lenc/optimizer.hpp"

namespace lenc {

enum class KeyRole : std::uint8_t { k_ec, k_cc, k_mux, k_fc };

std::string_view to_string(KeyRole role);

struct KeyVector {
  KeyRole role;
  BitString bits;

  std::size_t size() const { return bits.size(); }
  bool operator==(const KeyVector &) const = default;
};

/// Draws one uniform bit per PO.
KeyVector random_key(KeyRole role, std::size_t size, RandomSource &rng);

/// Unoptimized correction circuit: OC and EC cloned side by side, each PO is
/// XOR(oc, ec) with the EC side inverted where k_cc is 1.
Netlist cc_reference(const Netlist &oc, const Netlist &ec, const KeyVector &k_cc);

struct CorrectionCircuit {
  Netlist cc;
  KeyVector k_cc;
};

/// CC with PO = OC xor EC xor k_cc, jointly optimized. `k_cc` overrides the
/// random draw. Throws std::invalid_argument when the interfaces differ.
CorrectionCircuit build_cc(const Netlist &oc, const Netlist &ec, RandomSource &rng, const OptEffort &effort,
                           const std::optional<BitString> &k_cc = std::nullopt);

/// EC with an inverter appended to every PO whose k_ec bit is 1.
Netlist ec_reference(const Netlist &ec, const KeyVector &k_ec);

struct RandomizedEc {
  Netlist ec_final;
  KeyVector k_ec;
};

RandomizedEc randomize_ec(const Netlist &ec, RandomSource &rng, const OptEffort &effort,
                          const std::optional<BitString> &k_ec = std::nullopt);

/// Gates lying in the fanin cones of both operands of the XOR that drives a
/// CC output, counted once over all outputs. Zero means OC- and EC-derived
/// logic can be told apart by a cone split.
std::size_t shared_gate_count(const Netlist &cc);

}  // namespace lenc
