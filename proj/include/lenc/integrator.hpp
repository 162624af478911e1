#pragma once

#include "lenc/corrector.hpp"

namespace lenc {

enum class Side : std::uint8_t { ec, cc };

std::string_view to_string(Side side);

/// One 2:1 MUX key gate. Bit 0 of K_MUX puts the buffered PO logic on data0
/// and the inverted one on data1; bit 1 swaps them.
struct MuxKeyGate {
  std::string po_name;
  Side side;
  std::string key_port;
  std::string data0;
  std::string data1;
};

struct KeyPort {
  std::string port;
  std::string po;
  Side side;

  bool operator==(const KeyPort &) const = default;
};

struct FinalCircuit {
  Netlist netlist;                 ///< MUX2 key gates preserved
  std::vector<KeyPort> key_map;    ///< keyinput0.. in order: EC then CC per PO
  KeyVector k_fc{KeyRole::k_fc, {}};
};

std::string key_port_name(std::size_t index);

struct Integration {
  FinalCircuit fc;  ///< k_fc left empty; see derive_final_key
  KeyVector k_mux;
  std::vector<MuxKeyGate> key_gates;  ///< as built, before optimization
};

/// Assembles PO_FC = MUX(EC side) xor MUX(CC side) for every PO and optimizes
/// with the key gates frozen. `k_mux` overrides the random draw. Throws
/// std::invalid_argument on interface mismatch or when a circuit PI is
/// already called keyinput<i>.
Integration build_fc(const Netlist &ec_final, const Netlist &cc, RandomSource &rng, const OptEffort &effort,
                     const std::optional<BitString> &k_mux = std::nullopt);

/// K_FC(EC side) = K_MUX xor K_EC, K_FC(CC side) = K_MUX xor K_CC, interleaved
/// per PO like the key ports.
KeyVector derive_final_key(const KeyVector &k_mux, const KeyVector &k_ec, const KeyVector &k_cc);

/// Replaces each MUX2(s, d0, d1) with OR(AND(NOT s, d0), AND(s, d1)).
Netlist lower_mux(const Netlist &n);

/// Hardcodes `key` onto the key ports and simplifies. Throws
/// std::invalid_argument when the key length does not match the port count.
Netlist apply_key(const Netlist &fc, const std::vector<KeyPort> &key_map, const BitString &key);

/// Key inputs of a netlist: PIs named keyinput<i>, ordered by i.
std::vector<std::string> find_key_ports(const Netlist &n);

}  // namespace lenc
