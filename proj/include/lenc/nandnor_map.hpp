#pragma once

#include <map>
#include <string>
#include <vector>

#include "lenc/netlist.hpp"

namespace lenc {

/// A netlist whose gates are all two-input NAND or NOR. Inverters appear as
/// duplicated-input gates, NAND(x, x) or NOR(x, x).
struct MappedNetlist {
  Netlist netlist;
  /// Gates whose two inputs are the same net. Their kind does not change the
  /// function (both are inverters), so flipping their code bit is invisible.
  std::size_t duplicated_input_gates = 0;
};

/// Reference rewrite for one gate kind over inputs `a` and `b` with result
/// net `result` (which may be `a` itself for BUF).
struct RewriteTemplate {
  std::vector<Gate> gates;
  std::string result;
};

/// NOT -> NAND(a,a); BUF -> wire; AND -> NAND + inverter; OR -> NOR + inverter;
/// XOR -> four NANDs; XNOR -> XOR + inverter; NAND, NOR native.
const std::map<GateKind, RewriteTemplate> &rewrite_table();

/// Rewrites `n` into NAND/NOR form, keeping PI and PO names and order.
///
/// Signals are tracked with a lazy polarity bit, so inverters are only
/// materialized when a gate actually needs the complemented value, and
/// AND/OR gates choose between the table template and its De Morgan dual
/// depending on which polarity of their fanins is already available.
/// Identical gates are hashed together while mapping.
///
/// Throws NetlistError for MUX2 gates and for constants in a circuit without
/// primary inputs.
MappedNetlist map_to_nand_nor(const Netlist &n);

bool is_nand_nor_only(const Netlist &n);

}  // namespace lenc
