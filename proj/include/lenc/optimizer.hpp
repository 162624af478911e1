#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lenc/netlist.hpp"

namespace lenc {

enum class Pass : std::uint8_t {
  const_prop,       ///< fold gates with constant fanins
  buf_collapse,     ///< replace BUF by a wire
  duplicate_input,  ///< NAND(a,a) -> NOT a, AND(a,a) -> a, XOR(a,a) -> 0, ...
  double_inverter,  ///< NOT(NOT a) -> a
  strash,           ///< merge structurally identical gates
  dead_code,        ///< drop gates that reach no output and no frozen net
};

std::string_view to_string(Pass p);

/// Optimization recipe. Every level iterates its pass list to a fixpoint;
/// `heavy` reshuffles the pass order on every round using `seed`.
struct OptEffort {
  enum class Level : std::uint8_t { none, light, standard, heavy };
  Level level = Level::standard;
  std::vector<Pass> passes;
  std::uint64_t seed = 0;

  static OptEffort none();
  static OptEffort light();
  static OptEffort standard();
  static OptEffort heavy(std::uint64_t seed);
};

/// Parses `none`, `light`, `standard`, `heavy` or `heavy:seed=<n>`.
/// Throws std::invalid_argument on anything else.
OptEffort parse_recipe(std::string_view text);
std::string to_string(const OptEffort &e);

/// Functionally equivalent cleanup. Nets named in `frozen` keep their name,
/// their gate kind and are never merged or removed. PI and PO names and order
/// are preserved.
Netlist optimize(const Netlist &n, const OptEffort &effort, const std::set<std::string> &frozen = {});

/// Applies each pass once, in order.
Netlist run_passes(const Netlist &n, std::span<const Pass> passes, const std::set<std::string> &frozen = {});

/// Hardcodes primary inputs to constants, removes them from the interface
/// and simplifies. Throws NetlistError if a bound net is not a PI.
Netlist propagate_constants(const Netlist &n, const std::map<std::string, bool> &bindings);

/// Renames every internal gate net to `<prefix><k>` in topological order.
/// PIs, POs and nets listed in `keep` are untouched.
Netlist anonymize(const Netlist &n, const std::string &prefix = "n", const std::set<std::string> &keep = {});

}  // namespace lenc
