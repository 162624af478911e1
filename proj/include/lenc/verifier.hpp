#pragma once

#include <optional>
#include <string>

#include "lenc/netlist.hpp"
#include "lenc/sat.hpp"

namespace lenc {

struct VerifyOptions {
  std::size_t exhaustive_threshold = 20;
  double sat_seconds = 60;
  std::uint64_t sat_conflicts = std::numeric_limits<std::uint64_t>::max();
  /// Vectors for the simulation fallback when SAT runs out of budget.
  std::uint64_t random_vectors = 100'000;
  std::uint64_t seed = 1;
  /// Prove internal equivalences before the final SAT call.
  bool sweep = true;
  unsigned jobs = 1;
};

struct EquivVerdict {
  enum class Result : std::uint8_t { equivalent, inequivalent, inconclusive } result;
  enum class Method : std::uint8_t { exhaustive, sat, random_sim } method;
  std::optional<Assignment> witness;  ///< set iff inequivalent
  std::string mismatched_output;
  std::uint64_t vectors_checked = 0;
  std::uint64_t sat_conflicts = 0;
  std::size_t swept_equivalences = 0;

  bool equivalent() const { return result == Result::equivalent; }
};

std::string_view to_string(EquivVerdict::Result r);
std::string_view to_string(EquivVerdict::Method m);

/// Exhaustive simulation up to `exhaustive_threshold` PIs, SAT on the miter
/// beyond. A simulation fallback never reports `equivalent`. PIs and POs are
/// matched by name; throws std::invalid_argument when the name sets differ.
EquivVerdict check_equiv(const Netlist &a, const Netlist &b, const VerifyOptions &opts = {});

/// Single output `miter`, 1 iff some PO of a and b differs. Uses a's PI order.
Netlist build_miter(const Netlist &a, const Netlist &b);

struct CnfEncoding {
  sat::Cnf cnf;
  std::vector<int> var_of_signal;  ///< indexed by signal id
};

/// Tseitin encoding of every gate; outputs are left unconstrained.
CnfEncoding tseitin(const Netlist &n);

/// Tseitin encoding plus a unit clause asserting the single PO. Throws
/// std::invalid_argument for netlists with more than one PO.
sat::Cnf to_cnf(const Netlist &n);

}  // namespace lenc
