#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lenc {

enum class GateKind : std::uint8_t { AND, NAND, OR, NOR, XOR, XNOR, NOT, BUF, MUX2, CONST0, CONST1 };

inline constexpr std::array<GateKind, 11> all_gate_kinds = {
    GateKind::AND, GateKind::NAND, GateKind::OR,   GateKind::NOR,    GateKind::XOR,   GateKind::XNOR,
    GateKind::NOT, GateKind::BUF,  GateKind::MUX2, GateKind::CONST0, GateKind::CONST1};

std::string_view to_string(GateKind kind);
std::optional<GateKind> gate_kind_from_string(std::string_view text);

/// Number of fanins a gate of this kind takes. MUX2 is (select, data0, data1).
int arity(GateKind kind);
bool is_commutative(GateKind kind);

/// Evaluates one gate over 64 parallel patterns.
std::uint64_t eval_gate(GateKind kind, std::uint64_t a, std::uint64_t b, std::uint64_t c);

struct Gate {
  std::string output;
  GateKind kind;
  std::vector<std::string> inputs;

  bool operator==(const Gate &) const = default;
};

class NetlistError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unchecked netlist contents. Everything that builds circuits goes through
/// this form and is turned into a Netlist by Netlist::build.
struct RawNetlist {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<Gate> gates;
};

struct Diagnostic {
  enum class Code { arity, duplicate, undefined, undriven_output, cycle, bad_name } code;
  std::string message;
};

/// Checks every structural invariant. An empty result means `raw` can be built.
std::vector<Diagnostic> validate(const RawNetlist &raw);

/// Where a net comes from: a primary input or a gate (index into gates()).
struct Driver {
  bool is_input;
  std::size_t index;
};

/// Immutable combinational gate graph.
///
/// Gates are stored in topological order. Every net is additionally given a
/// dense signal id: primary inputs first (in declaration order), then gate
/// outputs in gate order. The id form is what simulation and the SAT encoder
/// work on.
class Netlist {
 public:
  Netlist() = default;

  /// Validates, topologically sorts and indexes. Throws NetlistError listing
  /// all diagnostics when the raw netlist is malformed.
  static Netlist build(RawNetlist raw);

  const std::string &name() const { return name_; }
  const std::vector<std::string> &inputs() const { return inputs_; }
  const std::vector<std::string> &outputs() const { return outputs_; }
  const std::vector<Gate> &gates() const { return gates_; }

  std::size_t num_signals() const { return inputs_.size() + gates_.size(); }
  std::size_t gate_signal(std::size_t gate_index) const { return inputs_.size() + gate_index; }
  /// Fanin signal ids of a gate, `arity(kind)` of them valid.
  const std::array<std::uint32_t, 3> &fanin_ids(std::size_t gate_index) const { return fanins_[gate_index]; }
  /// Signal id driving each primary output, in output order.
  const std::vector<std::uint32_t> &output_ids() const { return output_ids_; }
  const std::string &signal_name(std::size_t id) const;

  bool has_net(const std::string &net) const { return net_table_.contains(net); }
  std::optional<Driver> driver(const std::string &net) const;
  std::optional<std::size_t> signal_id(const std::string &net) const;
  std::optional<std::size_t> input_index(const std::string &net) const;

  RawNetlist raw() const { return {name_, inputs_, outputs_, gates_}; }
  Netlist renamed(std::string name) const;

  bool operator==(const Netlist &other) const {
    return name_ == other.name_ && inputs_ == other.inputs_ && outputs_ == other.outputs_ && gates_ == other.gates_;
  }

 private:
  std::string name_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<Gate> gates_;
  std::unordered_map<std::string, Driver> net_table_;
  std::vector<std::array<std::uint32_t, 3>> fanins_;
  std::vector<std::uint32_t> output_ids_;
};

struct CircuitStats {
  std::size_t gate_count = 0;
  std::size_t depth = 0;
  std::size_t literal_count = 0;
  std::map<GateKind, std::size_t> type_histogram;
};

CircuitStats stats(const Netlist &n);

// ---------------------------------------------------------------------------
// Simulation

using Assignment = std::map<std::string, bool>;

/// Single-vector evaluation. Throws NetlistError when a PI is unassigned.
Assignment simulate(const Netlist &n, const Assignment &inputs);

/// Evaluates 64 patterns at once. `input_words[i]` drives inputs()[i].
/// Returns one word per signal id.
std::vector<std::uint64_t> simulate_signals(const Netlist &n, std::span<const std::uint64_t> input_words);

/// Same as simulate_signals but only returns the primary output words.
std::vector<std::uint64_t> simulate_words(const Netlist &n, std::span<const std::uint64_t> input_words);

/// Input pattern word for exhaustive enumeration: pattern p = 64*block + lane,
/// input i takes bit i of p.
std::uint64_t exhaustive_word(std::size_t input_index, std::uint64_t block);

/// Calls `visit(block, output_words)` for every 64-pattern block of the
/// exhaustive input space. Requires inputs().size() <= 30.
template <typename Visit>
void for_each_exhaustive_block(const Netlist &n, Visit &&visit) {
  const std::size_t k = n.inputs().size();
  const std::uint64_t blocks = k <= 6 ? 1 : (std::uint64_t{1} << (k - 6));
  std::vector<std::uint64_t> words(k);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    for (std::size_t i = 0; i < k; ++i) words[i] = exhaustive_word(i, b);
    visit(b, simulate_words(n, words));
  }
}

/// Mask of meaningful lanes in an exhaustive block (fewer than 64 patterns
/// exist when the circuit has fewer than 6 inputs).
std::uint64_t exhaustive_lane_mask(std::size_t num_inputs);

// ---------------------------------------------------------------------------
// Topological helpers

/// Signal ids in the transitive fanin of `roots` (inclusive).
std::vector<bool> transitive_fanin(const Netlist &n, std::span<const std::uint32_t> roots);

}  // namespace lenc
