#include "lenc/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

namespace lenc {

namespace {

constexpr std::array<std::string_view, 11> kind_names = {"AND", "NAND", "OR",   "NOR",    "XOR",   "XNOR",
                                                         "NOT", "BUFF", "MUX2", "CONST0", "CONST1"};

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace

std::string_view to_string(GateKind kind) { return kind_names[static_cast<std::size_t>(kind)]; }

std::optional<GateKind> gate_kind_from_string(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  if (upper == "INV") return GateKind::NOT;
  if (upper == "BUF") return GateKind::BUF;
  if (upper == "MUX") return GateKind::MUX2;
  for (std::size_t i = 0; i < kind_names.size(); ++i)
    if (kind_names[i] == upper) return static_cast<GateKind>(i);
  return std::nullopt;
}

int arity(GateKind kind) {
  switch (kind) {
    case GateKind::NOT:
    case GateKind::BUF:
      return 1;
    case GateKind::MUX2:
      return 3;
    case GateKind::CONST0:
    case GateKind::CONST1:
      return 0;
    default:
      return 2;
  }
}

bool is_commutative(GateKind kind) { return arity(kind) == 2; }

std::uint64_t eval_gate(GateKind kind, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  switch (kind) {
    case GateKind::AND: return a & b;
    case GateKind::NAND: return ~(a & b);
    case GateKind::OR: return a | b;
    case GateKind::NOR: return ~(a | b);
    case GateKind::XOR: return a ^ b;
    case GateKind::XNOR: return ~(a ^ b);
    case GateKind::NOT: return ~a;
    case GateKind::BUF: return a;
    case GateKind::MUX2: return (~a & b) | (a & c);
    case GateKind::CONST0: return 0;
    case GateKind::CONST1: return ~std::uint64_t{0};
  }
  return 0;
}

std::vector<Diagnostic> validate(const RawNetlist &raw) {
  std::vector<Diagnostic> diags;
  auto report = [&](Diagnostic::Code code, std::string msg) { diags.push_back({code, std::move(msg)}); };

  std::unordered_map<std::string, std::size_t> gate_of;  // net -> gate index
  std::unordered_set<std::string> pis;
  for (const auto &in : raw.inputs) {
    if (!valid_identifier(in)) report(Diagnostic::Code::bad_name, "invalid input name '" + in + "'");
    if (!pis.insert(in).second) report(Diagnostic::Code::duplicate, "input '" + in + "' declared twice");
  }
  for (std::size_t i = 0; i < raw.gates.size(); ++i) {
    const Gate &g = raw.gates[i];
    if (!valid_identifier(g.output)) report(Diagnostic::Code::bad_name, "invalid net name '" + g.output + "'");
    if (static_cast<int>(g.inputs.size()) != arity(g.kind)) {
      std::ostringstream os;
      os << "gate '" << g.output << "' of kind " << to_string(g.kind) << " has " << g.inputs.size()
         << " inputs, expected " << arity(g.kind);
      report(Diagnostic::Code::arity, os.str());
    }
    if (pis.contains(g.output)) {
      report(Diagnostic::Code::duplicate, "net '" + g.output + "' is both an input and a gate output");
    } else if (!gate_of.emplace(g.output, i).second) {
      report(Diagnostic::Code::duplicate, "net '" + g.output + "' driven by more than one gate");
    }
  }
  for (const auto &g : raw.gates)
    for (const auto &in : g.inputs)
      if (!pis.contains(in) && !gate_of.contains(in))
        report(Diagnostic::Code::undefined, "gate '" + g.output + "' reads undefined net '" + in + "'");
  std::unordered_set<std::string> seen_outputs;
  for (const auto &po : raw.outputs) {
    if (!pis.contains(po) && !gate_of.contains(po))
      report(Diagnostic::Code::undriven_output, "output '" + po + "' has no driver");
    if (!seen_outputs.insert(po).second) report(Diagnostic::Code::duplicate, "output '" + po + "' declared twice");
  }

  // Cycle detection over the gate graph (iterative DFS, colors 0/1/2).
  std::vector<std::uint8_t> color(raw.gates.size(), 0);
  for (std::size_t root = 0; root < raw.gates.size(); ++root) {
    if (color[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto &[gi, next] = stack.back();
      const Gate &g = raw.gates[gi];
      if (next < g.inputs.size()) {
        auto it = gate_of.find(g.inputs[next++]);
        if (it == gate_of.end()) continue;
        if (color[it->second] == 1) {
          report(Diagnostic::Code::cycle, "combinational cycle through net '" + raw.gates[it->second].output + "'");
          color[it->second] = 2;  // report each loop entry once
        } else if (color[it->second] == 0) {
          color[it->second] = 1;
          stack.emplace_back(it->second, 0);
        }
      } else {
        color[gi] = 2;
        stack.pop_back();
      }
    }
  }
  return diags;
}

Netlist Netlist::build(RawNetlist raw) {
  if (auto diags = validate(raw); !diags.empty()) {
    std::string msg = "invalid netlist '" + raw.name + "':";
    for (const auto &d : diags) msg += "\n  " + d.message;
    throw NetlistError(msg);
  }

  Netlist n;
  n.name_ = std::move(raw.name);
  n.inputs_ = std::move(raw.inputs);
  n.outputs_ = std::move(raw.outputs);

  // Depth-first post-order over the original gate order: files that are
  // already topologically sorted keep their order.
  std::unordered_map<std::string, std::size_t> gate_of;
  for (std::size_t i = 0; i < raw.gates.size(); ++i) gate_of.emplace(raw.gates[i].output, i);
  std::vector<std::size_t> order;
  order.reserve(raw.gates.size());
  std::vector<std::uint8_t> state(raw.gates.size(), 0);
  for (std::size_t root = 0; root < raw.gates.size(); ++root) {
    if (state[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    state[root] = 1;
    while (!stack.empty()) {
      auto &[gi, next] = stack.back();
      if (next < raw.gates[gi].inputs.size()) {
        auto it = gate_of.find(raw.gates[gi].inputs[next++]);
        if (it != gate_of.end() && state[it->second] == 0) {
          state[it->second] = 1;
          stack.emplace_back(it->second, 0);
        }
      } else {
        order.push_back(gi);
        stack.pop_back();
      }
    }
  }

  n.gates_.reserve(order.size());
  for (std::size_t gi : order) n.gates_.push_back(std::move(raw.gates[gi]));

  for (std::size_t i = 0; i < n.inputs_.size(); ++i) n.net_table_.emplace(n.inputs_[i], Driver{true, i});
  for (std::size_t i = 0; i < n.gates_.size(); ++i) n.net_table_.emplace(n.gates_[i].output, Driver{false, i});
  n.fanins_.resize(n.gates_.size(), {0, 0, 0});
  for (std::size_t i = 0; i < n.gates_.size(); ++i)
    for (std::size_t k = 0; k < n.gates_[i].inputs.size(); ++k)
      n.fanins_[i][k] = static_cast<std::uint32_t>(*n.signal_id(n.gates_[i].inputs[k]));
  for (const auto &po : n.outputs_) n.output_ids_.push_back(static_cast<std::uint32_t>(*n.signal_id(po)));
  return n;
}

const std::string &Netlist::signal_name(std::size_t id) const {
  return id < inputs_.size() ? inputs_[id] : gates_[id - inputs_.size()].output;
}

std::optional<Driver> Netlist::driver(const std::string &net) const {
  auto it = net_table_.find(net);
  if (it == net_table_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Netlist::signal_id(const std::string &net) const {
  auto d = driver(net);
  if (!d) return std::nullopt;
  return d->is_input ? d->index : inputs_.size() + d->index;
}

std::optional<std::size_t> Netlist::input_index(const std::string &net) const {
  auto d = driver(net);
  if (!d || !d->is_input) return std::nullopt;
  return d->index;
}

Netlist Netlist::renamed(std::string name) const {
  Netlist copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

CircuitStats stats(const Netlist &n) {
  CircuitStats s;
  s.gate_count = n.gates().size();
  std::vector<std::size_t> level(n.num_signals(), 0);
  for (std::size_t i = 0; i < n.gates().size(); ++i) {
    const Gate &g = n.gates()[i];
    ++s.type_histogram[g.kind];
    s.literal_count += g.inputs.size();
    std::size_t lvl = 0;
    for (int k = 0; k < arity(g.kind); ++k) lvl = std::max(lvl, level[n.fanin_ids(i)[k]]);
    level[n.gate_signal(i)] = lvl + 1;
  }
  for (auto id : n.output_ids()) s.depth = std::max(s.depth, level[id]);
  return s;
}

Assignment simulate(const Netlist &n, const Assignment &inputs) {
  std::vector<std::uint64_t> words(n.inputs().size());
  for (std::size_t i = 0; i < n.inputs().size(); ++i) {
    auto it = inputs.find(n.inputs()[i]);
    if (it == inputs.end()) throw NetlistError("missing assignment for input '" + n.inputs()[i] + "'");
    words[i] = it->second ? 1 : 0;
  }
  auto out = simulate_words(n, words);
  Assignment result;
  for (std::size_t i = 0; i < n.outputs().size(); ++i) result[n.outputs()[i]] = out[i] & 1;
  return result;
}

std::vector<std::uint64_t> simulate_signals(const Netlist &n, std::span<const std::uint64_t> input_words) {
  if (input_words.size() != n.inputs().size()) throw NetlistError("simulation input width mismatch");
  std::vector<std::uint64_t> value(n.num_signals());
  std::copy(input_words.begin(), input_words.end(), value.begin());
  const std::size_t base = n.inputs().size();
  for (std::size_t i = 0; i < n.gates().size(); ++i) {
    const auto &f = n.fanin_ids(i);
    value[base + i] = eval_gate(n.gates()[i].kind, value[f[0]], value[f[1]], value[f[2]]);
  }
  return value;
}

std::vector<std::uint64_t> simulate_words(const Netlist &n, std::span<const std::uint64_t> input_words) {
  auto value = simulate_signals(n, input_words);
  std::vector<std::uint64_t> out;
  out.reserve(n.output_ids().size());
  for (auto id : n.output_ids()) out.push_back(value[id]);
  return out;
}

std::uint64_t exhaustive_word(std::size_t input_index, std::uint64_t block) {
  static constexpr std::array<std::uint64_t, 6> lane_patterns = {
      0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
      0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  if (input_index < 6) return lane_patterns[input_index];
  return (block >> (input_index - 6)) & 1 ? ~std::uint64_t{0} : 0;
}

std::uint64_t exhaustive_lane_mask(std::size_t num_inputs) {
  return num_inputs >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << num_inputs)) - 1;
}

std::vector<bool> transitive_fanin(const Netlist &n, std::span<const std::uint32_t> roots) {
  std::vector<bool> mark(n.num_signals(), false);
  for (auto r : roots) mark[r] = true;
  const std::size_t base = n.inputs().size();
  for (std::size_t i = n.gates().size(); i-- > 0;) {
    if (!mark[base + i]) continue;
    for (int k = 0; k < arity(n.gates()[i].kind); ++k) mark[n.fanin_ids(i)[k]] = true;
  }
  return mark;
}

}  // namespace lenc
