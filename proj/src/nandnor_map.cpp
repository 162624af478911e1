#include "lenc/nandnor_map.hpp"

#include <unordered_map>
#include <unordered_set>

namespace lenc {

namespace {

struct Signal {
  std::uint32_t node;
  bool inverted;
  Signal operator!() const { return {node, !inverted}; }
};

class Mapper {
 public:
  explicit Mapper(const Netlist &src) : src_(src) {
    for (const auto &in : src.inputs()) reserved_.insert(in);
    for (const auto &g : src.gates()) reserved_.insert(g.output);
    for (std::size_t i = 0; i < src.inputs().size(); ++i) nodes_.push_back({src.inputs()[i], true, {}, {0, 0}});
  }

  MappedNetlist run() {
    std::vector<Signal> sig(src_.num_signals());
    for (std::uint32_t i = 0; i < src_.inputs().size(); ++i) sig[i] = {i, false};
    for (std::size_t gi = 0; gi < src_.gates().size(); ++gi) {
      const Gate &g = src_.gates()[gi];
      const auto &f = src_.fanin_ids(gi);
      sig[src_.gate_signal(gi)] = map_gate(g, sig, f);
    }

    RawNetlist raw;
    raw.name = src_.name();
    raw.inputs = src_.inputs();
    raw.outputs = src_.outputs();
    std::vector<std::uint32_t> targets;
    for (std::size_t i = 0; i < src_.outputs().size(); ++i) targets.push_back(materialize(sig[src_.output_ids()[i]]));
    std::vector<std::string> names(nodes_.size());
    std::vector<std::pair<std::string, std::uint32_t>> extra;  // PO copies: name, node to double-invert
    std::unordered_set<std::uint32_t> named;
    for (std::size_t i = 0; i < src_.outputs().size(); ++i) {
      const std::string &po = src_.outputs()[i];
      const std::uint32_t target = targets[i];
      if (nodes_[target].is_input) {
        if (nodes_[target].name != po) extra.emplace_back(po, target);
      } else if (named.insert(target).second) {
        names[target] = po;
      } else {
        extra.emplace_back(po, target);
      }
    }
    // Double inverters for POs that must carry their own name.
    std::vector<std::pair<std::string, std::uint32_t>> copies;  // PO name, inverter feeding NAND(inv, inv)
    for (const auto &[po, target] : extra) copies.emplace_back(po, inverter(target));
    names.resize(nodes_.size());

    std::size_t counter = 0;
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].is_input) {
        names[i] = nodes_[i].name;
      } else if (names[i].empty()) {
        std::string candidate;
        do candidate = "m" + std::to_string(counter++);
        while (reserved_.contains(candidate));
        names[i] = candidate;
      }
    }

    // Keep only the cone of the outputs; unused inverters can be left behind
    // when a PO copy re-uses them.
    std::vector<bool> live(nodes_.size(), false);
    for (std::uint32_t i = 0; i < nodes_.size(); ++i)
      if (!names[i].empty() && !nodes_[i].is_input && named.contains(i)) live[i] = true;
    for (const auto &c : copies) live[c.second] = true;
    for (std::size_t i = nodes_.size(); i-- > 0;) {
      if (!live[i] || nodes_[i].is_input) continue;
      live[nodes_[i].fanin[0]] = live[nodes_[i].fanin[1]] = true;
    }

    MappedNetlist result;
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].is_input || !live[i]) continue;
      const Node &n = nodes_[i];
      raw.gates.push_back({names[i], n.kind, {names[n.fanin[0]], names[n.fanin[1]]}});
      if (n.fanin[0] == n.fanin[1]) ++result.duplicated_input_gates;
    }
    for (const auto &[po, inv] : copies) {
      raw.gates.push_back({po, GateKind::NAND, {names[inv], names[inv]}});
      ++result.duplicated_input_gates;
    }
    result.netlist = Netlist::build(std::move(raw));
    return result;
  }

 private:
  struct Node {
    std::string name;  // inputs only
    bool is_input;
    GateKind kind;
    std::array<std::uint32_t, 2> fanin;
  };

  static std::uint64_t key(GateKind k, std::uint32_t a, std::uint32_t b) {
    if (b < a) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 33) | (static_cast<std::uint64_t>(b) << 1) |
           (k == GateKind::NOR ? 1u : 0u);
  }

  std::uint32_t gate(GateKind k, std::uint32_t a, std::uint32_t b) {
    auto [it, fresh] = strash_.emplace(key(k, a, b), static_cast<std::uint32_t>(nodes_.size()));
    if (fresh) nodes_.push_back({{}, false, k, {a, b}});
    return it->second;
  }

  bool is_inverter(std::uint32_t node) const {
    return !nodes_[node].is_input && nodes_[node].fanin[0] == nodes_[node].fanin[1];
  }

  std::optional<std::uint32_t> existing_inverter(std::uint32_t node) const {
    if (is_inverter(node)) return nodes_[node].fanin[0];
    for (GateKind k : {GateKind::NAND, GateKind::NOR})
      if (auto it = strash_.find(key(k, node, node)); it != strash_.end()) return it->second;
    return std::nullopt;
  }

  std::uint32_t inverter(std::uint32_t node) {
    if (auto inv = existing_inverter(node)) return *inv;
    return gate(GateKind::NAND, node, node);
  }

  std::uint32_t materialize(Signal s) { return s.inverted ? inverter(s.node) : s.node; }

  int cost(Signal s) const { return s.inverted && !existing_inverter(s.node) ? 1 : 0; }

  /// out = direct-kind(a, b) (inverted if `direct_inverted`), or the De Morgan
  /// dual: dual-kind(!a, !b) with the opposite polarity. A complemented result
  /// counts as one potential inverter.
  Signal either(GateKind direct, GateKind dual, bool direct_inverted, Signal a, Signal b) {
    const int direct_cost = cost(a) + cost(b) + (direct_inverted ? 1 : 0);
    const int dual_cost = cost(!a) + cost(!b) + (direct_inverted ? 0 : 1);
    if (direct_cost <= dual_cost) return {gate(direct, materialize(a), materialize(b)), direct_inverted};
    return {gate(dual, materialize(!a), materialize(!b)), !direct_inverted};
  }

  std::uint32_t xor4(std::uint32_t a, std::uint32_t b) {
    const std::uint32_t t = gate(GateKind::NAND, a, b);
    return gate(GateKind::NAND, gate(GateKind::NAND, a, t), gate(GateKind::NAND, b, t));
  }

  Signal constant_zero() {
    if (src_.inputs().empty()) throw NetlistError("cannot express a constant without primary inputs");
    return {gate(GateKind::NOR, 0, inverter(0)), false};
  }

  Signal map_gate(const Gate &g, const std::vector<Signal> &sig, const std::array<std::uint32_t, 3> &f) {
    const Signal a = arity(g.kind) > 0 ? sig[f[0]] : Signal{};
    const Signal b = arity(g.kind) > 1 ? sig[f[1]] : Signal{};
    switch (g.kind) {
      case GateKind::NOT: return !a;
      case GateKind::BUF: return a;
      // AND = !NAND(a,b) = NOR(!a,!b)
      case GateKind::AND: return either(GateKind::NAND, GateKind::NOR, true, a, b);
      case GateKind::NAND: return either(GateKind::NAND, GateKind::NOR, false, a, b);
      // OR = !NOR(a,b) = NAND(!a,!b)
      case GateKind::OR: return either(GateKind::NOR, GateKind::NAND, true, a, b);
      case GateKind::NOR: return either(GateKind::NOR, GateKind::NAND, false, a, b);
      case GateKind::XOR: return {xor4(a.node, b.node), a.inverted != b.inverted};
      case GateKind::XNOR: return {xor4(a.node, b.node), a.inverted == b.inverted};
      case GateKind::CONST0: return constant_zero();
      case GateKind::CONST1: return !constant_zero();
      case GateKind::MUX2: break;
    }
    throw NetlistError("MUX2 gate '" + g.output + "' cannot be mapped to NAND/NOR");
  }

  const Netlist &src_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::uint32_t> strash_;
  std::unordered_set<std::string> reserved_;
};

}  // namespace

const std::map<GateKind, RewriteTemplate> &rewrite_table() {
  static const std::map<GateKind, RewriteTemplate> table = {
      {GateKind::NOT, {{{"y", GateKind::NAND, {"a", "a"}}}, "y"}},
      {GateKind::BUF, {{}, "a"}},
      {GateKind::AND, {{{"t", GateKind::NAND, {"a", "b"}}, {"y", GateKind::NAND, {"t", "t"}}}, "y"}},
      {GateKind::NAND, {{{"y", GateKind::NAND, {"a", "b"}}}, "y"}},
      {GateKind::OR, {{{"t", GateKind::NOR, {"a", "b"}}, {"y", GateKind::NAND, {"t", "t"}}}, "y"}},
      {GateKind::NOR, {{{"y", GateKind::NOR, {"a", "b"}}}, "y"}},
      {GateKind::XOR,
       {{{"t", GateKind::NAND, {"a", "b"}},
         {"u", GateKind::NAND, {"a", "t"}},
         {"v", GateKind::NAND, {"b", "t"}},
         {"y", GateKind::NAND, {"u", "v"}}},
        "y"}},
      {GateKind::XNOR,
       {{{"t", GateKind::NAND, {"a", "b"}},
         {"u", GateKind::NAND, {"a", "t"}},
         {"v", GateKind::NAND, {"b", "t"}},
         {"x", GateKind::NAND, {"u", "v"}},
         {"y", GateKind::NAND, {"x", "x"}}},
        "y"}},
  };
  return table;
}

MappedNetlist map_to_nand_nor(const Netlist &n) { return Mapper(n).run(); }

bool is_nand_nor_only(const Netlist &n) {
  for (const auto &g : n.gates())
    if (g.kind != GateKind::NAND && g.kind != GateKind::NOR) return false;
  return true;
}

}  // namespace lenc
