#include "lenc/optimizer.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace lenc {

namespace {

constexpr std::uint32_t no_node = ~std::uint32_t{0};

struct Node {
  GateKind kind = GateKind::BUF;
  std::array<std::uint32_t, 3> fanin{no_node, no_node, no_node};
  std::string name;
  bool input = false;
  bool frozen = false;
};

struct Graph {
  std::string name;
  std::vector<Node> nodes;  // topological
  std::vector<std::uint32_t> inputs;
  std::vector<std::string> output_names;
  std::vector<std::uint32_t> outputs;
};

Graph to_graph(const Netlist &n, const std::set<std::string> &frozen) {
  Graph g;
  g.name = n.name();
  g.nodes.reserve(n.num_signals());
  for (const auto &in : n.inputs()) {
    Node node;
    node.name = in;
    node.input = true;
    node.frozen = frozen.contains(in);
    g.inputs.push_back(static_cast<std::uint32_t>(g.nodes.size()));
    g.nodes.push_back(std::move(node));
  }
  for (std::size_t i = 0; i < n.gates().size(); ++i) {
    const Gate &gate = n.gates()[i];
    Node node;
    node.kind = gate.kind;
    for (int k = 0; k < arity(gate.kind); ++k) node.fanin[k] = n.fanin_ids(i)[k];
    node.name = gate.output;
    node.frozen = frozen.contains(gate.output);
    g.nodes.push_back(std::move(node));
  }
  g.output_names = n.outputs();
  g.outputs = n.output_ids();
  return g;
}

struct StrashKey {
  GateKind kind;
  std::array<std::uint32_t, 3> fanin;
  bool operator==(const StrashKey &) const = default;
};

struct StrashHash {
  std::size_t operator()(const StrashKey &k) const {
    std::uint64_t h = static_cast<std::uint64_t>(k.kind) * 0x9E3779B97F4A7C15ull;
    for (auto f : k.fanin) h = (h ^ f) * 0xBF58476D1CE4E5B9ull + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

struct PassSet {
  bool const_prop = false, buf_collapse = false, duplicate_input = false, double_inverter = false, strash = false,
       dead_code = false;
  void enable(Pass p) {
    switch (p) {
      case Pass::const_prop: const_prop = true; break;
      case Pass::buf_collapse: buf_collapse = true; break;
      case Pass::duplicate_input: duplicate_input = true; break;
      case Pass::double_inverter: double_inverter = true; break;
      case Pass::strash: strash = true; break;
      case Pass::dead_code: dead_code = true; break;
    }
  }
};

/// Rebuilds a graph in topological order, simplifying each gate as it is
/// re-created. Rules only inspect already-final fanins, so one sweep is a
/// fixpoint for the local rules that are enabled.
class Rebuilder {
 public:
  Rebuilder(const Graph &src, PassSet passes) : src_(src), passes_(passes) {}

  Graph run() {
    out_.name = src_.name;
    std::vector<std::uint32_t> map(src_.nodes.size(), no_node);
    for (std::size_t i = 0; i < src_.nodes.size(); ++i) {
      const Node &node = src_.nodes[i];
      if (node.input) {
        map[i] = add_node(node);
        out_.inputs.push_back(map[i]);
        continue;
      }
      if (node.kind == GateKind::CONST0 || node.kind == GateKind::CONST1) {
        if (!node.frozen) {
          map[i] = constant(node.kind == GateKind::CONST1, node.name);
          continue;
        }
      }
      std::array<std::uint32_t, 3> f{no_node, no_node, no_node};
      for (int k = 0; k < arity(node.kind); ++k) f[k] = map[node.fanin[k]];
      if (node.frozen) {
        Node copy = node;
        copy.fanin = f;
        map[i] = add_node(std::move(copy));
        if (passes_.strash) strash_.emplace(StrashKey{node.kind, canonical(node.kind, f)}, map[i]);
        continue;
      }
      map[i] = make(node.kind, f, node.name);
    }
    out_.output_names = src_.output_names;
    for (auto o : src_.outputs) out_.outputs.push_back(map[o]);
    if (passes_.dead_code) sweep_dead();
    return std::move(out_);
  }

 private:
  std::uint32_t add_node(Node node) {
    if (!node.name.empty() && !used_names_.insert(node.name).second) node.name.clear();
    out_.nodes.push_back(std::move(node));
    return static_cast<std::uint32_t>(out_.nodes.size() - 1);
  }

  std::uint32_t constant(bool value, const std::string &name = {}) {
    std::uint32_t &slot = const_node_[value];
    if (slot == no_node) {
      Node node;
      node.kind = value ? GateKind::CONST1 : GateKind::CONST0;
      node.name = name;
      slot = add_node(std::move(node));
    }
    return slot;
  }

  std::optional<bool> const_value(std::uint32_t id) const {
    const Node &n = out_.nodes[id];
    if (n.frozen || n.input) return std::nullopt;
    if (n.kind == GateKind::CONST0) return false;
    if (n.kind == GateKind::CONST1) return true;
    return std::nullopt;
  }

  static std::array<std::uint32_t, 3> canonical(GateKind kind, std::array<std::uint32_t, 3> f) {
    if (is_commutative(kind) && f[1] < f[0]) std::swap(f[0], f[1]);
    return f;
  }

  std::uint32_t make(GateKind kind, std::array<std::uint32_t, 3> f, const std::string &name = {}) {
    std::optional<bool> c0, c1, c2;
    if (arity(kind) > 0) c0 = const_value(f[0]);
    if (arity(kind) > 1) c1 = const_value(f[1]);
    if (arity(kind) > 2) c2 = const_value(f[2]);

    if (passes_.const_prop) {
      switch (kind) {
        case GateKind::NOT:
          if (c0) return constant(!*c0, name);
          break;
        case GateKind::BUF:
          if (c0) return f[0];
          break;
        case GateKind::AND:
        case GateKind::NAND:
        case GateKind::OR:
        case GateKind::NOR:
        case GateKind::XOR:
        case GateKind::XNOR:
          if (c0 || c1) {
            const bool c = c0 ? *c0 : *c1;
            const std::uint32_t x = c0 ? f[1] : f[0];
            switch (kind) {
              case GateKind::AND: return c ? x : constant(false, name);
              case GateKind::NAND: return c ? make(GateKind::NOT, {x, no_node, no_node}, name) : constant(true, name);
              case GateKind::OR: return c ? constant(true, name) : x;
              case GateKind::NOR: return c ? constant(false, name) : make(GateKind::NOT, {x, no_node, no_node}, name);
              case GateKind::XOR: return c ? make(GateKind::NOT, {x, no_node, no_node}, name) : x;
              default: return c ? x : make(GateKind::NOT, {x, no_node, no_node}, name);
            }
          }
          break;
        case GateKind::MUX2: {
          const std::uint32_t s = f[0], d0 = f[1], d1 = f[2];
          if (c0) return *c0 ? d1 : d0;
          if (c1 && c2) {
            if (*c1 == *c2) return constant(*c1, name);
            return *c1 ? make(GateKind::NOT, {s, no_node, no_node}, name) : s;
          }
          if (c1) {
            if (!c1.value_or(false)) return make(GateKind::AND, {s, d1, no_node}, name);
            return make(GateKind::OR, {make(GateKind::NOT, {s, no_node, no_node}), d1, no_node}, name);
          }
          if (c2) {
            if (c2.value_or(false)) return make(GateKind::OR, {s, d0, no_node}, name);
            return make(GateKind::AND, {make(GateKind::NOT, {s, no_node, no_node}), d0, no_node}, name);
          }
          break;
        }
        default:
          break;
      }
    }

    if (passes_.buf_collapse && kind == GateKind::BUF) return f[0];

    if (passes_.duplicate_input) {
      if (arity(kind) == 2 && f[0] == f[1]) {
        switch (kind) {
          case GateKind::AND:
          case GateKind::OR: return f[0];
          case GateKind::NAND:
          case GateKind::NOR: return make(GateKind::NOT, {f[0], no_node, no_node}, name);
          case GateKind::XOR: return constant(false, name);
          case GateKind::XNOR: return constant(true, name);
          default: break;
        }
      }
      if (kind == GateKind::MUX2 && f[1] == f[2]) return f[1];
    }

    if (passes_.double_inverter && kind == GateKind::NOT) {
      const Node &in = out_.nodes[f[0]];
      if (!in.input && in.kind == GateKind::NOT) return in.fanin[0];
    }

    if (passes_.strash) {
      StrashKey key{kind, canonical(kind, f)};
      if (auto it = strash_.find(key); it != strash_.end()) return it->second;
      Node node;
      node.kind = kind;
      node.fanin = key.fanin;
      node.name = name;
      auto id = add_node(std::move(node));
      strash_.emplace(key, id);
      return id;
    }
    Node node;
    node.kind = kind;
    node.fanin = f;
    node.name = name;
    return add_node(std::move(node));
  }

  void sweep_dead() {
    std::vector<bool> live(out_.nodes.size(), false);
    for (auto o : out_.outputs) live[o] = true;
    for (std::size_t i = 0; i < out_.nodes.size(); ++i)
      if (out_.nodes[i].frozen || out_.nodes[i].input) live[i] = true;
    for (std::size_t i = out_.nodes.size(); i-- > 0;) {
      if (!live[i] || out_.nodes[i].input) continue;
      for (int k = 0; k < arity(out_.nodes[i].kind); ++k) live[out_.nodes[i].fanin[k]] = true;
    }
    std::vector<std::uint32_t> remap(out_.nodes.size(), no_node);
    std::vector<Node> kept;
    for (std::size_t i = 0; i < out_.nodes.size(); ++i) {
      if (!live[i]) continue;
      Node node = std::move(out_.nodes[i]);
      for (int k = 0; k < (node.input ? 0 : arity(node.kind)); ++k) node.fanin[k] = remap[node.fanin[k]];
      remap[i] = static_cast<std::uint32_t>(kept.size());
      kept.push_back(std::move(node));
    }
    out_.nodes = std::move(kept);
    for (auto &in : out_.inputs) in = remap[in];
    for (auto &o : out_.outputs) o = remap[o];
  }

  const Graph &src_;
  PassSet passes_;
  Graph out_;
  std::unordered_map<StrashKey, std::uint32_t, StrashHash> strash_;
  std::unordered_set<std::string> used_names_;
  std::uint32_t const_node_[2] = {no_node, no_node};
};

/// Turns a graph back into a Netlist, giving every PO a driver carrying its
/// name and inventing names for anonymous nodes.
Netlist to_netlist(Graph g) {
  std::unordered_set<std::string> names;
  for (const auto &node : g.nodes)
    if (!node.name.empty()) names.insert(node.name);
  for (const auto &po : g.output_names) names.insert(po);

  // Which node currently owns each PO name.
  std::unordered_map<std::string, std::uint32_t> node_named;
  for (std::uint32_t i = 0; i < g.nodes.size(); ++i)
    if (!g.nodes[i].name.empty()) node_named.emplace(g.nodes[i].name, i);

  std::size_t counter = 0;
  auto fresh = [&](const std::string &base) {
    std::string candidate;
    do candidate = base + "_o" + std::to_string(counter++);
    while (names.contains(candidate));
    names.insert(candidate);
    return candidate;
  };

  std::unordered_map<std::string, std::uint32_t> po_target;
  for (std::size_t i = 0; i < g.outputs.size(); ++i) po_target.emplace(g.output_names[i], g.outputs[i]);

  // A gate carrying the name of a PO that is driven elsewhere must move aside.
  for (std::uint32_t i = 0; i < g.nodes.size(); ++i) {
    auto it = po_target.find(g.nodes[i].name);
    if (it != po_target.end() && it->second != i && !g.nodes[i].input && !g.nodes[i].frozen) {
      node_named.erase(g.nodes[i].name);
      g.nodes[i].name = fresh("n");
      node_named.emplace(g.nodes[i].name, i);
    }
  }

  std::vector<bool> claimed(g.nodes.size(), false);
  for (std::size_t i = 0; i < g.outputs.size(); ++i)
    if (g.nodes[g.outputs[i]].name == g.output_names[i]) claimed[g.outputs[i]] = true;

  std::vector<std::pair<std::string, std::uint32_t>> extra_buffers;  // PO name, driving node
  for (std::size_t i = 0; i < g.outputs.size(); ++i) {
    const std::string &po = g.output_names[i];
    const std::uint32_t target = g.outputs[i];
    Node &node = g.nodes[target];
    if (node.name == po) continue;
    if (!node.input && !node.frozen && !claimed[target]) {
      node.name = po;
      claimed[target] = true;
      continue;
    }
    extra_buffers.emplace_back(po, target);
  }

  for (auto &node : g.nodes)
    if (node.name.empty()) node.name = fresh("n");

  RawNetlist raw;
  raw.name = g.name;
  for (auto in : g.inputs) raw.inputs.push_back(g.nodes[in].name);
  raw.outputs = g.output_names;
  for (const auto &node : g.nodes) {
    if (node.input) continue;
    Gate gate{node.name, node.kind, {}};
    for (int k = 0; k < arity(node.kind); ++k) gate.inputs.push_back(g.nodes[node.fanin[k]].name);
    raw.gates.push_back(std::move(gate));
  }
  for (const auto &[po, target] : extra_buffers) raw.gates.push_back({po, GateKind::BUF, {g.nodes[target].name}});
  return Netlist::build(std::move(raw));
}

Netlist rebuild(const Netlist &n, PassSet passes, const std::set<std::string> &frozen) {
  Graph g = to_graph(n, frozen);
  return to_netlist(Rebuilder(g, passes).run());
}

void check_frozen(const Netlist &result, const std::set<std::string> &frozen) {
  for (const auto &net : frozen)
    if (!result.has_net(net)) throw NetlistError("optimizer eliminated frozen net '" + net + "'");
}

std::vector<Pass> standard_passes() {
  return {Pass::const_prop, Pass::buf_collapse, Pass::duplicate_input,
          Pass::double_inverter, Pass::strash, Pass::dead_code};
}

}  // namespace

std::string_view to_string(Pass p) {
  switch (p) {
    case Pass::const_prop: return "const_prop";
    case Pass::buf_collapse: return "buf_collapse";
    case Pass::duplicate_input: return "duplicate_input";
    case Pass::double_inverter: return "double_inverter";
    case Pass::strash: return "strash";
    case Pass::dead_code: return "dead_code";
  }
  return "?";
}

OptEffort OptEffort::none() { return {Level::none, {}, 0}; }
OptEffort OptEffort::light() { return {Level::light, {Pass::const_prop, Pass::buf_collapse, Pass::dead_code}, 0}; }
OptEffort OptEffort::standard() { return {Level::standard, standard_passes(), 0}; }
OptEffort OptEffort::heavy(std::uint64_t seed) { return {Level::heavy, standard_passes(), seed}; }

OptEffort parse_recipe(std::string_view text) {
  auto colon = text.find(':');
  std::string_view level = text.substr(0, colon);
  std::uint64_t seed = 0;
  if (colon != std::string_view::npos) {
    std::string_view opt = text.substr(colon + 1);
    if (opt.substr(0, 5) != "seed=") throw std::invalid_argument("unknown recipe option '" + std::string(opt) + "'");
    opt.remove_prefix(5);
    auto [ptr, ec] = std::from_chars(opt.data(), opt.data() + opt.size(), seed);
    if (ec != std::errc{} || ptr != opt.data() + opt.size())
      throw std::invalid_argument("bad seed in recipe '" + std::string(text) + "'");
    if (level != "heavy") throw std::invalid_argument("only heavy recipes take a seed");
  }
  if (level == "none") return OptEffort::none();
  if (level == "light") return OptEffort::light();
  if (level == "standard") return OptEffort::standard();
  if (level == "heavy") return OptEffort::heavy(seed);
  throw std::invalid_argument("unknown optimization effort '" + std::string(text) + "'");
}

std::string to_string(const OptEffort &e) {
  switch (e.level) {
    case OptEffort::Level::none: return "none";
    case OptEffort::Level::light: return "light";
    case OptEffort::Level::standard: return "standard";
    case OptEffort::Level::heavy: return "heavy:seed=" + std::to_string(e.seed);
  }
  return "?";
}

Netlist run_passes(const Netlist &n, std::span<const Pass> passes, const std::set<std::string> &frozen) {
  Netlist cur = n;
  for (Pass p : passes) {
    PassSet set;
    set.enable(p);
    cur = rebuild(cur, set, frozen);
  }
  check_frozen(cur, frozen);
  return cur;
}

Netlist optimize(const Netlist &n, const OptEffort &effort, const std::set<std::string> &frozen) {
  for (const auto &p : effort.passes)
    if (std::find(standard_passes().begin(), standard_passes().end(), p) == standard_passes().end())
      throw std::invalid_argument("unknown pass");
  if (effort.passes.empty()) return n;
  std::mt19937_64 rng(effort.seed);
  std::vector<Pass> order = effort.passes;
  Netlist cur = n;
  for (int round = 0; round < 64; ++round) {
    if (effort.level == OptEffort::Level::heavy) std::shuffle(order.begin(), order.end(), rng);
    Netlist next = run_passes(cur, order, frozen);
    const bool fixpoint = next == cur;
    cur = std::move(next);
    if (fixpoint) break;
  }
  check_frozen(cur, frozen);
  return cur;
}

Netlist propagate_constants(const Netlist &n, const std::map<std::string, bool> &bindings) {
  for (const auto &[net, value] : bindings)
    if (!n.input_index(net)) throw NetlistError("cannot bind '" + net + "': not a primary input");

  Graph g = to_graph(n, {});
  // Bound inputs become constant gates; the rebuild folds them away.
  std::vector<std::uint32_t> kept_inputs;
  for (auto in : g.inputs) {
    Node &node = g.nodes[in];
    auto it = bindings.find(node.name);
    if (it == bindings.end()) {
      kept_inputs.push_back(in);
      continue;
    }
    node.input = false;
    node.kind = it->second ? GateKind::CONST1 : GateKind::CONST0;
    node.name.clear();
  }
  g.inputs = std::move(kept_inputs);
  PassSet set;
  set.enable(Pass::const_prop);
  set.enable(Pass::buf_collapse);
  set.enable(Pass::dead_code);
  return to_netlist(Rebuilder(g, set).run());
}

Netlist anonymize(const Netlist &n, const std::string &prefix, const std::set<std::string> &keep) {
  std::unordered_set<std::string> reserved(n.inputs().begin(), n.inputs().end());
  reserved.insert(n.outputs().begin(), n.outputs().end());
  reserved.insert(keep.begin(), keep.end());
  std::unordered_map<std::string, std::string> rename;
  std::size_t k = 0;
  for (const auto &g : n.gates()) {
    if (reserved.contains(g.output)) continue;
    std::string candidate;
    do candidate = prefix + std::to_string(k++);
    while (reserved.contains(candidate));
    rename.emplace(g.output, std::move(candidate));
  }
  auto mapped = [&](const std::string &net) {
    auto it = rename.find(net);
    return it == rename.end() ? net : it->second;
  };
  RawNetlist raw = n.raw();
  for (auto &g : raw.gates) {
    g.output = mapped(g.output);
    for (auto &in : g.inputs) in = mapped(in);
  }
  return Netlist::build(std::move(raw));
}

}  // namespace lenc
