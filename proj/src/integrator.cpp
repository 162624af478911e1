#include "lenc/integrator.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "lenc/compose.hpp"

namespace lenc {

std::string_view to_string(Side side) { return side == Side::ec ? "ec" : "cc"; }

std::string key_port_name(std::size_t index) { return "keyinput" + std::to_string(index); }

Integration build_fc(const Netlist &ec_final, const Netlist &cc, RandomSource &rng, const OptEffort &effort,
                     const std::optional<BitString> &k_mux) {
  require_same_interface(ec_final, cc, "final circuit");
  const std::size_t pos = cc.outputs().size();
  if (pos == 0) throw std::invalid_argument("final circuit: no primary outputs");
  for (const auto &in : cc.inputs())
    if (in.starts_with("keyinput")) throw std::invalid_argument("primary input '" + in + "' clashes with key port names");
  if (k_mux && k_mux->size() != 2 * pos)
    throw std::invalid_argument("k_mux needs " + std::to_string(2 * pos) + " bits, got " + std::to_string(k_mux->size()));

  Integration out{{}, k_mux ? KeyVector{KeyRole::k_mux, *k_mux} : random_key(KeyRole::k_mux, 2 * pos, rng), {}};
  RawNetlist raw{cc.name() + "_fc", cc.inputs(), cc.outputs(), {}};
  for (std::size_t k = 0; k < 2 * pos; ++k) raw.inputs.push_back(key_port_name(k));
  const std::string ec_prefix = free_prefix("e", {&ec_final, &cc});
  const std::string cc_prefix = free_prefix("c", {&ec_final, &cc});
  const std::string kg_prefix = free_prefix("kg", {&ec_final, &cc});
  const auto ec_out = append_copy(raw, ec_final, ec_prefix);
  const auto cc_out = append_copy(raw, cc, cc_prefix);

  std::set<std::string> frozen;
  for (std::size_t i = 0; i < pos; ++i) {
    std::string mux_out[2];
    for (int s = 0; s < 2; ++s) {
      const std::size_t k = 2 * i + s;
      const std::string &buffered = s == 0 ? ec_out[i] : cc_out[i];
      const std::string inverted = kg_prefix + "n" + std::to_string(k);
      raw.gates.push_back({inverted, GateKind::NOT, {buffered}});
      MuxKeyGate kg{cc.outputs()[i], s == 0 ? Side::ec : Side::cc, key_port_name(k), buffered, inverted};
      if (out.k_mux.bits[k]) std::swap(kg.data0, kg.data1);
      mux_out[s] = kg_prefix + "m" + std::to_string(k);
      raw.gates.push_back({mux_out[s], GateKind::MUX2, {kg.key_port, kg.data0, kg.data1}});
      frozen.insert(mux_out[s]);
      out.fc.key_map.push_back({kg.key_port, kg.po_name, kg.side});
      out.key_gates.push_back(std::move(kg));
    }
    raw.gates.push_back({cc.outputs()[i], GateKind::XOR, {mux_out[0], mux_out[1]}});
  }
  Netlist fc = optimize(Netlist::build(std::move(raw)), effort, frozen);
  out.fc.netlist = anonymize(fc, "f");
  return out;
}

KeyVector derive_final_key(const KeyVector &k_mux, const KeyVector &k_ec, const KeyVector &k_cc) {
  if (k_mux.role != KeyRole::k_mux || k_ec.role != KeyRole::k_ec || k_cc.role != KeyRole::k_cc)
    throw std::invalid_argument("derive_final_key: key roles out of order");
  if (k_ec.size() != k_cc.size() || k_mux.size() != 2 * k_ec.size())
    throw std::invalid_argument("derive_final_key: sizes " + std::to_string(k_mux.size()) + "/" +
                                std::to_string(k_ec.size()) + "/" + std::to_string(k_cc.size()) + " are inconsistent");
  KeyVector k_fc{KeyRole::k_fc, BitString(k_mux.size())};
  for (std::size_t i = 0; i < k_ec.size(); ++i) {
    k_fc.bits[2 * i] = k_mux.bits[2 * i] != k_ec.bits[i];
    k_fc.bits[2 * i + 1] = k_mux.bits[2 * i + 1] != k_cc.bits[i];
  }
  return k_fc;
}

Netlist lower_mux(const Netlist &n) {
  bool any = false;
  for (const auto &g : n.gates()) any |= g.kind == GateKind::MUX2;
  if (!any) return n;

  RawNetlist raw = n.raw();
  std::unordered_set<std::string> taken(raw.inputs.begin(), raw.inputs.end());
  for (const auto &g : raw.gates) taken.insert(g.output);
  auto fresh = [&](std::string name) {
    while (taken.contains(name)) name += "_";
    taken.insert(name);
    return name;
  };

  std::unordered_map<std::string, std::string> inverted;  // select net -> its NOT
  std::vector<Gate> gates;
  for (auto &g : raw.gates) {
    if (g.kind != GateKind::MUX2) {
      gates.push_back(std::move(g));
      continue;
    }
    const std::string &s = g.inputs[0];
    auto it = inverted.find(s);
    if (it == inverted.end()) {
      it = inverted.emplace(s, fresh(s + "_n")).first;
      gates.push_back({it->second, GateKind::NOT, {s}});
    }
    const std::string a0 = fresh(g.output + "_a0");
    const std::string a1 = fresh(g.output + "_a1");
    gates.push_back({a0, GateKind::AND, {it->second, g.inputs[1]}});
    gates.push_back({a1, GateKind::AND, {s, g.inputs[2]}});
    gates.push_back({g.output, GateKind::OR, {a0, a1}});
  }
  raw.gates = std::move(gates);
  return Netlist::build(std::move(raw));
}

Netlist apply_key(const Netlist &fc, const std::vector<KeyPort> &key_map, const BitString &key) {
  if (key.size() != key_map.size())
    throw std::invalid_argument("key has " + std::to_string(key.size()) + " bits, circuit has " +
                                std::to_string(key_map.size()) + " key ports");
  std::map<std::string, bool> bindings;
  for (std::size_t i = 0; i < key.size(); ++i) bindings[key_map[i].port] = key[i];
  return propagate_constants(fc, bindings);
}

std::vector<std::string> find_key_ports(const Netlist &n) {
  std::vector<std::pair<std::size_t, std::string>> ports;
  for (const auto &in : n.inputs()) {
    if (!in.starts_with("keyinput") || in.size() == 8) continue;
    std::size_t idx = 0;
    auto [p, ec] = std::from_chars(in.data() + 8, in.data() + in.size(), idx);
    if (ec == std::errc() && p == in.data() + in.size()) ports.emplace_back(idx, in);
  }
  std::sort(ports.begin(), ports.end());
  std::vector<std::string> names;
  for (auto &p : ports) names.push_back(std::move(p.second));
  return names;
}

}  // namespace lenc
