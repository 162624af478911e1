#include "lenc/corrector.hpp"

#include <stdexcept>

#include "lenc/compose.hpp"

namespace lenc {

namespace {

void check_key(const KeyVector &k, KeyRole role, std::size_t size) {
  if (k.role != role || k.size() != size)
    throw std::invalid_argument(std::string(to_string(role)) + " needs " + std::to_string(size) + " bits, got " +
                                std::to_string(k.size()));
}

std::string fresh(const RawNetlist &raw, std::string name) {
  auto taken = [&](const std::string &s) {
    for (const auto &in : raw.inputs)
      if (in == s) return true;
    for (const auto &g : raw.gates)
      if (g.output == s) return true;
    return false;
  };
  while (taken(name)) name += "_";
  return name;
}

}  // namespace

std::string_view to_string(KeyRole role) {
  switch (role) {
    case KeyRole::k_ec: return "k_ec";
    case KeyRole::k_cc: return "k_cc";
    case KeyRole::k_mux: return "k_mux";
    case KeyRole::k_fc: return "k_fc";
  }
  return "?";
}

KeyVector random_key(KeyRole role, std::size_t size, RandomSource &rng) { return {role, rng.bits(size)}; }

Netlist cc_reference(const Netlist &oc, const Netlist &ec, const KeyVector &k_cc) {
  require_same_interface(oc, ec, "correction circuit");
  check_key(k_cc, KeyRole::k_cc, oc.outputs().size());
  RawNetlist raw{oc.name() + "_cc", oc.inputs(), oc.outputs(), {}};
  const std::string oc_prefix = free_prefix("oc", {&oc, &ec});
  const std::string ec_prefix = free_prefix("ec", {&oc, &ec});
  const std::string kg_prefix = free_prefix("cx", {&oc, &ec});
  const auto oc_out = append_copy(raw, oc, oc_prefix);
  const auto ec_out = append_copy(raw, ec, ec_prefix);
  for (std::size_t i = 0; i < oc.outputs().size(); ++i) {
    std::string ec_side = ec_out[i];
    if (k_cc.bits[i]) {
      ec_side = kg_prefix + "inv" + std::to_string(i);
      raw.gates.push_back({ec_side, GateKind::NOT, {ec_out[i]}});
    }
    raw.gates.push_back({oc.outputs()[i], GateKind::XOR, {oc_out[i], ec_side}});
  }
  return Netlist::build(std::move(raw));
}

CorrectionCircuit build_cc(const Netlist &oc, const Netlist &ec, RandomSource &rng, const OptEffort &effort,
                           const std::optional<BitString> &k_cc) {
  require_same_interface(oc, ec, "correction circuit");
  KeyVector key = k_cc ? KeyVector{KeyRole::k_cc, *k_cc} : random_key(KeyRole::k_cc, oc.outputs().size(), rng);
  Netlist cc = optimize(cc_reference(oc, ec, key), effort);
  return {anonymize(cc, "c"), std::move(key)};
}

Netlist ec_reference(const Netlist &ec, const KeyVector &k_ec) {
  check_key(k_ec, KeyRole::k_ec, ec.outputs().size());
  RawNetlist raw = ec.raw();
  for (std::size_t i = 0; i < ec.outputs().size(); ++i) {
    if (!k_ec.bits[i]) continue;
    const std::string &po = ec.outputs()[i];
    if (ec.input_index(po)) throw NetlistError("output '" + po + "' is a primary input and cannot be inverted in place");
    const std::string pre = fresh(raw, po + "_pre");
    rename_net(raw, po, pre);
    raw.gates.push_back({po, GateKind::NOT, {pre}});
  }
  return Netlist::build(std::move(raw));
}

RandomizedEc randomize_ec(const Netlist &ec, RandomSource &rng, const OptEffort &effort,
                          const std::optional<BitString> &k_ec) {
  KeyVector key = k_ec ? KeyVector{KeyRole::k_ec, *k_ec} : random_key(KeyRole::k_ec, ec.outputs().size(), rng);
  return {optimize(ec_reference(ec, key), effort), std::move(key)};
}

std::size_t shared_gate_count(const Netlist &cc) {
  std::vector<bool> shared(cc.num_signals(), false);
  for (auto po : cc.output_ids()) {
    if (po < cc.inputs().size()) continue;
    const std::size_t gi = po - cc.inputs().size();
    const GateKind k = cc.gates()[gi].kind;
    if (k != GateKind::XOR && k != GateKind::XNOR) continue;
    const auto &f = cc.fanin_ids(gi);
    const auto left = transitive_fanin(cc, std::span(&f[0], 1));
    const auto right = transitive_fanin(cc, std::span(&f[1], 1));
    for (std::size_t s = cc.inputs().size(); s < cc.num_signals(); ++s)
      if (left[s] && right[s]) shared[s] = true;
  }
  std::size_t count = 0;
  for (bool b : shared) count += b;
  return count;
}

}  // namespace lenc
