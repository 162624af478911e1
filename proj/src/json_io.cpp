#include "lenc/json_io.hpp"

#include <fstream>
#include <sstream>

#include "lenc/bench_io.hpp"

namespace lenc {

namespace {

template <typename T>
T field(const json &j, const char *key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

KeyVector key_field(const json &j, const char *key, KeyRole role) {
  try {
    return {role, from_bit_text(field<std::string>(j, key))};
  } catch (const std::invalid_argument &e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

json metrics_to_json(const Metrics &m) {
  json j{{"ac", m.ac}, {"kpa", nullptr}, {"correct", m.correct}, {"resolved", m.resolved}};
  if (m.kpa) j["kpa"] = *m.kpa;
  return j;
}

json features_to_json(const Features &f) {
  return {{"gates", f.gates}, {"literals", f.literals}, {"depth", f.depth}};
}

std::string_view guess_text(Guess g) {
  switch (g) {
    case Guess::zero: return "0";
    case Guess::one: return "1";
    case Guess::unresolved: return "unresolved";
  }
  return "?";
}

}  // namespace

json netlist_to_json(const Netlist &n) {
  json gates = json::array();
  for (const auto &g : n.gates()) gates.push_back({{"out", g.output}, {"kind", to_string(g.kind)}, {"in", g.inputs}});
  return {{"name", n.name()}, {"inputs", n.inputs()}, {"outputs", n.outputs()}, {"gates", std::move(gates)}};
}

Netlist netlist_from_json(const json &j) {
  RawNetlist raw;
  raw.name = field<std::string>(j, "name");
  raw.inputs = field<std::vector<std::string>>(j, "inputs");
  raw.outputs = field<std::vector<std::string>>(j, "outputs");
  const json &gates = j.contains("gates") ? j.at("gates") : throw FormatError("missing field 'gates'");
  if (!gates.is_array()) throw FormatError("field 'gates' is not an array");
  for (const auto &g : gates) {
    const auto kind_text = field<std::string>(g, "kind");
    const auto kind = gate_kind_from_string(kind_text);
    if (!kind) throw FormatError("unknown gate kind '" + kind_text + "'");
    raw.gates.push_back({field<std::string>(g, "out"), *kind, field<std::vector<std::string>>(g, "in")});
  }
  try {
    return Netlist::build(std::move(raw));
  } catch (const NetlistError &e) {
    throw FormatError(e.what());
  }
}

Netlist read_netlist_file(const std::filesystem::path &path) {
  if (path.extension() == ".json") return netlist_from_json(read_json_file(path));
  return read_bench_file(path);
}

json key_file_to_json(const KeyFile &k) {
  json map = json::array();
  for (const auto &p : k.key_map) map.push_back({{"port", p.port}, {"po", p.po}, {"side", to_string(p.side)}});
  json j{{"benchmark", k.benchmark}, {"po_order", k.po_order}};
  for (const KeyVector *v : {&k.k_ec, &k.k_cc, &k.k_mux, &k.k_fc}) {
    j[std::string(to_string(v->role))] = to_bit_text(v->bits);
    j[std::string(to_string(v->role)) + "_hex"] = to_hex(v->bits);
  }
  j["key_port_map"] = std::move(map);
  return j;
}

KeyFile key_file_from_json(const json &j) {
  KeyFile k;
  k.benchmark = field<std::string>(j, "benchmark");
  k.po_order = field<std::vector<std::string>>(j, "po_order");
  k.k_ec = key_field(j, "k_ec", KeyRole::k_ec);
  k.k_cc = key_field(j, "k_cc", KeyRole::k_cc);
  k.k_mux = key_field(j, "k_mux", KeyRole::k_mux);
  k.k_fc = key_field(j, "k_fc", KeyRole::k_fc);
  const json &map = j.contains("key_port_map") ? j.at("key_port_map") : throw FormatError("missing field 'key_port_map'");
  for (const auto &p : map) {
    const auto side = field<std::string>(p, "side");
    if (side != "ec" && side != "cc") throw FormatError("key port side must be 'ec' or 'cc', got '" + side + "'");
    k.key_map.push_back({field<std::string>(p, "port"), field<std::string>(p, "po"), side == "ec" ? Side::ec : Side::cc});
  }
  const std::size_t pos = k.po_order.size();
  auto expect = [](const KeyVector &v, std::size_t size) {
    if (v.size() != size)
      throw FormatError(std::string(to_string(v.role)) + " has " + std::to_string(v.size()) + " bits, expected " +
                        std::to_string(size));
  };
  expect(k.k_ec, pos);
  expect(k.k_cc, pos);
  expect(k.k_mux, 2 * pos);
  expect(k.k_fc, 2 * pos);
  if (k.key_map.size() != 2 * pos)
    throw FormatError("key_port_map has " + std::to_string(k.key_map.size()) + " entries, expected " +
                      std::to_string(2 * pos));
  if (derive_final_key(k.k_mux, k.k_ec, k.k_cc) != k.k_fc)
    throw FormatError("k_fc is not k_mux xor (k_ec, k_cc)");
  for (const char *role : {"k_ec", "k_cc", "k_mux", "k_fc"}) {
    const std::string hex_key = std::string(role) + "_hex";
    if (!j.contains(hex_key)) continue;
    const auto &bits = role == std::string("k_ec")    ? k.k_ec.bits
                       : role == std::string("k_cc")  ? k.k_cc.bits
                       : role == std::string("k_mux") ? k.k_mux.bits
                                                      : k.k_fc.bits;
    if (field<std::string>(j, hex_key.c_str()) != to_hex(bits))
      throw FormatError("field '" + hex_key + "' disagrees with '" + role + "'");
  }
  return k;
}

json trace_to_json(const EncryptionTrace &t) {
  return {{"plaintext_len", t.plaintext_len}, {"pad_len", t.pad_len}, {"ciphertext_hex", to_hex(t.ciphertext)}};
}

EncryptionTrace trace_from_json(const json &j) {
  EncryptionTrace t;
  t.plaintext_len = field<std::size_t>(j, "plaintext_len");
  t.pad_len = field<std::size_t>(j, "pad_len");
  try {
    t.ciphertext = from_hex(field<std::string>(j, "ciphertext_hex"), t.plaintext_len + t.pad_len);
  } catch (const std::invalid_argument &e) {
    throw FormatError(std::string("field 'ciphertext_hex': ") + e.what());
  }
  return t;
}

json verdict_to_json(const EquivVerdict &v) {
  json j{{"result", to_string(v.result)},
         {"method", to_string(v.method)},
         {"vectors_checked", v.vectors_checked},
         {"sat_conflicts", v.sat_conflicts},
         {"swept_equivalences", v.swept_equivalences}};
  if (v.witness) {
    json w = json::object();
    for (const auto &[net, bit] : *v.witness) w[net] = bit ? 1 : 0;
    j["witness"] = std::move(w);
    j["mismatched_output"] = v.mismatched_output;
  }
  return j;
}

json stats_to_json(const CircuitStats &s) {
  json hist = json::object();
  for (const auto &[kind, count] : s.type_histogram) hist[std::string(to_string(kind))] = count;
  return {{"gates", s.gate_count}, {"depth", s.depth}, {"literals", s.literal_count}, {"types", std::move(hist)}};
}

json attack_report_to_json(const AttackReport &r) {
  json bits = json::array();
  for (const auto &b : r.per_bit)
    bits.push_back({{"port", b.port},
                    {"guess", guess_text(b.guess)},
                    {"feature_delta", b.feature_delta},
                    {"with_zero", features_to_json(b.with_zero)},
                    {"with_one", features_to_json(b.with_one)}});
  json j{{"mode", to_string(r.mode)}, {"per_bit", std::move(bits)}, {"ac", nullptr}, {"kpa", nullptr},
         {"recipes", r.recipes}};
  if (r.ac) j["ac"] = *r.ac;
  if (r.kpa) j["kpa"] = *r.kpa;
  if (r.direct) j["direct"] = metrics_to_json(*r.direct);
  if (r.complement) j["complement"] = metrics_to_json(*r.complement);
  return j;
}

json read_json_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json_file(const std::filesystem::path &path, const json &j) { write_text_file(path, j.dump(2) + "\n"); }

}  // namespace lenc
