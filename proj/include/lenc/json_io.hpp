#pragma once

#include <filesystem>
#include <stdexcept>

#include <json.hpp>

#include "lenc/attack.hpp"
#include "lenc/integrator.hpp"
#include "lenc/verifier.hpp"

namespace lenc {

using json = nlohmann::ordered_json;

/// Malformed or inconsistent JSON artifact.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {name, inputs, outputs, gates: [{out, kind, in}]}
json netlist_to_json(const Netlist &n);
Netlist netlist_from_json(const json &j);

/// Reads BENCH or, for a .json extension, the JSON netlist form.
Netlist read_netlist_file(const std::filesystem::path &path);

struct KeyFile {
  std::string benchmark;
  std::vector<std::string> po_order;
  KeyVector k_ec{KeyRole::k_ec, {}};
  KeyVector k_cc{KeyRole::k_cc, {}};
  KeyVector k_mux{KeyRole::k_mux, {}};
  KeyVector k_fc{KeyRole::k_fc, {}};
  std::vector<KeyPort> key_map;
};

json key_file_to_json(const KeyFile &k);
/// Validates every size relation; throws FormatError on a truncated or
/// inconsistent key.
KeyFile key_file_from_json(const json &j);

/// {plaintext_len, pad_len, ciphertext_hex}
json trace_to_json(const EncryptionTrace &t);
EncryptionTrace trace_from_json(const json &j);

json verdict_to_json(const EquivVerdict &v);
json stats_to_json(const CircuitStats &s);
json attack_report_to_json(const AttackReport &r);

json read_json_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);
void write_json_file(const std::filesystem::path &path, const json &j);

}  // namespace lenc
