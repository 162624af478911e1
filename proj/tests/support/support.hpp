#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lenc/attack.hpp"
#include "lenc/bench_io.hpp"
#include "lenc/corrector.hpp"
#include "lenc/encryptor.hpp"
#include "lenc/integrator.hpp"
#include "lenc/json_io.hpp"
#include "lenc/nandnor_map.hpp"
#include "lenc/optimizer.hpp"
#include "lenc/pipeline.hpp"
#include "lenc/verifier.hpp"

namespace lenc::testing {

inline std::filesystem::path source_dir() { return LENC_SOURCE_DIR; }

inline Netlist bench(std::string_view text, std::string name = "t") { return parse_bench(text, std::move(name)); }

/// po = (a and b) or c
inline Netlist golden_oc() {
  return bench(
      "INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(po)\n"
      "t1 = AND(a, b)\npo = OR(t1, c)\n",
      "golden");
}

/// Every .bench file of the bundled corpus.
inline std::vector<Netlist> corpus(std::size_t max_inputs = 64) {
  std::vector<Netlist> out;
  for (const char *sub : {"benchmarks/iscas85", "benchmarks/synthetic"}) {
    std::vector<std::filesystem::path> files;
    for (const auto &e : std::filesystem::directory_iterator(source_dir() / sub))
      if (e.path().extension() == ".bench") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto &f : files) {
      Netlist n = read_bench_file(f);
      if (n.inputs().size() <= max_inputs) out.push_back(std::move(n));
    }
  }
  return out;
}

/// Plain one-vector-at-a-time reference, independent of the word-parallel
/// simulator and the verifier. Only for small interfaces.
inline bool brute_force_equal(const Netlist &a, const Netlist &b) {
  const std::size_t k = a.inputs().size();
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << k); ++p) {
    Assignment in;
    for (std::size_t i = 0; i < k; ++i) in[a.inputs()[i]] = (p >> i) & 1;
    const Assignment ra = simulate(a, in), rb = simulate(b, in);
    for (const auto &po : a.outputs())
      if (ra.at(po) != rb.at(po)) return false;
  }
  return true;
}

/// Per-PO reference values over the full input space, index [pattern][po].
inline std::vector<std::vector<bool>> truth_table(const Netlist &n) {
  const std::size_t k = n.inputs().size();
  std::vector<std::vector<bool>> rows;
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << k); ++p) {
    Assignment in;
    for (std::size_t i = 0; i < k; ++i) in[n.inputs()[i]] = (p >> i) & 1;
    const Assignment r = simulate(n, in);
    std::vector<bool> row;
    for (const auto &po : n.outputs()) row.push_back(r.at(po));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Evaluates `n` with extra named inputs fixed, over all values of `free`.
inline std::vector<std::vector<bool>> truth_table_with(const Netlist &n, const std::vector<std::string> &free,
                                                       const Assignment &fixed) {
  std::vector<std::vector<bool>> rows;
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << free.size()); ++p) {
    Assignment in = fixed;
    for (std::size_t i = 0; i < free.size(); ++i) in[free[i]] = (p >> i) & 1;
    const Assignment r = simulate(n, in);
    std::vector<bool> row;
    for (const auto &po : n.outputs()) row.push_back(r.at(po));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Hand-built lock whose wrong key value lets an inverter pair cancel:
/// po_i = XOR(NOT w_i, k_i) when the correct bit is 0, XNOR(NOT w_i, k_i)
/// when it is 1, with w_i an AND of two PIs.
inline Netlist leaky_lock(const BitString &key) {
  RawNetlist raw{"leaky", {}, {}, {}};
  const std::size_t n = key.size();
  for (std::size_t i = 0; i < n + 1; ++i) raw.inputs.push_back("x" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) raw.inputs.push_back("keyinput" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string w = "w" + std::to_string(i), inv = "v" + std::to_string(i), po = "y" + std::to_string(i);
    raw.gates.push_back({w, GateKind::AND, {"x" + std::to_string(i), "x" + std::to_string(i + 1)}});
    raw.gates.push_back({inv, GateKind::NOT, {w}});
    raw.gates.push_back({po, key[i] ? GateKind::XNOR : GateKind::XOR, {inv, "keyinput" + std::to_string(i)}});
    raw.outputs.push_back(po);
  }
  return Netlist::build(std::move(raw));
}

/// Cipher double that returns one fixed block regardless of input.
class FixedCipher final : public BlockCipher {
 public:
  explicit FixedCipher(aes::Block out) : out_(out) {}
  aes::Block encrypt(const aes::Block &) override { return out_; }

 private:
  aes::Block out_;
};

class IdentityCipher final : public BlockCipher {
 public:
  aes::Block encrypt(const aes::Block &b) override { return b; }
};

inline std::vector<std::uint8_t> unhex(std::string_view hex) {
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i + 1 < hex.size(); i += 2)
    out.push_back(static_cast<std::uint8_t>(std::stoi(std::string(hex.substr(i, 2)), nullptr, 16)));
  return out;
}

}  // namespace lenc::testing
