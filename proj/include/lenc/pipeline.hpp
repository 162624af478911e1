#pragma once

#include <filesystem>
#include <functional>
#include <optional>

#include "lenc/json_io.hpp"

namespace lenc {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<std::uint64_t> seed;
  OptEffort effort = OptEffort::standard();
  std::size_t exhaustive_threshold = 20;
  std::size_t runs_encrypt = 10;
  std::size_t runs_e2e = 4;
  std::filesystem::path output_dir = "lenc_out";
  unsigned jobs = 1;
  double sat_seconds = 60;
  bool emit_components = false;

  /// Throws ConfigError on zero counts or a threshold above 24.
  void validate() const;
  VerifyOptions verify_options() const;
};

/// Forced values for otherwise random choices; used to replay fixed examples.
struct Overrides {
  BlockCipher *cipher = nullptr;
  std::optional<CodingScheme> scheme;
  std::optional<BitString> k_cc;
  std::optional<BitString> k_ec;
  std::optional<BitString> k_mux;
};

struct Obligation {
  std::string name;
  EquivVerdict verdict;
};

/// A required equivalence that did not hold (or could not be proven).
class VerificationFailure : public std::runtime_error {
 public:
  explicit VerificationFailure(Obligation o);
  const Obligation &obligation() const { return obligation_; }

 private:
  Obligation obligation_;
};

struct EncryptionStage {
  MappedNetlist mapped;
  CodingScheme scheme;
  EncryptionTrace trace;
  Netlist basic_ec;
  Netlist intermediate_ec;
  std::size_t flips = 0;
  std::vector<Obligation> obligations;
};

/// Map, encode, encrypt, decode and optimize. Every equivalence obligation
/// is checked; the first failure throws VerificationFailure.
EncryptionStage run_encryption(const Netlist &oc, RandomSource &rng, const RunConfig &cfg, const Overrides &ov = {});

struct EndToEnd {
  Netlist cc;
  Netlist ec_final;
  FinalCircuit fc;
  KeyFile key;
  std::size_t shared_gates = 0;
  std::vector<Obligation> obligations;
};

/// CC construction, EC randomization and FC integration on top of one
/// encryption stage, ending with the restoration check.
EndToEnd run_end_to_end(const Netlist &oc, const EncryptionStage &enc, RandomSource &rng, const RunConfig &cfg,
                        const Overrides &ov = {});

struct RunRecord {
  std::size_t enc_index = 0;
  std::size_t e2e_index = 0;
  std::shared_ptr<const EncryptionStage> enc;
  EndToEnd e2e;
};

struct MatrixResult {
  std::vector<RunRecord> runs;
  std::size_t flips = 0;
  std::size_t flip_candidates = 0;
};

/// N encryption runs times M end-to-end runs, all drawn from one root
/// source. Encryption runs execute concurrently on `cfg.jobs` threads.
MatrixResult run_matrix(const Netlist &oc, const RunConfig &cfg);

/// Root source of a run: seeded when cfg.seed is set, the OS otherwise.
RandomSource root_source(const RunConfig &cfg);
/// Stream used by encryption run `i` / end-to-end run `j` of it.
RandomSource encryption_stream(const RandomSource &root, std::size_t i);
RandomSource end_to_end_stream(const RandomSource &enc_stream, std::size_t j);

json run_report(const Netlist &oc, const RunRecord &run, const RunConfig &cfg);
json matrix_report(const Netlist &oc, const MatrixResult &m, const RunConfig &cfg);

/// Writes fc.bench, fc.json, key.json, trace.json and report.json for every
/// run. A 1x1 matrix is written flat into the output directory, larger ones
/// into enc<i>/e2e<j>/ with a summary report.json on top.
void write_artifacts(const Netlist &oc, const MatrixResult &m, const RunConfig &cfg);

}  // namespace lenc
