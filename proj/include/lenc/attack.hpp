#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lenc/corrector.hpp"
#include "lenc/optimizer.hpp"

namespace lenc {

enum class AttackMode : std::uint8_t { baseline, resynthesis, worst_case_ec, worst_case_cc };

std::string_view to_string(AttackMode m);
std::optional<AttackMode> attack_mode_from_string(std::string_view text);

/// Structural observables compared by the key-guessing heuristic.
struct Features {
  std::size_t gates = 0;
  std::size_t literals = 0;
  std::size_t depth = 0;

  auto operator<=>(const Features &) const = default;
};

Features features_of(const Netlist &n);

enum class Guess : std::uint8_t { zero, one, unresolved };

/// The smaller circuit is taken to come from the wrong key value, so the
/// guess is the other value. Equal features leave the bit unresolved.
Guess guess_from_features(const Features &with_zero, const Features &with_one);

struct BitGuess {
  std::string port;
  Guess guess = Guess::unresolved;
  Features with_zero;
  Features with_one;
  /// Gate count under 1 minus gate count under 0.
  long long feature_delta = 0;
};

struct Metrics {
  double ac = 0;               ///< percent of all bits guessed correctly
  std::optional<double> kpa;   ///< percent of resolved bits, absent if none resolved
  std::size_t correct = 0;
  std::size_t resolved = 0;
};

/// Throws std::invalid_argument on a length mismatch.
Metrics compute_metrics(const std::vector<Guess> &guesses, const BitString &truth);

struct AttackReport {
  AttackMode mode = AttackMode::baseline;
  std::vector<BitGuess> per_bit;
  std::vector<std::string> recipes;
  std::optional<Metrics> direct;      ///< guesses as made
  std::optional<Metrics> complement;  ///< every resolved guess flipped
  std::optional<double> ac;           ///< max of the two
  std::optional<double> kpa;          ///< max of the two

  std::vector<Guess> guesses() const;
};

struct AttackOptions {
  OptEffort hardcode_effort = OptEffort::standard();
  unsigned jobs = 1;
};

/// For every key port, hardcodes 0 and 1, simplifies, and guesses from the
/// feature comparison. Throws std::invalid_argument when `key_ports` is empty
/// or names a net that is not a PI.
AttackReport scope_baseline(const Netlist &locked, const std::vector<std::string> &key_ports,
                            const AttackOptions &opts = {});

/// Runs the baseline on one resynthesized variant per recipe and takes a
/// per-bit majority vote; ties stay unresolved. Needs at least two recipes.
AttackReport scope_resynth(const Netlist &locked, const std::vector<std::string> &key_ports,
                           const std::vector<OptEffort> &recipes, const AttackOptions &opts = {});

/// Wraps one isolated component with an XOR per PO driven by a hypothesis bit
/// (0 buffered, 1 inverted) and attacks those bits.
AttackReport worst_case_split(const Netlist &component, AttackMode mode, const AttackOptions &opts = {});

/// The XOR-wrapped component used by worst_case_split, with key ports
/// keyinput0.. one per PO.
Netlist hypothesis_wrapper(const Netlist &component);

/// Scores a report against the true key, filling direct/complement/ac/kpa.
void score(AttackReport &report, const BitString &truth);

}  // namespace lenc
