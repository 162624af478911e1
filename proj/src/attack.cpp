#include "lenc/attack.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

#include "lenc/compose.hpp"

namespace lenc {

namespace {

template <typename F>
void parallel_for(std::size_t count, unsigned jobs, F &&body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) body(i);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto &th : pool) th.join();
}

}  // namespace

std::string_view to_string(AttackMode m) {
  switch (m) {
    case AttackMode::baseline: return "baseline";
    case AttackMode::resynthesis: return "resynthesis";
    case AttackMode::worst_case_ec: return "worst_case_ec";
    case AttackMode::worst_case_cc: return "worst_case_cc";
  }
  return "?";
}

std::optional<AttackMode> attack_mode_from_string(std::string_view text) {
  for (auto m : {AttackMode::baseline, AttackMode::resynthesis, AttackMode::worst_case_ec, AttackMode::worst_case_cc})
    if (text == to_string(m)) return m;
  return std::nullopt;
}

Features features_of(const Netlist &n) {
  const auto s = stats(n);
  return {s.gate_count, s.literal_count, s.depth};
}

Guess guess_from_features(const Features &with_zero, const Features &with_one) {
  if (with_zero == with_one) return Guess::unresolved;
  return with_zero < with_one ? Guess::one : Guess::zero;
}

Metrics compute_metrics(const std::vector<Guess> &guesses, const BitString &truth) {
  if (guesses.size() != truth.size())
    throw std::invalid_argument("metrics: " + std::to_string(guesses.size()) + " guesses for " +
                                std::to_string(truth.size()) + " key bits");
  Metrics m;
  for (std::size_t i = 0; i < guesses.size(); ++i) {
    if (guesses[i] == Guess::unresolved) continue;
    ++m.resolved;
    m.correct += (guesses[i] == Guess::one) == truth[i];
  }
  m.ac = truth.empty() ? 0.0 : 100.0 * static_cast<double>(m.correct) / static_cast<double>(truth.size());
  if (m.resolved) m.kpa = 100.0 * static_cast<double>(m.correct) / static_cast<double>(m.resolved);
  return m;
}

std::vector<Guess> AttackReport::guesses() const {
  std::vector<Guess> g;
  for (const auto &b : per_bit) g.push_back(b.guess);
  return g;
}

void score(AttackReport &report, const BitString &truth) {
  auto guesses = report.guesses();
  report.direct = compute_metrics(guesses, truth);
  for (auto &g : guesses)
    if (g != Guess::unresolved) g = g == Guess::one ? Guess::zero : Guess::one;
  report.complement = compute_metrics(guesses, truth);
  report.ac = std::max(report.direct->ac, report.complement->ac);
  if (report.direct->kpa) report.kpa = std::max(*report.direct->kpa, *report.complement->kpa);
}

AttackReport scope_baseline(const Netlist &locked, const std::vector<std::string> &key_ports,
                            const AttackOptions &opts) {
  if (key_ports.empty()) throw std::invalid_argument("attack: no key ports");
  for (const auto &p : key_ports)
    if (!locked.input_index(p)) throw std::invalid_argument("attack: key port '" + p + "' is not a primary input");
  AttackReport report;
  report.mode = AttackMode::baseline;
  report.per_bit.resize(key_ports.size());
  parallel_for(key_ports.size(), opts.jobs, [&](std::size_t i) {
    BitGuess &b = report.per_bit[i];
    b.port = key_ports[i];
    b.with_zero = features_of(optimize(propagate_constants(locked, {{b.port, false}}), opts.hardcode_effort));
    b.with_one = features_of(optimize(propagate_constants(locked, {{b.port, true}}), opts.hardcode_effort));
    b.guess = guess_from_features(b.with_zero, b.with_one);
    b.feature_delta = static_cast<long long>(b.with_one.gates) - static_cast<long long>(b.with_zero.gates);
  });
  return report;
}

AttackReport scope_resynth(const Netlist &locked, const std::vector<std::string> &key_ports,
                           const std::vector<OptEffort> &recipes, const AttackOptions &opts) {
  if (recipes.size() < 2) throw std::invalid_argument("resynthesis attack needs at least two recipes");
  std::vector<AttackReport> runs;
  for (const auto &r : recipes) runs.push_back(scope_baseline(optimize(locked, r), key_ports, opts));

  AttackReport report;
  report.mode = AttackMode::resynthesis;
  for (const auto &r : recipes) report.recipes.push_back(to_string(r));
  for (std::size_t i = 0; i < key_ports.size(); ++i) {
    int ones = 0, zeros = 0;
    long long delta = 0;
    for (const auto &run : runs) {
      ones += run.per_bit[i].guess == Guess::one;
      zeros += run.per_bit[i].guess == Guess::zero;
      delta += run.per_bit[i].feature_delta;
    }
    BitGuess b = runs.front().per_bit[i];
    b.guess = ones > zeros ? Guess::one : zeros > ones ? Guess::zero : Guess::unresolved;
    b.feature_delta = delta;
    report.per_bit.push_back(std::move(b));
  }
  return report;
}

Netlist hypothesis_wrapper(const Netlist &component) {
  if (component.outputs().empty()) throw std::invalid_argument("worst-case attack: component has no outputs");
  RawNetlist raw{component.name() + "_wrapped", component.inputs(), component.outputs(), {}};
  for (const auto &in : component.inputs())
    if (in.starts_with("keyinput"))
      throw std::invalid_argument("primary input '" + in + "' clashes with key port names");
  for (std::size_t i = 0; i < component.outputs().size(); ++i) raw.inputs.push_back("keyinput" + std::to_string(i));
  const auto outs = append_copy(raw, component, free_prefix("w", {&component}));
  for (std::size_t i = 0; i < outs.size(); ++i)
    raw.gates.push_back({component.outputs()[i], GateKind::XOR, {outs[i], "keyinput" + std::to_string(i)}});
  return Netlist::build(std::move(raw));
}

AttackReport worst_case_split(const Netlist &component, AttackMode mode, const AttackOptions &opts) {
  if (mode != AttackMode::worst_case_ec && mode != AttackMode::worst_case_cc)
    throw std::invalid_argument("worst_case_split needs mode worst_case_ec or worst_case_cc");
  const Netlist wrapped = hypothesis_wrapper(component);
  std::vector<std::string> ports;
  for (std::size_t i = 0; i < component.outputs().size(); ++i) ports.push_back("keyinput" + std::to_string(i));
  AttackReport report = scope_baseline(wrapped, ports, opts);
  report.mode = mode;
  return report;
}

}  // namespace lenc
