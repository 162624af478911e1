#include "lenc/verifier.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "lenc/compose.hpp"

namespace lenc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void require_same_names(const Netlist &a, const Netlist &b) {
  const std::set<std::string> ai(a.inputs().begin(), a.inputs().end()), bi(b.inputs().begin(), b.inputs().end());
  const std::set<std::string> ao(a.outputs().begin(), a.outputs().end()), bo(b.outputs().begin(), b.outputs().end());
  if (ai != bi) throw std::invalid_argument("equivalence check: primary input names differ");
  if (ao != bo) throw std::invalid_argument("equivalence check: primary output names differ");
}

EquivVerdict make_verdict(EquivVerdict::Result r, EquivVerdict::Method m) {
  EquivVerdict v{};
  v.result = r;
  v.method = m;
  return v;
}

Assignment pattern_from_bits(const Netlist &n, const std::vector<bool> &bits) {
  Assignment as;
  for (std::size_t i = 0; i < n.inputs().size(); ++i) as[n.inputs()[i]] = bits[i];
  return as;
}

/// Fills witness details and confirms the mismatch by plain simulation.
EquivVerdict inequivalent(const Netlist &a, const Netlist &b, Assignment witness, EquivVerdict::Method method) {
  const Assignment ra = simulate(a, witness), rb = simulate(b, witness);
  for (const auto &po : a.outputs()) {
    if (ra.at(po) != rb.at(po)) {
      EquivVerdict v = make_verdict(EquivVerdict::Result::inequivalent, method);
      v.witness = std::move(witness);
      v.mismatched_output = po;
      return v;
    }
  }
  throw std::logic_error("equivalence check produced a witness that does not distinguish the circuits");
}

EquivVerdict exhaustive(const Netlist &a, const Netlist &b, const Netlist &miter, unsigned jobs) {
  const std::size_t k = miter.inputs().size();
  const std::uint64_t blocks = k <= 6 ? 1 : (std::uint64_t{1} << (k - 6));
  const std::uint64_t mask = exhaustive_lane_mask(k);
  std::atomic<std::uint64_t> found{~std::uint64_t{0}};  // pattern index
  auto worker = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::uint64_t> words(k);
    for (std::uint64_t blk = begin; blk < end && found.load(std::memory_order_relaxed) == ~std::uint64_t{0}; ++blk) {
      for (std::size_t i = 0; i < k; ++i) words[i] = exhaustive_word(i, blk);
      const std::uint64_t diff = simulate_words(miter, words)[0] & mask;
      if (diff) {
        const std::uint64_t p = blk * 64 + static_cast<std::uint64_t>(std::countr_zero(diff));
        std::uint64_t cur = found.load();
        while (p < cur && !found.compare_exchange_weak(cur, p)) {
        }
      }
    }
  };
  const unsigned threads = blocks < 256 ? 1 : std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, blocks * t / threads, blocks * (t + 1) / threads);
  for (auto &th : pool) th.join();

  const std::uint64_t p = found.load();
  if (p == ~std::uint64_t{0}) {
    EquivVerdict v = make_verdict(EquivVerdict::Result::equivalent, EquivVerdict::Method::exhaustive);
    v.vectors_checked = std::uint64_t{1} << k;
    return v;
  }
  std::vector<bool> bits(k);
  for (std::size_t i = 0; i < k; ++i) bits[i] = (p >> i) & 1;
  auto v = inequivalent(a, b, pattern_from_bits(miter, bits), EquivVerdict::Method::exhaustive);
  v.vectors_checked = p + 1;
  return v;
}

EquivVerdict random_sim(const Netlist &a, const Netlist &b, const Netlist &miter, const VerifyOptions &opts) {
  std::mt19937_64 rng(opts.seed ^ 0x5eed5eedULL);
  const std::size_t k = miter.inputs().size();
  std::vector<std::uint64_t> words(k);
  const std::uint64_t blocks = (opts.random_vectors + 63) / 64;
  for (std::uint64_t blk = 0; blk < blocks; ++blk) {
    for (auto &w : words) w = rng();
    const std::uint64_t diff = simulate_words(miter, words)[0];
    if (diff) {
      const int lane = std::countr_zero(diff);
      std::vector<bool> bits(k);
      for (std::size_t i = 0; i < k; ++i) bits[i] = (words[i] >> lane) & 1;
      auto v = inequivalent(a, b, pattern_from_bits(miter, bits), EquivVerdict::Method::random_sim);
      v.vectors_checked = blk * 64 + lane + 1;
      return v;
    }
  }
  EquivVerdict v = make_verdict(EquivVerdict::Result::inconclusive, EquivVerdict::Method::random_sim);
  v.vectors_checked = blocks * 64;
  return v;
}

struct WordsHash {
  std::size_t operator()(const std::vector<std::uint64_t> &w) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : w) h = (h ^ x) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

/// SAT sweeping: internal signals with equal (or complementary) simulation
/// signatures are proven equivalent one at a time in topological order and
/// the equivalences are added to the solver as binary clauses. Refuted
/// candidates contribute their counterexample to the signatures.
class Sweeper {
 public:
  Sweeper(const Netlist &n, const CnfEncoding &enc, sat::Solver &solver, std::uint64_t seed, Clock::time_point deadline)
      : n_(n), enc_(enc), solver_(solver), deadline_(deadline), sig_(n.num_signals()) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> words(n.inputs().size());
    for (int w = 0; w < 4; ++w) {
      for (auto &x : words) x = rng();
      append_words(simulate_signals(n, words));
    }
  }

  std::size_t run() {
    std::size_t proven = 0;
    rebuild(0);
    for (std::uint32_t s = 0; s < n_.num_signals(); ++s) {
      if (Clock::now() > deadline_) break;
      for (int attempt = 0; attempt < 16; ++attempt) {
        auto it = classes_.find(normalized(s));
        if (it == classes_.end()) {
          classes_.emplace(normalized(s), s);
          break;
        }
        const std::uint32_t r = it->second;
        const Check c = r == constant ? prove_constant(s) : prove_equal(s, r);
        if (c == Check::proven) {
          ++proven;
          break;
        }
        if (c == Check::unknown) break;
        rebuild(s);  // counterexample refined the signatures
      }
    }
    return proven;
  }

 private:
  enum class Check { proven, refuted, unknown };
  static constexpr std::uint32_t constant = ~std::uint32_t{0};

  bool phase(std::uint32_t s) const { return sig_[s][0] & 1; }

  std::vector<std::uint64_t> normalized(std::uint32_t s) const {
    std::vector<std::uint64_t> w = sig_[s];
    if (phase(s))
      for (auto &x : w) x = ~x;
    if (cex_count_ % 64 != 0) w.back() &= (std::uint64_t{1} << (cex_count_ % 64)) - 1;
    return w;
  }

  void append_words(const std::vector<std::uint64_t> &values) {
    for (std::size_t s = 0; s < sig_.size(); ++s) sig_[s].push_back(values[s]);
  }

  void rebuild(std::uint32_t upto) {
    classes_.clear();
    std::vector<std::uint64_t> zero(sig_[0].size(), 0);
    if (cex_count_ % 64 != 0) zero.back() = 0;
    classes_.emplace(zero, constant);
    for (std::uint32_t s = 0; s < upto; ++s) classes_.emplace(normalized(s), s);
  }

  int lit(std::uint32_t s, bool positive) const { return positive ? enc_.var_of_signal[s] : -enc_.var_of_signal[s]; }

  sat::Limits limits() const {
    return {2000, std::max(0.0, std::chrono::duration<double>(deadline_ - Clock::now()).count())};
  }

  void add_counterexample() {
    const std::size_t lane = cex_count_ % 64;
    if (lane == 0) {
      cex_inputs_.assign(n_.inputs().size(), 0);
      append_words(std::vector<std::uint64_t>(sig_.size(), 0));
    }
    for (std::size_t i = 0; i < n_.inputs().size(); ++i)
      if (solver_.model_value(enc_.var_of_signal[i])) cex_inputs_[i] |= std::uint64_t{1} << lane;
    ++cex_count_;
    const auto values = simulate_signals(n_, cex_inputs_);
    for (std::size_t s = 0; s < sig_.size(); ++s) sig_[s].back() = values[s];
  }

  Check prove_constant(std::uint32_t s) {
    const bool value = phase(s);
    switch (solver_.solve({lit(s, !value)}, limits())) {
      case sat::Status::unsat: solver_.add_clause({lit(s, value)}); return Check::proven;
      case sat::Status::sat: add_counterexample(); return Check::refuted;
      case sat::Status::unknown: break;
    }
    return Check::unknown;
  }

  Check prove_equal(std::uint32_t s, std::uint32_t r) {
    const bool same = phase(s) == phase(r);
    const int ls = lit(s, true), lr = lit(r, same);
    for (auto [x, y] : {std::pair{ls, -lr}, std::pair{-ls, lr}}) {
      switch (solver_.solve({x, y}, limits())) {
        case sat::Status::unsat: break;
        case sat::Status::sat: add_counterexample(); return Check::refuted;
        case sat::Status::unknown: return Check::unknown;
      }
    }
    solver_.add_clause({-ls, lr});
    solver_.add_clause({ls, -lr});
    return Check::proven;
  }

  const Netlist &n_;
  const CnfEncoding &enc_;
  sat::Solver &solver_;
  Clock::time_point deadline_;
  std::vector<std::vector<std::uint64_t>> sig_;
  std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, WordsHash> classes_;
  std::vector<std::uint64_t> cex_inputs_;
  std::size_t cex_count_ = 0;
};

}  // namespace

std::string_view to_string(EquivVerdict::Result r) {
  switch (r) {
    case EquivVerdict::Result::equivalent: return "equivalent";
    case EquivVerdict::Result::inequivalent: return "inequivalent";
    case EquivVerdict::Result::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(EquivVerdict::Method m) {
  switch (m) {
    case EquivVerdict::Method::exhaustive: return "exhaustive";
    case EquivVerdict::Method::sat: return "sat";
    case EquivVerdict::Method::random_sim: return "random-sim";
  }
  return "?";
}

Netlist build_miter(const Netlist &a, const Netlist &b) {
  require_same_names(a, b);
  RawNetlist raw{a.name() + "_miter", a.inputs(), {"miter"}, {}};
  const std::string pa = free_prefix("a", {&a, &b});
  const std::string pb = free_prefix("b", {&a, &b});
  const std::string px = free_prefix("x", {&a, &b});
  const auto out_a = append_copy(raw, a, pa);
  const auto out_b = append_copy(raw, b, pb);
  std::unordered_map<std::string, std::string> b_net;
  for (std::size_t i = 0; i < b.outputs().size(); ++i) b_net.emplace(b.outputs()[i], out_b[i]);

  std::vector<std::string> diffs;
  for (std::size_t i = 0; i < a.outputs().size(); ++i) {
    diffs.push_back(px + "d" + std::to_string(i));
    raw.gates.push_back({diffs.back(), GateKind::XOR, {out_a[i], b_net.at(a.outputs()[i])}});
  }
  if (diffs.empty()) {
    raw.gates.push_back({"miter", GateKind::CONST0, {}});
  } else if (diffs.size() == 1) {
    raw.gates.push_back({"miter", GateKind::BUF, {diffs[0]}});
  } else {
    std::string acc = diffs[0];
    for (std::size_t i = 1; i < diffs.size(); ++i) {
      std::string name = i + 1 == diffs.size() ? "miter" : px + "o" + std::to_string(i);
      raw.gates.push_back({name, GateKind::OR, {acc, diffs[i]}});
      acc = std::move(name);
    }
  }
  return Netlist::build(std::move(raw));
}

CnfEncoding tseitin(const Netlist &n) {
  CnfEncoding enc;
  enc.var_of_signal.resize(n.num_signals());
  for (std::size_t s = 0; s < n.num_signals(); ++s) enc.var_of_signal[s] = enc.cnf.new_var();
  auto &cnf = enc.cnf;
  for (std::size_t gi = 0; gi < n.gates().size(); ++gi) {
    const int y = enc.var_of_signal[n.gate_signal(gi)];
    const auto &f = n.fanin_ids(gi);
    const GateKind kind = n.gates()[gi].kind;
    const int a = arity(kind) > 0 ? enc.var_of_signal[f[0]] : 0;
    const int b = arity(kind) > 1 ? enc.var_of_signal[f[1]] : 0;
    switch (kind) {
      case GateKind::AND: cnf.add({-y, a}); cnf.add({-y, b}); cnf.add({y, -a, -b}); break;
      case GateKind::NAND: cnf.add({y, a}); cnf.add({y, b}); cnf.add({-y, -a, -b}); break;
      case GateKind::OR: cnf.add({y, -a}); cnf.add({y, -b}); cnf.add({-y, a, b}); break;
      case GateKind::NOR: cnf.add({-y, -a}); cnf.add({-y, -b}); cnf.add({y, a, b}); break;
      case GateKind::XOR:
        cnf.add({-y, a, b}); cnf.add({-y, -a, -b}); cnf.add({y, -a, b}); cnf.add({y, a, -b});
        break;
      case GateKind::XNOR:
        cnf.add({y, a, b}); cnf.add({y, -a, -b}); cnf.add({-y, -a, b}); cnf.add({-y, a, -b});
        break;
      case GateKind::NOT: cnf.add({y, a}); cnf.add({-y, -a}); break;
      case GateKind::BUF: cnf.add({y, -a}); cnf.add({-y, a}); break;
      case GateKind::MUX2: {
        const int s = a, d0 = b, d1 = enc.var_of_signal[f[2]];
        cnf.add({s, -d0, y}); cnf.add({s, d0, -y}); cnf.add({-s, -d1, y}); cnf.add({-s, d1, -y});
        cnf.add({-d0, -d1, y}); cnf.add({d0, d1, -y});
        break;
      }
      case GateKind::CONST0: cnf.add({-y}); break;
      case GateKind::CONST1: cnf.add({y}); break;
    }
  }
  return enc;
}

sat::Cnf to_cnf(const Netlist &n) {
  if (n.outputs().size() != 1)
    throw std::invalid_argument("to_cnf expects a single output, got " + std::to_string(n.outputs().size()));
  CnfEncoding enc = tseitin(n);
  enc.cnf.add({enc.var_of_signal[n.output_ids()[0]]});
  return std::move(enc.cnf);
}

EquivVerdict check_equiv(const Netlist &a, const Netlist &b, const VerifyOptions &opts) {
  const Netlist miter = build_miter(a, b);
  if (miter.inputs().size() <= opts.exhaustive_threshold && miter.inputs().size() <= 30)
    return exhaustive(a, b, miter, opts.jobs);

  const auto start = Clock::now();
  const auto deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(opts.sat_seconds));
  const CnfEncoding enc = tseitin(miter);
  sat::Solver solver(opts.seed);
  solver.add(enc.cnf);
  std::size_t swept = 0;
  if (opts.sweep) swept = Sweeper(miter, enc, solver, opts.seed, deadline).run();

  const int out = enc.var_of_signal[miter.output_ids()[0]];
  const sat::Limits limits{opts.sat_conflicts, std::max(0.0, opts.sat_seconds - seconds_since(start))};
  const sat::Status st = solver.solve({out}, limits);
  if (st == sat::Status::unsat) {
    EquivVerdict v = make_verdict(EquivVerdict::Result::equivalent, EquivVerdict::Method::sat);
    v.sat_conflicts = solver.conflicts();
    v.swept_equivalences = swept;
    return v;
  }
  if (st == sat::Status::sat) {
    std::vector<bool> bits(miter.inputs().size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = solver.model_value(enc.var_of_signal[i]);
    auto v = inequivalent(a, b, pattern_from_bits(miter, bits), EquivVerdict::Method::sat);
    v.sat_conflicts = solver.conflicts();
    v.swept_equivalences = swept;
    return v;
  }
  auto v = random_sim(a, b, miter, opts);
  v.sat_conflicts = solver.conflicts();
  v.swept_equivalences = swept;
  return v;
}

}  // namespace lenc
