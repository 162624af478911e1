#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace lenc::sat {

/// Clause set over DIMACS-style literals: variable v >= 1 is `v`, its
/// negation `-v`.
struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  int new_var() { return ++num_vars; }
  void add(std::initializer_list<int> lits) { clauses.emplace_back(lits); }
  std::string to_dimacs() const;
};

enum class Status : std::uint8_t { sat, unsat, unknown };

struct Limits {
  std::uint64_t conflicts = std::numeric_limits<std::uint64_t>::max();
  double seconds = std::numeric_limits<double>::infinity();
};

/// Incremental CDCL solver: two watched literals with blockers, first-UIP
/// learning with clause minimization, VSIDS, phase saving, Luby restarts and
/// activity-based learnt-clause reduction. Clauses may be added between
/// solve() calls; assumptions hold for a single call only.
class Solver {
 public:
  explicit Solver(std::uint64_t seed = 0);

  int new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }
  /// Returns false once the clause set is unsatisfiable at the top level.
  bool add_clause(std::span<const int> lits);
  bool add_clause(std::initializer_list<int> lits) { return add_clause(std::span(lits.begin(), lits.size())); }
  void add(const Cnf &cnf);

  Status solve(std::span<const int> assumptions = {}, Limits limits = {});
  Status solve(std::initializer_list<int> assumptions, Limits limits = {}) {
    return solve(std::span(assumptions.begin(), assumptions.size()), limits);
  }

  /// Value of a variable in the last satisfying assignment.
  bool model_value(int var) const { return model_[var - 1]; }
  bool okay() const { return ok_; }
  std::uint64_t conflicts() const { return conflicts_; }
  std::uint64_t decisions() const { return decisions_; }
  std::uint64_t propagations() const { return propagations_; }

 private:
  using Lit = std::uint32_t;
  using CRef = std::uint32_t;
  static constexpr CRef no_reason = ~CRef{0};
  static constexpr Lit no_lit = ~Lit{0};
  static constexpr std::int8_t l_false = 0, l_true = 1, l_undef = 2;

  struct Clause {
    std::vector<Lit> lits;
    double activity = 0;
    bool learnt = false;
    bool removed = false;
  };
  struct Watcher {
    CRef cref;
    Lit blocker;
  };

  static Lit to_lit(int dimacs) { return 2 * (static_cast<Lit>(dimacs < 0 ? -dimacs : dimacs) - 1) + (dimacs < 0); }
  static std::uint32_t var(Lit l) { return l >> 1; }
  static Lit neg(Lit l) { return l ^ 1; }
  std::int8_t value(Lit l) const {
    const std::int8_t a = assigns_[var(l)];
    return a == l_undef ? l_undef : static_cast<std::int8_t>(a ^ (l & 1));
  }
  int level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit l, CRef reason);
  CRef propagate();
  void analyze(CRef confl, std::vector<Lit> &learnt, int &bt_level);
  void cancel_until(int lvl);
  Lit pick_branch();
  Status search(std::int64_t max_conflicts, std::span<const Lit> assumptions);
  void attach(CRef c);
  void reduce_db();
  bool locked(CRef c) const;
  bool out_of_budget(bool check_clock = false);

  void bump_var(std::uint32_t v);
  void bump_clause(Clause &c);
  void heap_insert(std::uint32_t v);
  std::uint32_t heap_pop();
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  bool heap_less(std::uint32_t a, std::uint32_t b) const { return activity_[a] > activity_[b]; }

  bool ok_ = true;
  std::vector<Clause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<bool> polarity_;
  std::vector<CRef> reason_;
  std::vector<int> level_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::vector<std::uint32_t> heap_;
  std::vector<std::int64_t> heap_index_;
  std::vector<char> seen_;
  std::vector<bool> model_;
  std::size_t num_learnts_ = 0;
  double max_learnts_ = 0;
  std::mt19937_64 rng_;

  std::uint64_t conflicts_ = 0;
  std::uint64_t decisions_ = 0;
  std::uint64_t propagations_ = 0;
  std::uint64_t budget_conflicts_ = 0;
  double budget_deadline_ = 0;
};

}  // namespace lenc::sat
