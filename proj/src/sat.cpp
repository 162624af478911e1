#include "lenc/sat.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace lenc::sat {

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x %= size;
  }
  return std::pow(y, seq);
}

}  // namespace

std::string Cnf::to_dimacs() const {
  std::ostringstream os;
  os << "p cnf " << num_vars << " " << clauses.size() << "\n";
  for (const auto &c : clauses) {
    for (int l : c) os << l << " ";
    os << "0\n";
  }
  return os.str();
}

Solver::Solver(std::uint64_t seed) : rng_(seed) {}

int Solver::new_var() {
  const auto v = static_cast<std::uint32_t>(assigns_.size());
  assigns_.push_back(l_undef);
  polarity_.push_back(false);
  reason_.push_back(no_reason);
  level_.push_back(0);
  // Tiny seeded jitter so that equal-activity ties break reproducibly per seed.
  activity_.push_back(std::uniform_real_distribution<double>(0, 1e-5)(rng_));
  seen_.push_back(0);
  heap_index_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return static_cast<int>(v) + 1;
}

bool Solver::add_clause(std::span<const int> dimacs) {
  if (!ok_) return false;
  cancel_until(0);
  std::vector<Lit> lits;
  lits.reserve(dimacs.size());
  for (int d : dimacs) {
    while (std::abs(d) > num_vars()) new_var();
    lits.push_back(to_lit(d));
  }
  std::sort(lits.begin(), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i > 0 && lits[i] == lits[i - 1]) continue;
    if (value(lits[i]) == l_true || (i > 0 && lits[i] == neg(lits[i - 1]))) return true;
    if (value(lits[i]) == l_false) continue;
    kept.push_back(lits[i]);
  }
  if (kept.empty()) return ok_ = false;
  if (kept.size() == 1) {
    enqueue(kept[0], no_reason);
    if (propagate() != no_reason) ok_ = false;
    return ok_;
  }
  clauses_.push_back({std::move(kept)});
  attach(static_cast<CRef>(clauses_.size() - 1));
  return true;
}

void Solver::add(const Cnf &cnf) {
  while (num_vars() < cnf.num_vars) new_var();
  for (const auto &c : cnf.clauses) add_clause(c);
}

void Solver::attach(CRef c) {
  const auto &lits = clauses_[c].lits;
  watches_[lits[0]].push_back({c, lits[1]});
  watches_[lits[1]].push_back({c, lits[0]});
}

void Solver::enqueue(Lit l, CRef reason) {
  const auto v = var(l);
  assigns_[v] = static_cast<std::int8_t>((l & 1) ? l_false : l_true);
  reason_[v] = reason;
  level_[v] = level();
  trail_.push_back(l);
}

Solver::CRef Solver::propagate() {
  CRef confl = no_reason;
  while (qhead_ < trail_.size()) {
    const Lit fl = neg(trail_[qhead_++]);
    auto &ws = watches_[fl];
    ++propagations_;
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const Watcher w = ws[i];
      if (value(w.blocker) == l_true) {
        ws[j++] = ws[i++];
        continue;
      }
      auto &lits = clauses_[w.cref].lits;
      if (lits[0] == fl) std::swap(lits[0], lits[1]);
      ++i;
      const Lit first = lits[0];
      const Watcher nw{w.cref, first};
      if (first != w.blocker && value(first) == l_true) {
        ws[j++] = nw;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != l_false) {
          std::swap(lits[1], lits[k]);
          watches_[lits[1]].push_back(nw);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = nw;
      if (value(first) == l_false) {
        confl = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (confl != no_reason) break;
  }
  return confl;
}

void Solver::analyze(CRef confl, std::vector<Lit> &learnt, int &bt_level) {
  learnt.assign(1, no_lit);
  int path = 0;
  Lit p = no_lit;
  std::size_t index = trail_.size();
  do {
    Clause &c = clauses_[confl];
    if (c.learnt) bump_clause(c);
    for (std::size_t j = p == no_lit ? 0 : 1; j < c.lits.size(); ++j) {
      const Lit q = c.lits[j];
      const auto v = var(q);
      if (seen_[v] || level_[v] == 0) continue;
      bump_var(v);
      seen_[v] = 1;
      if (level_[v] >= level())
        ++path;
      else
        learnt.push_back(q);
    }
    while (!seen_[var(trail_[--index])]) {
    }
    p = trail_[index];
    confl = reason_[var(p)];
    seen_[var(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = neg(p);

  // Drop literals implied by the rest of the clause through their reason.
  std::size_t keep = 1;
  std::vector<Lit> dropped;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    const CRef r = reason_[var(learnt[i])];
    bool redundant = r != no_reason;
    if (redundant) {
      const auto &rl = clauses_[r].lits;
      for (std::size_t k = 1; k < rl.size(); ++k)
        if (!seen_[var(rl[k])] && level_[var(rl[k])] > 0) {
          redundant = false;
          break;
        }
    }
    if (redundant)
      dropped.push_back(learnt[i]);
    else
      learnt[keep++] = learnt[i];
  }
  for (std::size_t i = 1; i < learnt.size(); ++i) seen_[var(learnt[i])] = 0;
  for (Lit l : dropped) seen_[var(l)] = 0;
  learnt.resize(keep);

  bt_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i)
      if (level_[var(learnt[i])] > level_[var(learnt[max_i])]) max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    bt_level = level_[var(learnt[1])];
  }
}

void Solver::cancel_until(int lvl) {
  if (level() <= lvl) return;
  for (std::size_t i = trail_.size(); i-- > trail_lim_[lvl];) {
    const auto v = var(trail_[i]);
    assigns_[v] = l_undef;
    polarity_[v] = trail_[i] & 1;
    reason_[v] = no_reason;
    if (heap_index_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[lvl]);
  trail_lim_.resize(lvl);
  qhead_ = trail_.size();
}

Solver::Lit Solver::pick_branch() {
  std::uint32_t v = 0;
  bool found = false;
  if (!heap_.empty() && std::uniform_int_distribution<int>(0, 99)(rng_) == 0) {
    v = heap_[std::uniform_int_distribution<std::size_t>(0, heap_.size() - 1)(rng_)];
    found = assigns_[v] == l_undef;
  }
  while (!found) {
    if (heap_.empty()) return no_lit;
    v = heap_pop();
    found = assigns_[v] == l_undef;
  }
  return 2 * v + (polarity_[v] ? 1 : 0);
}

bool Solver::locked(CRef c) const {
  const Lit l = clauses_[c].lits[0];
  return reason_[var(l)] == c && value(l) == l_true;
}

void Solver::reduce_db() {
  std::vector<CRef> learnts;
  for (CRef c = 0; c < clauses_.size(); ++c)
    if (clauses_[c].learnt && !clauses_[c].removed && clauses_[c].lits.size() > 2 && !locked(c)) learnts.push_back(c);
  std::sort(learnts.begin(), learnts.end(),
            [&](CRef a, CRef b) { return clauses_[a].activity < clauses_[b].activity; });
  for (std::size_t i = 0; i < learnts.size() / 2; ++i) {
    clauses_[learnts[i]].removed = true;
    std::vector<Lit>().swap(clauses_[learnts[i]].lits);
    --num_learnts_;
  }
  for (auto &ws : watches_) ws.clear();
  for (CRef c = 0; c < clauses_.size(); ++c)
    if (!clauses_[c].removed) attach(c);
}

bool Solver::out_of_budget(bool check_clock) {
  if (conflicts_ >= budget_conflicts_) return true;
  return (check_clock || (conflicts_ & 255) == 0) && now_seconds() > budget_deadline_;
}

Status Solver::search(std::int64_t max_conflicts, std::span<const Lit> assumptions) {
  std::int64_t local = 0;
  std::vector<Lit> learnt;
  while (true) {
    const CRef confl = propagate();
    if (confl != no_reason) {
      ++conflicts_;
      ++local;
      if (level() == 0) {
        ok_ = false;
        return Status::unsat;
      }
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], no_reason);
      } else {
        clauses_.push_back({learnt, 0, true, false});
        const auto c = static_cast<CRef>(clauses_.size() - 1);
        attach(c);
        bump_clause(clauses_[c]);
        ++num_learnts_;
        enqueue(learnt[0], c);
      }
      var_inc_ /= 0.95;
      cla_inc_ /= 0.999;
      continue;
    }
    if (local >= max_conflicts || out_of_budget()) {
      cancel_until(0);
      return Status::unknown;
    }
    if (static_cast<double>(num_learnts_) >= max_learnts_ + static_cast<double>(trail_.size())) reduce_db();

    Lit next = no_lit;
    while (static_cast<std::size_t>(level()) < assumptions.size()) {
      const Lit a = assumptions[level()];
      if (value(a) == l_true) {
        trail_lim_.push_back(trail_.size());
      } else if (value(a) == l_false) {
        return Status::unsat;
      } else {
        next = a;
        break;
      }
    }
    if (next == no_lit) {
      ++decisions_;
      next = pick_branch();
      if (next == no_lit) return Status::sat;
    }
    trail_lim_.push_back(trail_.size());
    enqueue(next, no_reason);
  }
}

Status Solver::solve(std::span<const int> assumptions, Limits limits) {
  model_.clear();
  if (!ok_) return Status::unsat;
  std::vector<Lit> assume;
  for (int a : assumptions) {
    while (std::abs(a) > num_vars()) new_var();
    assume.push_back(to_lit(a));
  }
  budget_conflicts_ = limits.conflicts == std::numeric_limits<std::uint64_t>::max()
                          ? limits.conflicts
                          : conflicts_ + limits.conflicts;
  budget_deadline_ = now_seconds() + limits.seconds;
  if (max_learnts_ == 0) max_learnts_ = std::max(1000.0, static_cast<double>(clauses_.size()) / 3);

  Status status = Status::unknown;
  for (int restart = 0; status == Status::unknown; ++restart) {
    status = search(static_cast<std::int64_t>(luby(2, restart) * 100), assume);
    if (status == Status::unknown && out_of_budget(true)) break;
    max_learnts_ *= 1.05;
  }
  if (status == Status::sat) {
    model_.resize(assigns_.size());
    for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == l_true;
  }
  cancel_until(0);
  return status;
}

void Solver::bump_var(std::uint32_t v) {
  if ((activity_[v] += var_inc_) > 1e100) {
    for (auto &a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_index_[v] >= 0) heap_up(static_cast<std::size_t>(heap_index_[v]));
}

void Solver::bump_clause(Clause &c) {
  if ((c.activity += cla_inc_) > 1e20) {
    for (auto &cl : clauses_)
      if (cl.learnt) cl.activity *= 1e-20;
    cla_inc_ *= 1e-20;
  }
}

void Solver::heap_insert(std::uint32_t v) {
  heap_index_[v] = static_cast<std::int64_t>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

std::uint32_t Solver::heap_pop() {
  const std::uint32_t top = heap_[0];
  heap_[0] = heap_.back();
  heap_index_[heap_[0]] = 0;
  heap_.pop_back();
  heap_index_[top] = -1;
  if (!heap_.empty()) heap_down(0);
  return top;
}

void Solver::heap_up(std::size_t i) {
  const std::uint32_t v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_index_[heap_[i]] = static_cast<std::int64_t>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_index_[v] = static_cast<std::int64_t>(i);
}

void Solver::heap_down(std::size_t i) {
  const std::uint32_t v = heap_[i];
  while (2 * i + 1 < heap_.size()) {
    std::size_t child = 2 * i + 1;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_index_[heap_[i]] = static_cast<std::int64_t>(i);
    i = child;
  }
  heap_[i] = v;
  heap_index_[v] = static_cast<std::int64_t>(i);
}

}  // namespace lenc::sat
