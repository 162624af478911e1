#include <doctest.h>

#include <random>

#include "support/support.hpp"

using namespace lenc;
using namespace lenc::testing;

namespace {

bool satisfied(const std::vector<std::vector<int>> &clauses, const std::vector<bool> &value) {
  for (const auto &c : clauses) {
    bool any = false;
    for (int l : c) any |= value[std::abs(l)] == (l > 0);
    if (!any) return false;
  }
  return true;
}

bool brute_force_sat(int n, const std::vector<std::vector<int>> &clauses) {
  std::vector<bool> v(n + 1);
  for (std::uint32_t p = 0; p < (1u << n); ++p) {
    for (int i = 1; i <= n; ++i) v[i] = (p >> (i - 1)) & 1;
    if (satisfied(clauses, v)) return true;
  }
  return false;
}

std::vector<bool> model(const sat::Solver &s, int n) {
  std::vector<bool> v(n + 1);
  for (int i = 1; i <= n; ++i) v[i] = s.model_value(i);
  return v;
}

}  // namespace

TEST_SUITE("sat") {

TEST_CASE("trivial instances") {
  sat::Solver s;
  const int a = s.new_var(), b = s.new_var();
  s.add_clause({a, b});
  s.add_clause({-a});
  REQUIRE(s.solve() == sat::Status::sat);
  CHECK_FALSE(s.model_value(a));
  CHECK(s.model_value(b));
  CHECK_FALSE(s.add_clause({-b}));
  CHECK(s.solve() == sat::Status::unsat);

  sat::Solver empty;
  CHECK(empty.solve() == sat::Status::sat);
}

TEST_CASE("random 3-SAT agrees with brute force") {
  std::mt19937_64 gen(99);
  int sat_count = 0;
  for (int round = 0; round < 300; ++round) {
    const int n = 4 + static_cast<int>(gen() % 9);
    const int m = static_cast<int>(n * (3.0 + (gen() % 30) / 10.0));
    std::vector<std::vector<int>> clauses;
    for (int c = 0; c < m; ++c) {
      std::vector<int> cl;
      for (int k = 0; k < 3; ++k) cl.push_back(static_cast<int>(1 + gen() % n) * (gen() & 1 ? 1 : -1));
      clauses.push_back(cl);
    }
    sat::Solver s(round);
    for (int i = 0; i < n; ++i) s.new_var();
    for (const auto &c : clauses) s.add_clause(c);
    const bool expect = brute_force_sat(n, clauses);
    const auto st = s.solve();
    REQUIRE(st == (expect ? sat::Status::sat : sat::Status::unsat));
    if (expect) {
      ++sat_count;
      CHECK(satisfied(clauses, model(s, n)));
    }
  }
  CHECK(sat_count > 30);
  CHECK(sat_count < 270);
}

TEST_CASE("pigeonhole 6 into 5 is unsatisfiable") {
  const int pigeons = 6, holes = 5;
  sat::Solver s;
  auto v = [&](int p, int h) { return p * holes + h + 1; };
  for (int i = 0; i < pigeons * holes; ++i) s.new_var();
  for (int p = 0; p < pigeons; ++p) {
    std::vector<int> c;
    for (int h = 0; h < holes; ++h) c.push_back(v(p, h));
    s.add_clause(c);
  }
  for (int h = 0; h < holes; ++h)
    for (int p = 0; p < pigeons; ++p)
      for (int q = p + 1; q < pigeons; ++q) s.add_clause({-v(p, h), -v(q, h)});
  CHECK(s.solve() == sat::Status::unsat);
  CHECK(s.conflicts() > 0);
}

TEST_CASE("assumptions only hold for one call") {
  sat::Solver s;
  const int a = s.new_var(), b = s.new_var();
  s.add_clause({-a, b});
  CHECK(s.solve({a, -b}) == sat::Status::unsat);
  CHECK(s.solve({a}) == sat::Status::sat);
  CHECK(s.model_value(b));
  CHECK(s.solve() == sat::Status::sat);
  CHECK(s.okay());
}

TEST_CASE("conflict budget yields unknown") {
  const int pigeons = 9, holes = 8;
  sat::Solver s;
  auto v = [&](int p, int h) { return p * holes + h + 1; };
  for (int i = 0; i < pigeons * holes; ++i) s.new_var();
  for (int p = 0; p < pigeons; ++p) {
    std::vector<int> c;
    for (int h = 0; h < holes; ++h) c.push_back(v(p, h));
    s.add_clause(c);
  }
  for (int h = 0; h < holes; ++h)
    for (int p = 0; p < pigeons; ++p)
      for (int q = p + 1; q < pigeons; ++q) s.add_clause({-v(p, h), -v(q, h)});
  sat::Limits lim;
  lim.conflicts = 50;
  CHECK(s.solve({}, lim) == sat::Status::unknown);
}

TEST_CASE("DIMACS text") {
  sat::Cnf cnf;
  const int a = cnf.new_var(), b = cnf.new_var();
  cnf.add({a, -b});
  cnf.add({b});
  CHECK(cnf.to_dimacs() == "p cnf 2 2\n1 -2 0\n2 0\n");
}

TEST_CASE("Tseitin encoding of a single AND") {
  const Netlist n = bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)\n");
  const CnfEncoding e = tseitin(n);
  CHECK(e.cnf.num_vars == 3);
  CHECK(e.cnf.clauses.size() == 3);
  const sat::Cnf asserted = to_cnf(n);
  CHECK(asserted.clauses.size() == 4);
  sat::Solver s;
  s.add(asserted);
  REQUIRE(s.solve() == sat::Status::sat);
  CHECK(s.model_value(e.var_of_signal[n.input_index("a").value()]));
  CHECK(s.model_value(e.var_of_signal[n.input_index("b").value()]));
  CHECK_THROWS_AS(to_cnf(bench("INPUT(a)\nOUTPUT(b)\nOUTPUT(c)\nb = NOT(a)\nc = BUF(a)\n")), std::invalid_argument);
}

TEST_CASE("every gate kind encodes its truth table") {
  for (GateKind k : {GateKind::AND, GateKind::NAND, GateKind::OR, GateKind::NOR, GateKind::XOR, GateKind::XNOR,
                     GateKind::NOT, GateKind::BUF, GateKind::MUX2, GateKind::CONST0, GateKind::CONST1}) {
    CAPTURE(to_string(k));
    RawNetlist raw{"g", {"a", "b", "c"}, {"y"}, {}};
    std::vector<std::string> ins{"a", "b", "c"};
    ins.resize(arity(k));
    raw.gates.push_back({"y", k, ins});
    const Netlist n = Netlist::build(raw);
    const CnfEncoding e = tseitin(n);
    for (int p = 0; p < 8; ++p) {
      const Assignment in{{"a", p & 1}, {"b", (p >> 1) & 1}, {"c", (p >> 2) & 1}};
      const bool expect = simulate(n, in).at("y");
      for (bool y : {false, true}) {
        sat::Solver s;
        s.add(e.cnf);
        std::vector<int> assume;
        for (const auto &[name, v] : in) {
          const int var = e.var_of_signal[n.input_index(name).value()];
          assume.push_back(v ? var : -var);
        }
        const int yv = e.var_of_signal[n.output_ids()[0]];
        assume.push_back(y ? yv : -yv);
        CHECK((s.solve(assume) == sat::Status::sat) == (y == expect));
      }
    }
  }
}

TEST_CASE("a miter of a circuit against itself is unsatisfiable") {
  const Netlist oc = read_bench_file(source_dir() / "benchmarks/synthetic/alu4.bench");
  sat::Solver s;
  s.add(to_cnf(build_miter(oc, oc)));
  CHECK(s.solve() == sat::Status::unsat);
  const Netlist zero = bench("INPUT(a)\nOUTPUT(y)\nna = NOT(a)\ny = AND(a, na)\n");
  sat::Solver z;
  z.add(to_cnf(zero));
  CHECK(z.solve() == sat::Status::unsat);
}

TEST_CASE("XOR chain model satisfies the parity") {
  std::string text;
  for (int i = 0; i < 30; ++i) text += "INPUT(x" + std::to_string(i) + ")\n";
  text += "OUTPUT(p29)\np1 = XOR(x0, x1)\n";
  for (int i = 2; i < 30; ++i)
    text += "p" + std::to_string(i) + " = XOR(p" + std::to_string(i - 1) + ", x" + std::to_string(i) + ")\n";
  const Netlist n = bench(text);
  const CnfEncoding e = tseitin(n);
  sat::Solver s;
  s.add(to_cnf(n));
  REQUIRE(s.solve() == sat::Status::sat);
  bool parity = false;
  for (int i = 0; i < 30; ++i) parity ^= s.model_value(e.var_of_signal[i]);
  CHECK(parity);
}

}
