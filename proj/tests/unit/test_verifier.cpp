#include <doctest.h>

#include "support/support.hpp"

using namespace lenc;
using namespace lenc::testing;

namespace {

VerifyOptions sat_only() {
  VerifyOptions o;
  o.exhaustive_threshold = 0;
  return o;
}

/// `n` with the kind of gate `index` replaced.
Netlist mutate(const Netlist &n, std::size_t index, GateKind kind) {
  RawNetlist raw = n.raw();
  raw.gates[index].kind = kind;
  return Netlist::build(raw);
}

void check_witness(const Netlist &a, const Netlist &b, const EquivVerdict &v) {
  REQUIRE(v.result == EquivVerdict::Result::inequivalent);
  REQUIRE(v.witness);
  const auto ra = simulate(a, *v.witness), rb = simulate(b, *v.witness);
  CHECK(ra.at(v.mismatched_output) != rb.at(v.mismatched_output));
}

}  // namespace

TEST_SUITE("verifier") {

TEST_CASE("miter outputs one exactly where some output differs") {
  const Netlist a = bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\nOUTPUT(z)\ny = AND(a, b)\nz = OR(a, b)\n");
  const Netlist b = bench("INPUT(b)\nINPUT(a)\nOUTPUT(z)\nOUTPUT(y)\ny = NOR(a, b)\nz = OR(a, b)\n");
  const Netlist m = build_miter(a, b);
  REQUIRE(m.outputs() == std::vector<std::string>{"miter"});
  CHECK(m.inputs() == a.inputs());
  for (int p = 0; p < 4; ++p) {
    const bool x = p & 1, y = p & 2;
    CHECK(simulate(m, {{"a", x}, {"b", y}}).at("miter") == ((x && y) != !(x || y)));
  }
}

TEST_CASE("miter of identical circuits is constant zero") {
  const Netlist oc = read_bench_file(source_dir() / "benchmarks/iscas85/c17.bench");
  for (const auto &row : truth_table(build_miter(oc, oc))) CHECK_FALSE(row[0]);
}

TEST_CASE("interface mismatch") {
  const Netlist a = bench("INPUT(a)\nOUTPUT(y)\ny = NOT(a)\n");
  const Netlist b = bench("INPUT(q)\nOUTPUT(y)\ny = NOT(q)\n");
  CHECK_THROWS_AS(check_equiv(a, b), std::invalid_argument);
}

TEST_CASE("exhaustive and SAT agree on the corpus") {
  for (const auto &oc : corpus(16)) {
    CAPTURE(oc.name());
    const Netlist mapped = map_to_nand_nor(oc).netlist;
    const auto ex = check_equiv(oc, mapped);
    const auto s = check_equiv(oc, mapped, sat_only());
    CHECK(ex.method == EquivVerdict::Method::exhaustive);
    CHECK(ex.equivalent());
    CHECK(s.method == EquivVerdict::Method::sat);
    CHECK(s.equivalent());
    CHECK(brute_force_equal(oc, mapped));
  }
}

TEST_CASE("mutants are caught with a valid witness by both methods") {
  for (const char *name : {"benchmarks/iscas85/c17.bench", "benchmarks/synthetic/mult4.bench",
                           "benchmarks/synthetic/alu4.bench"}) {
    CAPTURE(name);
    const Netlist oc = read_bench_file(source_dir() / name);
    auto rng = RandomSource::seeded(3);
    int caught = 0;
    for (int t = 0; t < 10; ++t) {
      const std::size_t gi = rng.next_u64() % oc.gates().size();
      const GateKind k = oc.gates()[gi].kind;
      if (arity(k) != 2) continue;
      const GateKind other = k == GateKind::NAND ? GateKind::NOR : GateKind::NAND;
      const Netlist mut = mutate(oc, gi, other);
      const bool expect = brute_force_equal(oc, mut);
      const auto ex = check_equiv(oc, mut);
      const auto s = check_equiv(oc, mut, sat_only());
      CHECK(ex.equivalent() == expect);
      CHECK(s.equivalent() == expect);
      if (!expect) {
        check_witness(oc, mut, ex);
        check_witness(oc, mut, s);
        ++caught;
      }
    }
    CHECK(caught > 0);
  }
}

TEST_CASE("verdict is symmetric") {
  const Netlist oc = read_bench_file(source_dir() / "benchmarks/synthetic/mult4.bench");
  std::size_t last = oc.gates().size() - 1;
  while (arity(oc.gates()[last].kind) != 2) --last;
  const Netlist mut = mutate(oc, last, GateKind::XNOR);
  for (const auto &o : {VerifyOptions{}, sat_only()}) {
    CHECK(check_equiv(oc, mut, o).result == check_equiv(mut, oc, o).result);
    CHECK(check_equiv(mut, mut, o).equivalent());
  }
}

TEST_CASE("exhaustive search reports the smallest failing pattern") {
  const Netlist a = bench("INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(y)\ny = AND(a, b)\n");
  const Netlist b = bench("INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(y)\nt = AND(a, b)\ny = AND(t, c)\n");
  const auto v = check_equiv(a, b);
  REQUIRE(v.witness);
  // only a=b=1, c=0 differs
  CHECK(*v.witness == Assignment{{"a", true}, {"b", true}, {"c", false}});
  CHECK(v.mismatched_output == "y");
}

TEST_CASE("wide circuits go to SAT and stay exact") {
  const Netlist oc = read_bench_file(source_dir() / "benchmarks/synthetic/cmp16.bench");
  const Netlist mapped = map_to_nand_nor(oc).netlist;
  const auto v = check_equiv(oc, mapped);
  CHECK(v.method == EquivVerdict::Method::sat);
  CHECK(v.equivalent());
  const auto bad = mutate(mapped, mapped.gates().size() / 2, mapped.gates()[mapped.gates().size() / 2].kind ==
                                                                     GateKind::NAND
                                                                 ? GateKind::NOR
                                                                 : GateKind::NAND);
  const auto vb = check_equiv(oc, bad);
  if (!vb.equivalent()) check_witness(oc, bad, vb);
}

TEST_CASE("sweeping does not change the answer") {
  const Netlist oc = read_bench_file(source_dir() / "benchmarks/synthetic/rca8.bench");
  const Netlist mapped = map_to_nand_nor(oc).netlist;
  VerifyOptions plain = sat_only();
  plain.sweep = false;
  const auto a = check_equiv(oc, mapped, sat_only());
  const auto b = check_equiv(oc, mapped, plain);
  CHECK(a.equivalent());
  CHECK(b.equivalent());
  CHECK(a.swept_equivalences > 0);
  CHECK(b.swept_equivalences == 0);
}

TEST_CASE("an exhausted budget falls back to simulation and never claims equivalence") {
  const Netlist oc = read_bench_file(source_dir() / "benchmarks/synthetic/mult12.bench");
  const Netlist mapped = map_to_nand_nor(oc).netlist;
  VerifyOptions o;
  o.exhaustive_threshold = 0;
  o.sweep = false;
  o.sat_conflicts = 1;
  o.random_vectors = 2000;
  const auto v = check_equiv(oc, mapped, o);
  CHECK(v.method == EquivVerdict::Method::random_sim);
  CHECK(v.result == EquivVerdict::Result::inconclusive);
  CHECK(v.vectors_checked >= 2000);
}

}
