#include <doctest.h>

#include "support/support.hpp"

using namespace lenc;
using namespace lenc::testing;

TEST_SUITE("optimizer") {

TEST_CASE("NAND with a constant one becomes an inverter") {
  const Netlist n = bench("INPUT(a)\nOUTPUT(y)\nk = CONST1()\ny = NAND(a, k)\n");
  const Netlist o = optimize(n, OptEffort::standard());
  REQUIRE(o.gates().size() == 1);
  CHECK(o.gates()[0].kind == GateKind::NOT);
  CHECK(brute_force_equal(n, o));
}

TEST_CASE("double inversion collapses") {
  const Netlist n = bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\nt = AND(a, b)\nu = NOT(t)\ny = NOT(u)\n");
  const Netlist o = optimize(n, OptEffort::standard());
  CHECK(o.gates().size() == 1);
  CHECK(o.gates()[0].output == "y");
  CHECK(brute_force_equal(n, o));
}

TEST_CASE("identical gates merge") {
  const Netlist n = bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\nt = NAND(a, b)\nu = NAND(b, a)\ny = XOR(t, u)\n");
  const Netlist o = optimize(n, OptEffort::standard());
  CHECK(brute_force_equal(n, o));
  CHECK(o.gates().size() == 1);
  CHECK(o.gates()[0].kind == GateKind::CONST0);
}

TEST_CASE("duplicated-input NAND and NOR become inverters") {
  const Netlist n = bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\nOUTPUT(z)\ny = NAND(a, a)\nz = NOR(b, b)\n");
  const Netlist o = run_passes(n, std::vector<Pass>{Pass::duplicate_input});
  for (const auto &g : o.gates()) CHECK(g.kind == GateKind::NOT);
  CHECK(brute_force_equal(n, o));
}

TEST_CASE("constant propagation examples") {
  RawNetlist raw{"m", {"s", "d0", "d1"}, {"y"}, {{"y", GateKind::MUX2, {"s", "d0", "d1"}}}};
  const Netlist mux = Netlist::build(raw);
  const Netlist m0 = propagate_constants(mux, {{"s", false}});
  CHECK(m0.inputs() == std::vector<std::string>{"d0", "d1"});
  CHECK(brute_force_equal(m0, bench("INPUT(d0)\nINPUT(d1)\nOUTPUT(y)\ny = BUFF(d0)\n")));

  const Netlist x = bench("INPUT(a)\nINPUT(k)\nOUTPUT(y)\ny = XOR(a, k)\n");
  const Netlist x0 = propagate_constants(x, {{"k", false}});
  CHECK(x0.gates().size() == 1);
  CHECK(x0.gates()[0].kind == GateKind::BUF);
  CHECK_THROWS_AS(propagate_constants(x, {{"y", true}}), NetlistError);
}

TEST_CASE("every effort preserves function, never grows, and is idempotent") {
  std::vector<OptEffort> efforts = {OptEffort::none(), OptEffort::light(), OptEffort::standard(),
                                    OptEffort::heavy(3), OptEffort::heavy(11)};
  for (const auto &n : corpus(14)) {
    for (const auto &e : efforts) {
      CAPTURE(n.name());
      CAPTURE(to_string(e));
      const Netlist o = optimize(n, e);
      CHECK(o.inputs() == n.inputs());
      CHECK(o.outputs() == n.outputs());
      CHECK(o.gates().size() <= n.gates().size());
      CHECK(brute_force_equal(n, o));
      const auto s1 = stats(o), s2 = stats(optimize(o, e));
      CHECK(s1.gate_count == s2.gate_count);
      CHECK(s1.literal_count == s2.literal_count);
      CHECK(s1.depth == s2.depth);
    }
  }
}

TEST_CASE("frozen nets survive with their kind") {
  const Netlist n = bench("INPUT(a)\nOUTPUT(y)\nu = NOT(a)\nv = NOT(u)\ny = BUFF(v)\n");
  const Netlist o = optimize(n, OptEffort::standard(), {"u", "v"});
  REQUIRE(o.driver("u"));
  REQUIRE(o.driver("v"));
  CHECK(o.gates()[o.driver("v")->index].kind == GateKind::NOT);
  CHECK(brute_force_equal(n, o));
}

TEST_CASE("recipes") {
  CHECK(parse_recipe("light").level == OptEffort::Level::light);
  CHECK(parse_recipe("heavy:seed=7").seed == 7);
  CHECK(to_string(parse_recipe("heavy:seed=7")) == "heavy:seed=7");
  CHECK(to_string(parse_recipe("standard")) == "standard");
  CHECK_THROWS_AS(parse_recipe("turbo"), std::invalid_argument);
  CHECK_THROWS_AS(parse_recipe("heavy:seed=x"), std::invalid_argument);
}

TEST_CASE("anonymize keeps the interface") {
  const Netlist n = golden_oc();
  const Netlist a = anonymize(n, "n");
  CHECK(a.inputs() == n.inputs());
  CHECK(a.outputs() == n.outputs());
  CHECK_FALSE(a.has_net("t1"));
  CHECK(brute_force_equal(n, a));
}

}
