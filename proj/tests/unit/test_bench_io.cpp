#include <doctest.h>

#include "support/support.hpp"

using namespace lenc;
using namespace lenc::testing;

TEST_SUITE("bench_io") {

TEST_CASE("c17 parses with the published interface") {
  const Netlist n = read_bench_file(source_dir() / "benchmarks/iscas85/c17.bench");
  CHECK(n.name() == "c17");
  CHECK(n.inputs() == std::vector<std::string>{"1", "2", "3", "6", "7"});
  CHECK(n.outputs() == std::vector<std::string>{"22", "23"});
  CHECK(n.gates().size() == 6);
  // 22 = NAND(NAND(1,3), NAND(2, NAND(3,6)))
  for (int p = 0; p < 32; ++p) {
    const bool i1 = p & 1, i2 = p & 2, i3 = p & 4, i6 = p & 8, i7 = p & 16;
    const bool n10 = !(i1 && i3), n11 = !(i3 && i6), n16 = !(i2 && n11), n19 = !(n11 && i7);
    const auto r = simulate(n, {{"1", i1}, {"2", i2}, {"3", i3}, {"6", i6}, {"7", i7}});
    CHECK(r.at("22") == !(n10 && n16));
    CHECK(r.at("23") == !(n16 && n19));
  }
}

TEST_CASE("write then parse is the identity") {
  for (const auto &n : corpus(24)) {
    const Netlist back = parse_bench(write_bench(n), n.name());
    CHECK(back == n);
  }
}

TEST_CASE("comments, spacing and case") {
  const Netlist n = bench("# header\n input( a )  # trailing\nINPUT(b)\noutput(y)\n\ny=nand( a ,b )\n");
  CHECK(n.gates().size() == 1);
  CHECK(n.gates()[0].kind == GateKind::NAND);
}

TEST_CASE("errors carry line numbers") {
  auto message = [](std::string_view text) {
    try {
      bench(text);
    } catch (const ParseError &e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("INPUT(a)\nOUTPUT(y)\ny = NAND(a)\n") == "line 3: NAND expects 2 inputs, got 1");
  CHECK(message("INPUT(a)\nOUTPUT(y)\ny = NOT(q)\n") == "line 3: undefined net 'q'");
  CHECK(message("INPUT(a)\nINPUT(a)\n").starts_with("line 2: duplicate definition of net 'a'"));
  CHECK(message("INPUT(a)\nOUTPUT(y)\ny = DFF(a)\n").starts_with("line 3: sequential"));
  CHECK(message("INPUT(a)\nOUTPUT(y)\ny = FOO(a)\n").starts_with("line 3: unknown gate kind"));
  CHECK(message("INPUT(a)\nOUTPUT(y)\n").starts_with("line 2: output 'y' is never driven"));
  CHECK(message("INPUT(a)\nOUTPUT(y)\ny = AND(a, z)\nz = NOT(y)\n").find("cycle") != std::string::npos);
}

TEST_CASE("wide gates are decomposed without changing the function") {
  const Netlist n = bench("INPUT(a)\nINPUT(b)\nINPUT(c)\nINPUT(d)\nOUTPUT(y)\nOUTPUT(z)\n"
                          "y = NAND(a, b, c, d)\nz = XNOR(a, b, c)\n");
  CHECK(n.gates().size() == 5);
  for (int p = 0; p < 16; ++p) {
    const bool a = p & 1, b = p & 2, c = p & 4, d = p & 8;
    const auto r = simulate(n, {{"a", a}, {"b", b}, {"c", c}, {"d", d}});
    CHECK(r.at("y") == !(a && b && c && d));
    CHECK(r.at("z") == !(a ^ b ^ c));
  }
}

TEST_CASE("repeated OUTPUT lines name one output") {
  const Netlist n = bench("INPUT(a)\nOUTPUT(y)\nOUTPUT(y)\ny = NOT(a)\n");
  CHECK(n.outputs().size() == 1);
}

TEST_CASE("MUX2 cannot be written as BENCH") {
  RawNetlist raw{"m", {"s", "a", "b"}, {"y"}, {{"y", GateKind::MUX2, {"s", "a", "b"}}}};
  CHECK_THROWS_AS(write_bench(Netlist::build(raw)), NetlistError);
}

TEST_CASE("constants round trip") {
  const Netlist n = bench("INPUT(a)\nOUTPUT(y)\nk = CONST1()\ny = AND(a, k)\n");
  CHECK(parse_bench(write_bench(n), "t") == n);
}

}
