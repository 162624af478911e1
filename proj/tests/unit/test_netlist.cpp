#include <doctest.h>

#include "support/support.hpp"

using namespace lenc;
using namespace lenc::testing;

TEST_SUITE("netlist") {

TEST_CASE("gate truth tables") {
  // Rows are (a, b) = 00, 01, 10, 11.
  const std::map<GateKind, std::array<int, 4>> table = {
      {GateKind::AND, {0, 0, 0, 1}}, {GateKind::NAND, {1, 1, 1, 0}}, {GateKind::OR, {0, 1, 1, 1}},
      {GateKind::NOR, {1, 0, 0, 0}}, {GateKind::XOR, {0, 1, 1, 0}},  {GateKind::XNOR, {1, 0, 0, 1}},
      {GateKind::NOT, {1, 1, 0, 0}}, {GateKind::BUF, {0, 0, 1, 1}},  {GateKind::CONST0, {0, 0, 0, 0}},
      {GateKind::CONST1, {1, 1, 1, 1}}};
  for (const auto &[kind, rows] : table) {
    for (int r = 0; r < 4; ++r) {
      const std::uint64_t a = (r >> 1) & 1 ? ~0ull : 0, b = r & 1 ? ~0ull : 0;
      CHECK_MESSAGE((eval_gate(kind, a, b, 0) & 1) == static_cast<std::uint64_t>(rows[r]), to_string(kind));
    }
  }
  // MUX2(s, d0, d1), rows over (s, d0, d1).
  for (int r = 0; r < 8; ++r) {
    const int s = (r >> 2) & 1, d0 = (r >> 1) & 1, d1 = r & 1;
    CHECK((eval_gate(GateKind::MUX2, s ? ~0ull : 0, d0 ? ~0ull : 0, d1 ? ~0ull : 0) & 1) ==
          static_cast<std::uint64_t>(s ? d1 : d0));
  }
}

TEST_CASE("kind names round trip and aliases") {
  for (auto k : all_gate_kinds) CHECK(gate_kind_from_string(to_string(k)) == k);
  CHECK(gate_kind_from_string("INV") == GateKind::NOT);
  CHECK(gate_kind_from_string("buf") == GateKind::BUF);
  CHECK_FALSE(gate_kind_from_string("DFF"));
}

TEST_CASE("validate reports every structural problem") {
  RawNetlist raw{"bad", {"a", "a"}, {"y", "z"}, {}};
  raw.gates.push_back({"y", GateKind::AND, {"a"}});
  raw.gates.push_back({"p", GateKind::NOT, {"q"}});
  raw.gates.push_back({"q", GateKind::NOT, {"p"}});
  raw.gates.push_back({"u", GateKind::OR, {"a", "missing"}});
  const auto diags = validate(raw);
  auto has = [&](Diagnostic::Code c) {
    return std::any_of(diags.begin(), diags.end(), [&](const Diagnostic &d) { return d.code == c; });
  };
  CHECK(has(Diagnostic::Code::duplicate));
  CHECK(has(Diagnostic::Code::arity));
  CHECK(has(Diagnostic::Code::cycle));
  CHECK(has(Diagnostic::Code::undefined));
  CHECK(has(Diagnostic::Code::undriven_output));
  CHECK_THROWS_AS(Netlist::build(raw), NetlistError);
}

TEST_CASE("build sorts gates topologically and indexes signals") {
  RawNetlist raw{"t", {"a", "b"}, {"y"}, {}};
  raw.gates.push_back({"y", GateKind::OR, {"t", "b"}});
  raw.gates.push_back({"t", GateKind::AND, {"a", "b"}});
  const Netlist n = Netlist::build(raw);
  REQUIRE(n.gates().size() == 2);
  CHECK(n.gates()[0].output == "t");
  CHECK(n.signal_id("t") == 2u);
  CHECK(n.output_ids() == std::vector<std::uint32_t>{3});
  CHECK(n.driver("a")->is_input);
  CHECK_FALSE(n.has_net("zz"));
}

TEST_CASE("stats on the golden circuit") {
  const auto s = stats(golden_oc());
  CHECK(s.gate_count == 2);
  CHECK(s.depth == 2);
  CHECK(s.literal_count == 4);
  CHECK(s.type_histogram.at(GateKind::AND) == 1);
}

TEST_CASE("single-vector and word simulation agree") {
  const Netlist n = golden_oc();
  for (int p = 0; p < 8; ++p) {
    const bool a = p & 1, b = p & 2, c = p & 4;
    CHECK(simulate(n, {{"a", a}, {"b", b}, {"c", c}}).at("po") == ((a && b) || c));
  }
  std::vector<std::uint64_t> words = {exhaustive_word(0, 0), exhaustive_word(1, 0), exhaustive_word(2, 0)};
  const auto out = simulate_words(n, words);
  for (int p = 0; p < 8; ++p) CHECK(((out[0] >> p) & 1) == (((p & 1) && (p & 2)) || (p & 4) ? 1u : 0u));
  CHECK(exhaustive_lane_mask(3) == 0xff);
  CHECK_THROWS_AS(simulate(n, {{"a", true}}), NetlistError);
}

TEST_CASE("transitive fanin") {
  const Netlist n = golden_oc();
  const std::uint32_t root = *n.signal_id("t1");
  const auto cone = transitive_fanin(n, std::span(&root, 1));
  CHECK(cone[*n.signal_id("a")]);
  CHECK_FALSE(cone[*n.signal_id("c")]);
}

}
