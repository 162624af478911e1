#include <doctest.h>

#include "support/support.hpp"

using namespace lenc;
using namespace lenc::testing;

namespace {

struct Built {
  Netlist oc;
  EndToEnd e2e;
};

Built flow(const Netlist &oc, std::uint64_t seed) {
  RunConfig cfg;
  cfg.seed = seed;
  auto root = root_source(cfg);
  auto enc_rng = encryption_stream(root, 0);
  const auto enc = run_encryption(oc, enc_rng, cfg);
  auto e2e_rng = end_to_end_stream(enc_rng, 0);
  return {oc, run_end_to_end(oc, enc, e2e_rng, cfg)};
}

}  // namespace

TEST_SUITE("integrator") {

TEST_CASE("final key derivation") {
  const KeyVector k_mux{KeyRole::k_mux, {true, false}};
  const KeyVector k_ec{KeyRole::k_ec, {false}};
  const KeyVector k_cc{KeyRole::k_cc, {true}};
  CHECK(derive_final_key(k_mux, k_ec, k_cc).bits == BitString{true, true});

  const KeyVector zero_mux{KeyRole::k_mux, BitString(4, false)};
  const KeyVector zero{KeyRole::k_ec, BitString(2, false)};
  const KeyVector zero_cc{KeyRole::k_cc, BitString(2, false)};
  CHECK(derive_final_key(zero_mux, zero, zero_cc).bits == BitString(4, false));
  CHECK_THROWS_AS(derive_final_key(k_mux, zero, zero_cc), std::invalid_argument);
}

TEST_CASE("intermediates can be recovered from K_FC and the other two") {
  auto rng = RandomSource::seeded(77);
  const auto k_mux = random_key(KeyRole::k_mux, 20, rng);
  const auto k_ec = random_key(KeyRole::k_ec, 10, rng);
  const auto k_cc = random_key(KeyRole::k_cc, 10, rng);
  const auto k_fc = derive_final_key(k_mux, k_ec, k_cc);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK((k_fc.bits[2 * i] != k_mux.bits[2 * i]) == k_ec.bits[i]);
    CHECK((k_fc.bits[2 * i + 1] != k_cc.bits[i]) == k_mux.bits[2 * i + 1]);
  }
}

TEST_CASE("lowering a single MUX2 keeps all eight rows") {
  RawNetlist raw{"m", {"s", "d0", "d1"}, {"y"}, {{"y", GateKind::MUX2, {"s", "d0", "d1"}}}};
  const Netlist mux = Netlist::build(raw);
  const Netlist low = lower_mux(mux);
  for (const auto &g : low.gates()) CHECK(g.kind != GateKind::MUX2);
  CHECK(truth_table(mux) == truth_table(low));
  CHECK(lower_mux(golden_oc()) == golden_oc());
}

TEST_CASE("key gates follow the MUX polarity convention") {
  const Netlist oc = golden_oc();
  auto rng = RandomSource::seeded(1);
  const auto integ = build_fc(oc, oc, rng, OptEffort::none(), BitString{true, false});
  REQUIRE(integ.key_gates.size() == 2);
  CHECK(integ.key_gates[0].side == Side::ec);
  CHECK(integ.key_gates[0].key_port == "keyinput0");
  CHECK(integ.key_gates[1].side == Side::cc);
  // bit 1: inverted on data0, bit 0: buffered on data0
  CHECK(integ.key_gates[0].data0 == "kg_n0");
  CHECK(integ.key_gates[0].data1.find("po") != std::string::npos);
  CHECK(integ.key_gates[1].data1 == "kg_n1");
  CHECK(integ.key_gates[1].data0.find("po") != std::string::npos);
  CHECK(integ.fc.key_map == std::vector<KeyPort>{{"keyinput0", "po", Side::ec}, {"keyinput1", "po", Side::cc}});
  std::size_t muxes = 0;
  for (const auto &g : integ.fc.netlist.gates()) muxes += g.kind == GateKind::MUX2;
  CHECK(muxes == 2);
}

TEST_CASE("restoration, single-bit sensitivity and pair cancellation") {
  for (const char *name : {"benchmarks/iscas85/c17.bench", "benchmarks/synthetic/dec4to16.bench",
                           "benchmarks/synthetic/alu4.bench", "benchmarks/synthetic/mult4.bench"}) {
    CAPTURE(name);
    const Netlist oc = read_bench_file(source_dir() / name);
    const auto b = flow(oc, 21);
    const auto &fc = b.e2e.fc;
    REQUIRE(fc.k_fc.size() == 2 * oc.outputs().size());
    const auto base = truth_table(oc);
    CHECK(truth_table(apply_key(fc.netlist, fc.key_map, fc.k_fc.bits)) == base);
    CHECK(truth_table(apply_key(lower_mux(fc.netlist), fc.key_map, fc.k_fc.bits)) == base);

    for (std::size_t k = 0; k < fc.k_fc.size(); ++k) {
      BitString key = fc.k_fc.bits;
      key[k] = !key[k];
      const auto t = truth_table(apply_key(fc.netlist, fc.key_map, key));
      for (std::size_t p = 0; p < t.size(); ++p)
        for (std::size_t i = 0; i < oc.outputs().size(); ++i) REQUIRE(t[p][i] == (base[p][i] ^ (i == k / 2)));
    }
    for (std::size_t i = 0; i < oc.outputs().size(); ++i) {
      BitString key = fc.k_fc.bits;
      key[2 * i] = !key[2 * i];
      key[2 * i + 1] = !key[2 * i + 1];
      CHECK(truth_table(apply_key(fc.netlist, fc.key_map, key)) == base);
    }
  }
}

TEST_CASE("key size is twice the output count") {
  // 32 outputs, as in c1355.
  std::string text;
  for (int i = 0; i < 8; ++i) text += "INPUT(i" + std::to_string(i) + ")\n";
  for (int o = 0; o < 32; ++o) text += "OUTPUT(o" + std::to_string(o) + ")\n";
  for (int o = 0; o < 32; ++o)
    text += "o" + std::to_string(o) + " = " + (o % 2 ? "XOR" : "NAND") + "(i" + std::to_string(o % 8) + ", i" +
            std::to_string((o / 8 + o + 1) % 8) + ")\n";
  const auto b = flow(bench(text, "w32"), 4);
  CHECK(b.e2e.fc.k_fc.size() == 64);
  CHECK(find_key_ports(b.e2e.fc.netlist).size() == 64);
  CHECK(find_key_ports(b.e2e.fc.netlist).back() == "keyinput63");
}

TEST_CASE("interface errors") {
  auto rng = RandomSource::seeded(0);
  const Netlist other = bench("INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(q)\nq = AND(a, b)\n");
  CHECK_THROWS_AS(build_fc(golden_oc(), other, rng, OptEffort::none()), std::invalid_argument);
  const Netlist clash = bench("INPUT(keyinput0)\nOUTPUT(q)\nq = NOT(keyinput0)\n");
  CHECK_THROWS_AS(build_fc(clash, clash, rng, OptEffort::none()), std::invalid_argument);
  CHECK_THROWS_AS(apply_key(golden_oc(), {{"keyinput0", "po", Side::ec}}, BitString{}), std::invalid_argument);
}

}
