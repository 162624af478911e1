#include "lenc/pipeline.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "lenc/bench_io.hpp"

namespace lenc {

namespace {

void require(std::vector<Obligation> &list, std::string name, const Netlist &a, const Netlist &b,
             const RunConfig &cfg) {
  Obligation o{std::move(name), check_equiv(a, b, cfg.verify_options())};
  if (!o.verdict.equivalent()) throw VerificationFailure(std::move(o));
  list.push_back(std::move(o));
}

json obligations_json(const std::vector<Obligation> &list) {
  json j = json::array();
  for (const auto &o : list) {
    json v = verdict_to_json(o.verdict);
    v["name"] = o.name;
    j.push_back(std::move(v));
  }
  return j;
}

double overhead_pct(std::size_t before, std::size_t after) {
  return before == 0 ? 0.0 : 100.0 * (static_cast<double>(after) - static_cast<double>(before)) / static_cast<double>(before);
}

}  // namespace

void RunConfig::validate() const {
  if (runs_encrypt == 0 || runs_e2e == 0) throw ConfigError("run counts must be at least 1");
  if (exhaustive_threshold > 24) throw ConfigError("exhaustive threshold must not exceed 24");
  if (jobs == 0) throw ConfigError("jobs must be at least 1");
  if (!(sat_seconds > 0)) throw ConfigError("SAT budget must be positive");
}

VerifyOptions RunConfig::verify_options() const {
  VerifyOptions v;
  v.exhaustive_threshold = exhaustive_threshold;
  v.sat_seconds = sat_seconds;
  return v;
}

VerificationFailure::VerificationFailure(Obligation o)
    : std::runtime_error("verification of '" + o.name + "' failed: " + std::string(to_string(o.verdict.result)) +
                         " (" + std::string(to_string(o.verdict.method)) + ")"),
      obligation_(std::move(o)) {}

EncryptionStage run_encryption(const Netlist &oc, RandomSource &rng, const RunConfig &cfg, const Overrides &ov) {
  for (const auto &po : oc.outputs())
    if (oc.input_index(po)) throw NetlistError("output '" + po + "' is a primary input; the flow needs a driven output");
  EncryptionStage st;
  st.mapped = map_to_nand_nor(oc);
  require(st.obligations, "nand_nor_map", oc, st.mapped.netlist, cfg);

  RandomSource scheme_rng = rng.fork("scheme");
  RandomSource aes_rng = rng.fork("aes");
  st.scheme = ov.scheme ? *ov.scheme : make_coding_scheme(st.mapped.netlist.gates().size(), scheme_rng);
  const BitString plaintext = encode(st.mapped, st.scheme);
  st.trace = ov.cipher ? encrypt(plaintext, aes_rng, *ov.cipher) : encrypt(plaintext, aes_rng);
  st.basic_ec = decode(st.trace, st.scheme, st.mapped).renamed(oc.name() + "_ec");
  st.flips = count_kind_flips(st.mapped.netlist, st.basic_ec);
  st.intermediate_ec = optimize(st.basic_ec, cfg.effort);
  require(st.obligations, "ec_optimize", st.basic_ec, st.intermediate_ec, cfg);
  return st;
}

EndToEnd run_end_to_end(const Netlist &oc, const EncryptionStage &enc, RandomSource &rng, const RunConfig &cfg,
                        const Overrides &ov) {
  RandomSource cc_rng = rng.fork("cc");
  RandomSource ec_rng = rng.fork("ec");
  RandomSource mux_rng = rng.fork("mux");
  EndToEnd out;
  CorrectionCircuit cc = build_cc(oc, enc.intermediate_ec, cc_rng, cfg.effort, ov.k_cc);
  require(out.obligations, "cc_identity", cc_reference(oc, enc.intermediate_ec, cc.k_cc), cc.cc, cfg);
  out.shared_gates = shared_gate_count(cc.cc);

  RandomizedEc ec = randomize_ec(enc.intermediate_ec, ec_rng, cfg.effort, ov.k_ec);
  require(out.obligations, "ec_randomize", ec_reference(enc.intermediate_ec, ec.k_ec), ec.ec_final, cfg);

  Integration integ = build_fc(ec.ec_final, cc.cc, mux_rng, cfg.effort, ov.k_mux);
  integ.fc.k_fc = derive_final_key(integ.k_mux, ec.k_ec, cc.k_cc);
  integ.fc.netlist = integ.fc.netlist.renamed(oc.name() + "_fc");
  require(out.obligations, "fc_restore", oc, apply_key(integ.fc.netlist, integ.fc.key_map, integ.fc.k_fc.bits), cfg);

  out.key = {oc.name(), oc.outputs(), ec.k_ec, cc.k_cc, integ.k_mux, integ.fc.k_fc, integ.fc.key_map};
  out.cc = std::move(cc.cc);
  out.ec_final = std::move(ec.ec_final);
  out.fc = std::move(integ.fc);
  return out;
}

RandomSource root_source(const RunConfig &cfg) {
  return cfg.seed ? RandomSource::seeded(*cfg.seed) : RandomSource::system();
}

RandomSource encryption_stream(const RandomSource &root, std::size_t i) { return root.fork("enc" + std::to_string(i)); }

RandomSource end_to_end_stream(const RandomSource &enc_stream, std::size_t j) {
  return enc_stream.fork("e2e" + std::to_string(j));
}

MatrixResult run_matrix(const Netlist &oc, const RunConfig &cfg) {
  cfg.validate();
  const RandomSource root = root_source(cfg);
  std::vector<std::vector<RunRecord>> per_enc(cfg.runs_encrypt);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < cfg.runs_encrypt;) {
      try {
        RandomSource enc_rng = encryption_stream(root, i);
        auto enc = std::make_shared<const EncryptionStage>(run_encryption(oc, enc_rng, cfg));
        for (std::size_t j = 0; j < cfg.runs_e2e; ++j) {
          RandomSource e2e_rng = end_to_end_stream(enc_rng, j);
          per_enc[i].push_back({i, j, enc, run_end_to_end(oc, *enc, e2e_rng, cfg)});
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cfg.runs_encrypt;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned threads = std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cfg.runs_encrypt));
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto &th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  MatrixResult m;
  for (auto &runs : per_enc) {
    m.flips += runs.front().enc->flips;
    m.flip_candidates += runs.front().enc->mapped.netlist.gates().size();
    for (auto &r : runs) m.runs.push_back(std::move(r));
  }
  return m;
}

json run_report(const Netlist &oc, const RunRecord &run, const RunConfig &cfg) {
  const EncryptionStage &enc = *run.enc;
  const auto oc_stats = stats(oc);
  const auto fc_stats = stats(run.e2e.fc.netlist);
  json j{{"benchmark", oc.name()}, {"seed", nullptr}};
  if (cfg.seed) j["seed"] = *cfg.seed;
  j["encryption_run"] = run.enc_index;
  j["end_to_end_run"] = run.e2e_index;
  j["effort"] = to_string(cfg.effort);
  j["primary_inputs"] = oc.inputs().size();
  j["primary_outputs"] = oc.outputs().size();
  j["key_bits"] = run.e2e.fc.k_fc.size();
  j["stats"] = {{"oc", stats_to_json(oc_stats)},
                {"mapped", stats_to_json(stats(enc.mapped.netlist))},
                {"basic_ec", stats_to_json(stats(enc.basic_ec))},
                {"intermediate_ec", stats_to_json(stats(enc.intermediate_ec))},
                {"cc", stats_to_json(stats(run.e2e.cc))},
                {"ec_final", stats_to_json(stats(run.e2e.ec_final))},
                {"fc", stats_to_json(fc_stats)}};
  j["encoding"] = {{"gates", enc.mapped.netlist.gates().size()},
                   {"duplicated_input_gates", enc.mapped.duplicated_input_gates},
                   {"kind_flips", enc.flips},
                   {"pad_len", enc.trace.pad_len}};
  j["cc_shared_gates"] = run.e2e.shared_gates;
  j["overhead"] = {{"gates_pct", overhead_pct(oc_stats.gate_count, fc_stats.gate_count)},
                   {"depth_pct", overhead_pct(oc_stats.depth, fc_stats.depth)}};
  std::vector<Obligation> all = enc.obligations;
  all.insert(all.end(), run.e2e.obligations.begin(), run.e2e.obligations.end());
  j["verification"] = obligations_json(all);
  j["verified"] = true;
  return j;
}

json matrix_report(const Netlist &oc, const MatrixResult &m, const RunConfig &cfg) {
  json runs = json::array();
  for (const auto &r : m.runs) {
    const auto fc = stats(r.e2e.fc.netlist);
    runs.push_back({{"encryption_run", r.enc_index},
                    {"end_to_end_run", r.e2e_index},
                    {"dir", "enc" + std::to_string(r.enc_index) + "/e2e" + std::to_string(r.e2e_index)},
                    {"fc_gates", fc.gate_count},
                    {"fc_depth", fc.depth},
                    {"cc_shared_gates", r.e2e.shared_gates}});
  }
  json j{{"benchmark", oc.name()}, {"seed", nullptr}};
  if (cfg.seed) j["seed"] = *cfg.seed;
  j["runs_encrypt"] = cfg.runs_encrypt;
  j["runs_e2e"] = cfg.runs_e2e;
  j["effort"] = to_string(cfg.effort);
  j["key_bits"] = 2 * oc.outputs().size();
  j["kind_flip_rate"] = {{"flips", m.flips},
                         {"gates", m.flip_candidates},
                         {"rate", m.flip_candidates ? static_cast<double>(m.flips) / static_cast<double>(m.flip_candidates) : 0.0}};
  j["runs"] = std::move(runs);
  j["verified"] = true;
  return j;
}

void write_artifacts(const Netlist &oc, const MatrixResult &m, const RunConfig &cfg) {
  const bool flat = m.runs.size() == 1;
  for (const auto &r : m.runs) {
    const auto enc_dir = flat ? cfg.output_dir : cfg.output_dir / ("enc" + std::to_string(r.enc_index));
    const auto dir = flat ? cfg.output_dir : enc_dir / ("e2e" + std::to_string(r.e2e_index));
    write_text_file(dir / "fc.bench", write_bench(lower_mux(r.e2e.fc.netlist)));
    write_json_file(dir / "fc.json", netlist_to_json(r.e2e.fc.netlist));
    write_json_file(dir / "key.json", key_file_to_json(r.e2e.key));
    write_json_file(dir / "report.json", run_report(oc, r, cfg));
    write_json_file(flat ? dir / "trace.json" : enc_dir / "trace.json", trace_to_json(r.enc->trace));
    if (cfg.emit_components) {
      write_text_file(dir / "ec.bench", write_bench(r.e2e.ec_final));
      write_text_file(dir / "cc.bench", write_bench(r.e2e.cc));
    }
  }
  if (!flat) write_json_file(cfg.output_dir / "report.json", matrix_report(oc, m, cfg));
}

}  // namespace lenc
