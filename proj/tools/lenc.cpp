// Command-line driver for the logic encryption flow.

#include <cstdlib>
#include <iostream>
#include <regex>

#include <CLI11.hpp>

#include "lenc/bench_io.hpp"
#include "lenc/pipeline.hpp"

using namespace lenc;

namespace {

enum Exit { ok = 0, internal = 1, verification = 2, format = 3, config = 4 };

void parse_runs(const std::string &text, RunConfig &cfg) {
  static const std::regex re(R"((\d+)x(\d+))");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw ConfigError("--runs expects NxM, got '" + text + "'");
  cfg.runs_encrypt = std::stoul(m[1]);
  cfg.runs_e2e = std::stoul(m[2]);
}

std::filesystem::path default_out_dir() {
  if (const char *env = std::getenv("LENC_OUT_DIR"); env && *env) return env;
  return "lenc_out";
}

void log_seed(const RunConfig &cfg) {
  if (cfg.seed)
    std::cerr << "seed: " << *cfg.seed << "\n";
  else
    std::cerr << "seed: none (system entropy, run cannot be replayed)\n";
}

int cmd_encrypt(const std::string &input, RunConfig cfg, const std::string &effort, const std::string &runs) {
  cfg.effort = parse_recipe(effort);
  if (!runs.empty()) parse_runs(runs, cfg);
  cfg.validate();
  log_seed(cfg);
  const Netlist oc = read_netlist_file(input);
  std::cerr << oc.name() << ": " << oc.inputs().size() << " PIs, " << oc.outputs().size() << " POs, "
            << oc.gates().size() << " gates; " << cfg.runs_encrypt << "x" << cfg.runs_e2e << " runs\n";
  const MatrixResult m = run_matrix(oc, cfg);
  write_artifacts(oc, m, cfg);
  std::cerr << "all " << m.runs.size() << " runs verified; " << 2 * oc.outputs().size() << " key bits; written to "
            << cfg.output_dir.string() << "\n";
  return ok;
}

int cmd_verify(const std::string &fc_path, const std::string &key_path, const std::string &oc_path,
               const RunConfig &cfg) {
  const Netlist fc = read_netlist_file(fc_path);
  const Netlist oc = read_netlist_file(oc_path);
  const KeyFile key = key_file_from_json(read_json_file(key_path));
  for (const auto &p : key.key_map)
    if (!fc.input_index(p.port)) throw FormatError("key port '" + p.port + "' is not an input of " + fc_path);
  if (fc.inputs().size() != oc.inputs().size() + key.key_map.size())
    throw FormatError("circuit has key inputs not covered by the key file");
  const EquivVerdict v = check_equiv(oc, apply_key(fc, key.key_map, key.k_fc.bits), cfg.verify_options());
  std::cout << verdict_to_json(v).dump(2) << "\n";
  return v.equivalent() ? ok : verification;
}

int cmd_attack(const std::string &input, const std::string &mode_text, const std::vector<std::string> &recipe_texts,
               const std::string &key_path, const std::string &out_path, unsigned jobs) {
  const auto mode = attack_mode_from_string(mode_text);
  if (!mode) throw ConfigError("unknown attack mode '" + mode_text + "'");
  std::vector<OptEffort> recipes;
  for (const auto &r : recipe_texts) recipes.push_back(parse_recipe(r));
  if (*mode == AttackMode::resynthesis && recipes.size() < 2)
    throw ConfigError("resynthesis mode needs at least two --recipe values");

  const Netlist target = read_netlist_file(input);
  AttackOptions opts;
  opts.jobs = jobs;
  AttackReport report;
  switch (*mode) {
    case AttackMode::baseline: report = scope_baseline(target, find_key_ports(target), opts); break;
    case AttackMode::resynthesis: report = scope_resynth(target, find_key_ports(target), recipes, opts); break;
    default: report = worst_case_split(target, *mode, opts); break;
  }
  if (!key_path.empty()) {
    std::cerr << "guessing finished; reading " << key_path << " for scoring only\n";
    const KeyFile key = key_file_from_json(read_json_file(key_path));
    const BitString &truth = *mode == AttackMode::worst_case_ec   ? key.k_ec.bits
                             : *mode == AttackMode::worst_case_cc ? key.k_cc.bits
                                                                  : key.k_fc.bits;
    score(report, truth);
  }
  const json j = attack_report_to_json(report);
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(out_path, j);
  return ok;
}

int cmd_stats(const std::string &before_path, const std::string &after_path) {
  const auto before = stats(read_netlist_file(before_path));
  const auto after = stats(read_netlist_file(after_path));
  auto pct = [](std::size_t b, std::size_t a) {
    return b == 0 ? 0.0 : 100.0 * (static_cast<double>(a) - static_cast<double>(b)) / static_cast<double>(b);
  };
  const json j{{"before", stats_to_json(before)},
               {"after", stats_to_json(after)},
               {"gates_pct", pct(before.gate_count, after.gate_count)},
               {"depth_pct", pct(before.depth, after.depth)}};
  std::cout << j.dump(2) << "\n";
  return ok;
}

int cmd_map(const std::string &input, const std::string &out_path) {
  const MappedNetlist m = map_to_nand_nor(read_netlist_file(input));
  const std::string text = write_bench(m.netlist);
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
  return ok;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Logic encryption of combinational netlists"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.output_dir = default_out_dir();
  std::string effort = "standard", runs, input, fc_path, key_path, oc_path, out_path, mode = "baseline";
  std::string before_path, after_path;
  std::vector<std::string> recipes;
  std::uint64_t seed = 0;

  auto add_verify_flags = [&](CLI::App *cmd) {
    cmd->add_option("--exhaustive-threshold", cfg.exhaustive_threshold, "Largest PI count checked exhaustively");
    cmd->add_option("--sat-seconds", cfg.sat_seconds, "SAT budget per equivalence check");
  };

  auto *enc = app.add_subcommand("encrypt", "Run the full flow and write fc/key/trace/report files");
  enc->add_option("input", input, "OC netlist (.bench or .json)")->required();
  auto *seed_opt = enc->add_option("--seed", seed, "Seed for reproducible runs");
  enc->add_option("--effort", effort, "none | light | standard | heavy[:seed=N]");
  enc->add_option("--runs", runs, "Encryption x end-to-end runs, e.g. 10x4 (default)");
  enc->add_option("--out", cfg.output_dir, "Output directory (default $LENC_OUT_DIR or lenc_out)");
  enc->add_option("--jobs", cfg.jobs, "Concurrent encryption runs");
  enc->add_flag("--emit-components", cfg.emit_components, "Also write ec.bench and cc.bench");
  add_verify_flags(enc);

  auto *ver = app.add_subcommand("verify", "Check the key-applied FC against the OC");
  ver->add_option("fc", fc_path, "Final circuit (.bench or .json)")->required();
  ver->add_option("key", key_path, "key.json")->required();
  ver->add_option("oc", oc_path, "Original circuit")->required();
  add_verify_flags(ver);

  auto *att = app.add_subcommand("attack", "Oracle-less key guessing");
  att->add_option("input", input, "Locked circuit, or an isolated EC/CC for the worst-case modes")->required();
  att->add_option("--mode", mode, "baseline | resynthesis | worst_case_ec | worst_case_cc");
  att->add_option("--recipe", recipes, "Optimization recipe per resynthesis variant");
  att->add_option("--key", key_path, "key.json, read after guessing to score the result");
  att->add_option("--out", out_path, "Report path (stdout if omitted)");
  att->add_option("--jobs", cfg.jobs, "Worker threads");

  auto *sts = app.add_subcommand("stats", "Gate-count and depth overhead of one netlist over another");
  sts->add_option("before", before_path)->required();
  sts->add_option("after", after_path)->required();

  auto *map = app.add_subcommand("map", "NAND/NOR mapping only");
  map->add_option("input", input)->required();
  map->add_option("--out", out_path, "Output BENCH path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : config;
  }

  try {
    if (*seed_opt) cfg.seed = seed;
    if (*enc) return cmd_encrypt(input, cfg, effort, runs);
    cfg.validate();
    if (*ver) return cmd_verify(fc_path, key_path, oc_path, cfg);
    if (*att) return cmd_attack(input, mode, recipes, key_path, out_path, cfg.jobs);
    if (*sts) return cmd_stats(before_path, after_path);
    if (*map) return cmd_map(input, out_path);
  } catch (const VerificationFailure &e) {
    std::cerr << "error: " << e.what() << "\n";
    return verification;
  } catch (const ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return format;
  } catch (const FormatError &e) {
    std::cerr << "format error: " << e.what() << "\n";
    return format;
  } catch (const NetlistError &e) {
    std::cerr << "netlist error: " << e.what() << "\n";
    return format;
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config;
  } catch (const std::invalid_argument &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return internal;
  }
  return internal;
}
