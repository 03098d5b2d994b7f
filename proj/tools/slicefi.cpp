// Command-line driver: parse, slice, golden, faults, run, oracle, gen.

#include <CLI11.hpp>

#include <iostream>

#include "slicefi/campaign.hpp"
#include "slicefi/frontend.hpp"

using namespace slicefi;

namespace {

struct Overrides {
  std::string config;
  std::string design;
  std::string stimulus;
  std::string obs;
  std::string target;
  std::string mode;
  std::string semantics;
  std::string memory_rows;
  unsigned workers = 0;
  std::string out;
};

void add_common(CLI::App* cmd, Overrides& o, bool needs_stimulus) {
  cmd->add_option("--config", o.config, "campaign file (key = value)");
  cmd->add_option("--design", o.design, "MiniRTL source");
  if (needs_stimulus) cmd->add_option("--stimulus", o.stimulus, "stimulus CSV");
  cmd->add_option("--obs", o.obs, "comma-separated observation signals");
}

void add_fault_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--target", o.target, "'all' or comma-separated glob patterns");
  cmd->add_option("--mode", o.mode, "Exhaustive | StaticPrune | DynamicPrune | DynamicLivePrune");
  cmd->add_option("--semantics", o.semantics, "Transient | Persistent");
  cmd->add_option("--memory-rows", o.memory_rows, "whole | read");
  cmd->add_option("--workers", o.workers, "simulation threads");
  cmd->add_option("--out", o.out, "output directory");
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    std::string name = s.substr(start, comma - start);
    if (!name.empty()) out.push_back(name);
    start = comma + 1;
  }
  return out;
}

CampaignConfig build_config(const Overrides& o) {
  CampaignConfig cfg;
  if (!o.config.empty()) cfg = load_config(o.config);
  if (!o.design.empty()) cfg.design_path = o.design;
  if (!o.stimulus.empty()) cfg.stimulus_path = o.stimulus;
  if (!o.obs.empty()) cfg.observation = split_names(o.obs);
  if (!o.target.empty()) cfg.target_spec = o.target;
  if (!o.mode.empty()) cfg.mode = parse_mode(o.mode);
  if (!o.semantics.empty()) cfg.semantics = parse_semantics(o.semantics);
  if (o.memory_rows == "whole") cfg.memory_rows = MemoryRowPolicy::WholeSignal;
  else if (o.memory_rows == "read") cfg.memory_rows = MemoryRowPolicy::ReadAddresses;
  else if (!o.memory_rows.empty()) throw Error(ErrorKind::ConfigError, "--memory-rows must be 'whole' or 'read'");
  if (o.workers) cfg.workers = o.workers;
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (cfg.design_path.empty()) throw Error(ErrorKind::ConfigError, "no design given (use --design or --config)");
  cfg.validate();
  return cfg;
}

// Emits `text` to <out>/<name> when an output directory is set, else to stdout.
void emit(const CampaignConfig& cfg, const std::string& name, const std::string& text) {
  if (cfg.out_dir.empty()) {
    std::cout << text;
  } else {
    write_text_file(cfg.out_dir / name, text);
  }
}

ElaboratedDesign load(const CampaignConfig& cfg) { return load_design(read_text_file(cfg.design_path)); }

int cmd_parse(const std::string& path, bool dump) {
  ParseResult r = parse_design(read_text_file(path));
  if (!r.ok()) {
    for (const auto& d : r.diagnostics) std::cerr << format_diagnostic(path, d) << '\n';
    return exit_code(r.diagnostics.empty() ? ErrorKind::SyntaxError : r.diagnostics.front().kind);
  }
  ElaboratedDesign d = elaborate(std::move(*r.design));
  std::cout << (dump ? dump_design(d) : pretty_print(d));
  return 0;
}

int cmd_slice(const Overrides& o, const std::string& graph_path) {
  CampaignConfig cfg = build_config(o);
  ElaboratedDesign d = load(cfg);
  auto obs = resolve_observation(d, cfg.observation);
  Pdg pdg = build_pdg(d);
  StaticSlice slice = static_slice(pdg, d, obs);
  if (!graph_path.empty()) write_text_file(graph_path, format_edge_list(pdg));
  std::cout << format_slice(d, slice);
  return 0;
}

int cmd_golden(const Overrides& o) {
  CampaignConfig cfg = build_config(o);
  PreparedDesign p = prepare(cfg);
  emit(cfg, "golden.csv", format_golden_csv(p.design, p.golden.golden));
  if (!cfg.out_dir.empty()) write_text_file(cfg.out_dir / "coverage.txt", format_coverage_rle(p.golden.coverage));
  return 0;
}

int cmd_faults(const Overrides& o) {
  CampaignConfig cfg = build_config(o);
  PreparedDesign p = prepare(cfg);
  FaultList list = p.fault_list(cfg.prune_options());
  emit(cfg, "faults.csv", format_fault_csv(p.design, list));
  if (!cfg.out_dir.empty()) {
    std::cout << list.faults.size() << " of " << list.universe_size << " faults -> "
              << (cfg.out_dir / "faults.csv").string() << '\n';
  }
  return 0;
}

int cmd_run(const Overrides& o, const std::string& format) {
  CampaignConfig cfg = build_config(o);
  PreparedDesign p = prepare(cfg);
  PipelineResult r = run_prepared(p, cfg.prune_options(), cfg.workers);
  if (!cfg.out_dir.empty()) {
    auto results = cfg.out_dir / "results.csv";
    write_text_file(cfg.out_dir / "faults.csv", format_fault_csv(p.design, r.faults));
    write_text_file(results, format_results_csv(p.design, r.campaign));
    r.report.results_path = results.string();
    write_text_file(cfg.out_dir / "report.txt", emit_report(r.report, ReportFormat::Structured));
  }
  std::cout << emit_report(r.report, format == "structured" ? ReportFormat::Structured : ReportFormat::Text);
  return 0;
}

int cmd_oracle(const Overrides& o) {
  CampaignConfig cfg = build_config(o);
  PreparedDesign p = prepare(cfg);
  OracleComparison c = compare_with_oracle(p, cfg.prune_options(), cfg.workers);
  std::string text = format_oracle(p.design, c);
  std::cout << text;
  if (!cfg.out_dir.empty()) write_text_file(cfg.out_dir / "oracle.txt", text);
  return c.verdict() ? 0 : 1;
}

int cmd_gen(std::uint64_t seed, const GeneratorParams& params, const std::string& out) {
  GeneratedDesign g = generate_random_design(seed, params);
  if (out.empty()) {
    std::cout << g.mrtl;
    return 0;
  }
  std::filesystem::path dir = out;
  write_text_file(dir / (g.name + ".mrtl"), g.mrtl);
  write_text_file(dir / (g.name + ".csv"), g.stimulus_csv);
  std::string obs;
  for (const auto& n : g.observation) obs += (obs.empty() ? "" : ",") + n;
  write_text_file(dir / (g.name + ".cfg"), "design = " + g.name + ".mrtl\nstimulus = " + g.name +
                                               ".csv\nobservation = " + obs + "\n");
  std::cout << (dir / (g.name + ".cfg")).string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic-slice fault injection for MiniRTL designs"};
  app.require_subcommand(1);

  Overrides o;
  std::string parse_path;
  bool dump = false;
  auto* parse = app.add_subcommand("parse", "parse and elaborate a design, print it canonically");
  parse->add_option("design", parse_path, "MiniRTL source")->required();
  parse->add_flag("--dump", dump, "list statements with def/use sets instead");

  std::string graph_path;
  auto* slice = app.add_subcommand("slice", "print the static backward slice");
  add_common(slice, o, false);
  slice->add_option("--graph", graph_path, "also write the dependence edge list here");

  auto* golden = app.add_subcommand("golden", "run the fault-free simulation");
  add_common(golden, o, true);
  golden->add_option("--out", o.out, "output directory");

  auto* faults = app.add_subcommand("faults", "write the pruned fault list");
  add_common(faults, o, true);
  add_fault_options(faults, o);

  std::string format = "text";
  auto* run = app.add_subcommand("run", "prune, inject and report");
  add_common(run, o, true);
  add_fault_options(run, o);
  run->add_option("--format", format, "text | structured")->check(CLI::IsMember({"text", "structured"}));

  auto* oracle = app.add_subcommand("oracle", "compare a pruned campaign with the exhaustive one");
  add_common(oracle, o, true);
  add_fault_options(oracle, o);

  std::uint64_t gen_seed = 0;
  GeneratorParams params;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "emit a random design with stimulus");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--max-regs", params.max_regs, "storage signals (0..8)");
  gen->add_option("--max-stmts", params.max_stmts, "statement budget (1..64)");
  gen->add_option("--max-reg-bits", params.max_reg_bits, "stored bits (1..64)");
  gen->add_option("--cycles", params.cycles, "stimulus rows (1..256)");
  gen->add_flag("--memory", params.memory, "include a small memory");
  gen->add_option("--out", gen_out, "write <name>.mrtl/.csv/.cfg here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code(ErrorKind::ConfigError);
  }

  try {
    if (*parse) return cmd_parse(parse_path, dump);
    if (*slice) return cmd_slice(o, graph_path);
    if (*golden) return cmd_golden(o);
    if (*faults) return cmd_faults(o);
    if (*run) return cmd_run(o, format);
    if (*oracle) return cmd_oracle(o);
    if (*gen) return cmd_gen(gen_seed, params, gen_out);
  } catch (const Error& e) {
    if (e.loc()) {
      std::string file = parse_path;
      if (file.empty()) {
        try {
          file = build_config(o).design_path.string();
        } catch (const Error&) {
          file = o.design;
        }
      }
      std::cerr << format_diagnostic(file, {*e.loc(), e.kind(), e.what()}) << '\n';
    } else {
      std::cerr << "slicefi: error: " << e.what() << '\n';
    }
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "slicefi: error: " << e.what() << '\n';
    return exit_code(ErrorKind::InternalInvariant);
  }
  return 0;
}
