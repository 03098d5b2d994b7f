// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

#include "helpers.hpp"

using namespace slicefi;

namespace {

// Tolerances.
constexpr std::size_t kCorpusSize = 200;
constexpr std::size_t kSliceCorpusSize = 100;
constexpr std::size_t kAllowedViolations = 0;
constexpr double kCorpusSecondsLimit = 120.0;
constexpr double kChopperMaxDynOverStatic = 0.70;
constexpr double kSpiMaxDynOverUniverse = 0.05;
constexpr double kTimingNoise = 0.10;
constexpr double kSpiMinSpeedup = 2.0;
constexpr int kTimingRepeats = 5;
constexpr unsigned kParallelWorkers = 4;
constexpr std::size_t kParallelCorpusSize = 50;

using Clock = std::chrono::steady_clock;

struct Line {
  bool pass;
  std::string name;
  std::string detail;
};

std::vector<Line> results;

void report(bool pass, const std::string& name, const std::string& detail) {
  results.push_back({pass, name, detail});
  std::cout << (pass ? "PASS " : "FAIL ") << name << " | " << detail << std::endl;
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

PreparedDesign benchmark(const std::string& name, const std::vector<std::string>& obs) {
  return prepare_from_text(testing::bench_file(name + ".mrtl"), testing::bench_file(name + ".csv"), obs);
}

PruneOptions options(PruneMode mode, FaultSemantics sem, const std::string& target = "all") {
  PruneOptions o;
  o.mode = mode;
  o.semantics = sem;
  o.target_spec = target;
  return o;
}

// ---- criteria 1 and 2 ----

void corpus_oracle() {
  auto start = Clock::now();
  std::size_t violations = 0, incomplete = 0, pruned_total = 0, universe_total = 0, campaigns = 0;
  std::string first_failure;
  for (std::uint64_t seed = 0; seed < kCorpusSize; ++seed) {
    PreparedDesign p = testing::corpus_design(seed);
    for (auto [mode, sem] : {std::pair{PruneMode::DynamicPrune, FaultSemantics::Transient},
                             std::pair{PruneMode::DynamicLivePrune, FaultSemantics::Persistent}}) {
      OracleComparison c = compare_with_oracle(p, options(mode, sem), 1);
      ++campaigns;
      violations += c.violations.size();
      incomplete += c.complete ? 0 : 1;
      pruned_total += c.pruned_injected;
      universe_total += c.exhaustive_injected;
      if (!c.verdict() && first_failure.empty()) {
        first_failure = " first failure: seed " + std::to_string(seed) + " " + std::string(to_string(mode));
      }
    }
  }
  double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  report(violations <= kAllowedViolations && seconds < kCorpusSecondsLimit, "1 pruning soundness",
         std::to_string(kCorpusSize) + " designs, " + std::to_string(campaigns) + " campaigns, violations " +
             std::to_string(violations) + " (allowed " + std::to_string(kAllowedViolations) + "), kept " +
             std::to_string(pruned_total) + "/" + std::to_string(universe_total) + " faults, " + fixed(seconds, 1) +
             "s (limit " + fixed(kCorpusSecondsLimit, 0) + "s)" + first_failure);
  report(incomplete == 0, "2 detection-set completeness",
         std::to_string(campaigns - incomplete) + "/" + std::to_string(campaigns) +
             " pruned campaigns detect exactly the exhaustive detected set");
}

// ---- criterion 3 ----

void slice_oracle() {
  std::size_t mismatches = 0, containment = 0, cycles = 0;
  for (std::uint64_t seed = 0; seed < kCorpusSize; ++seed) {
    PreparedDesign p = testing::corpus_design(seed);
    if (seed < kSliceCorpusSize && p.slice.statements != testing::brute_force_slice(p.design, p.observation)) {
      ++mismatches;
    }
    for (std::size_t c = 0; c < p.n_cycles(); ++c) {
      ++cycles;
      const auto& dyn = p.dynamic.slices[c];
      const auto& exec = p.golden.coverage.executed[c];
      bool in_static = std::includes(p.slice.statements.begin(), p.slice.statements.end(), dyn.begin(), dyn.end());
      bool in_exec = std::includes(exec.begin(), exec.end(), dyn.begin(), dyn.end());
      if (!in_static || !in_exec) ++containment;
    }
  }
  report(mismatches == 0 && containment == 0, "3 slice oracle equivalence",
         "static slice vs brute-force closure: " + std::to_string(mismatches) + " mismatches on " +
             std::to_string(kSliceCorpusSize) + " designs; dynamic slice outside static or executed in " +
             std::to_string(containment) + " of " + std::to_string(cycles) + " cycles");
}

// ---- criterion 4 ----

void pruning_magnitude() {
  PreparedDesign chop = benchmark("chopper_like", {"tar_f"});
  std::size_t chop_static = chop.fault_list(options(PruneMode::StaticPrune, FaultSemantics::Transient)).faults.size();
  std::size_t chop_dyn = chop.fault_list(options(PruneMode::DynamicPrune, FaultSemantics::Transient)).faults.size();
  double chop_ratio = static_cast<double>(chop_dyn) / static_cast<double>(chop_static);

  PreparedDesign spi = benchmark("spi_like", {"dat_o"});
  FaultList spi_dyn = spi.fault_list(options(PruneMode::DynamicPrune, FaultSemantics::Transient, "mem"));
  double spi_ratio = static_cast<double>(spi_dyn.faults.size()) / static_cast<double>(spi_dyn.universe_size);

  report(chop_ratio <= kChopperMaxDynOverStatic && spi_ratio <= kSpiMaxDynOverUniverse, "4 pruning magnitude",
         "chopper_like Dyn/Static " + std::to_string(chop_dyn) + "/" + std::to_string(chop_static) + " = " +
             fixed(chop_ratio) + " (<= " + fixed(kChopperMaxDynOverStatic, 2) + "); spi_like mem Dyn/universe " +
             std::to_string(spi_dyn.faults.size()) + "/" + std::to_string(spi_dyn.universe_size) + " = " +
             fixed(spi_ratio, 4) + " (<= " + fixed(kSpiMaxDynOverUniverse, 2) + ")");
}

// ---- criterion 5 ----

// Modes are interleaved within each repeat so that machine drift hits all three alike.
std::array<double, 3> best_walls(const PreparedDesign& p, const std::array<PruneOptions, 3>& modes) {
  std::array<double, 3> best{1e300, 1e300, 1e300};
  for (int i = 0; i < kTimingRepeats; ++i) {
    for (std::size_t m = 0; m < modes.size(); ++m) {
      best[m] = std::min(best[m], run_prepared(p, modes[m], 1).campaign.wall_seconds);
    }
  }
  return best;
}

void speedup() {
  bool ok = true;
  std::string detail;
  double spi_speedup = 0;
  for (auto [name, obs, target] : {std::tuple{"chopper_like", "tar_f", "all"}, std::tuple{"spi_like", "dat_o", "mem"}}) {
    PreparedDesign p = benchmark(name, {obs});
    auto [exh, st, dyn] = best_walls(p, {options(PruneMode::Exhaustive, FaultSemantics::Transient, target),
                                         options(PruneMode::StaticPrune, FaultSemantics::Transient, target),
                                         options(PruneMode::DynamicPrune, FaultSemantics::Transient, target)});
    bool ordered = st <= exh * (1 + kTimingNoise) && dyn <= st * (1 + kTimingNoise);
    ok = ok && ordered;
    if (std::string(name) == "spi_like") spi_speedup = st / std::max(dyn, 1e-9);
    detail += std::string(name) + " wall Exh " + fixed(exh, 4) + "s >= Static " + fixed(st, 4) + "s >= Dyn " +
              fixed(dyn, 4) + "s" + (ordered ? "" : " (order violated)") + "; ";
  }
  ok = ok && spi_speedup >= kSpiMinSpeedup;
  detail += "spi_like Static/Dyn speed-up " + fixed(spi_speedup, 1) + "x (>= " + fixed(kSpiMinSpeedup, 1) +
            "x); noise " + fixed(kTimingNoise * 100, 0) + "%, best of " + std::to_string(kTimingRepeats);
  report(ok, "5 speed-up direction", detail);
}

// ---- criterion 6 ----

bool timing_line(const std::string& line) {
  for (const char* prefix : {"cpu_seconds", "wall_seconds", "Total CPU time", "Wall time"}) {
    if (line.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

std::string without_timing(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!timing_line(line)) out += line + '\n';
  }
  return out;
}

// Concatenated stdout, stderr, exit code and every file the command wrote.
std::string run_cli(const std::string& args, const std::filesystem::path& dir) {
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::string cmd = std::string(SLICEFI_CLI) + " " + args + " > " + (dir / "stdout").string() + " 2> " +
                    (dir / "stderr").string();
  int rc = std::system(cmd.c_str());
  std::string out = "rc " + std::to_string(rc) + "\n";
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::string text = read_text_file(f);
    // paths embedded in reports name the run directory
    for (auto pos = text.find(dir.string()); pos != std::string::npos; pos = text.find(dir.string())) {
      text.replace(pos, dir.string().size(), "<dir>");
    }
    out += "== " + std::filesystem::relative(f, dir).string() + "\n" + without_timing(text);
  }
  return out;
}

void cli_determinism() {
  auto root = std::filesystem::temp_directory_path() / ("slicefi_accept_" + std::to_string(::getpid()));
  std::string data = SLICEFI_DATA_DIR;
  std::string bench = SLICEFI_BENCH_DIR;
  std::string toy = "--config " + data + "/toy.cfg";
  std::string chop = "--config " + bench + "/chopper_like.cfg";
  std::vector<std::pair<std::string, std::string>> commands = {
      {"parse", "parse " + bench + "/spi_like.mrtl"},
      {"parse --dump", "parse --dump " + data + "/toy.mrtl"},
      {"parse error", "parse " + data + "/toy.csv"},
      {"slice", "slice " + toy + " --graph OUT/edges.txt"},
      {"golden", "golden " + chop + " --out OUT"},
      {"faults", "faults " + chop + " --mode DynamicLivePrune --out OUT"},
      {"run", "run " + chop + " --out OUT"},
      {"run structured", "run " + toy + " --mode StaticPrune --format structured --workers 2"},
      {"oracle", "oracle " + toy + " --out OUT"},
      {"gen", "gen --seed 5 --memory --out OUT"},
  };
  std::size_t identical = 0;
  std::string differing;
  for (const auto& [label, args] : commands) {
    std::string a, b;
    for (int run = 0; run < 2; ++run) {
      auto dir = root / ("run" + std::to_string(run));
      std::string expanded = args;
      for (auto pos = expanded.find("OUT"); pos != std::string::npos; pos = expanded.find("OUT")) {
        expanded.replace(pos, 3, dir.string());
      }
      (run == 0 ? a : b) = run_cli(expanded, dir);
    }
    if (a == b) ++identical;
    else differing += " " + label;
  }
  std::filesystem::remove_all(root);
  report(identical == commands.size(), "6 determinism",
         std::to_string(identical) + "/" + std::to_string(commands.size()) +
             " CLI invocations byte-identical across two runs (timing lines excluded)" +
             (differing.empty() ? "" : "; differing:" + differing));
}

// ---- criterion 7 ----

void parallel_invariance() {
  std::size_t campaigns = 0, mismatches = 0;
  auto compare = [&](const PreparedDesign& p, const PruneOptions& o) {
    FaultList l = p.fault_list(o);
    if (l.faults.empty()) return;
    CampaignResult one = run_campaign(p.design, p.stimulus, p.observation, l, p.golden.golden, 1);
    CampaignResult many = run_campaign(p.design, p.stimulus, p.observation, l, p.golden.golden, kParallelWorkers);
    ++campaigns;
    bool same = one.outcomes == many.outcomes && one.injected == many.injected && one.detected == many.detected &&
                one.undetected == many.undetected;
    if (!same) ++mismatches;
  };
  compare(benchmark("chopper_like", {"tar_f"}), options(PruneMode::Exhaustive, FaultSemantics::Transient));
  compare(benchmark("spi_like", {"dat_o"}), options(PruneMode::DynamicLivePrune, FaultSemantics::Persistent, "mem"));
  for (std::uint64_t seed = 0; seed < kParallelCorpusSize; ++seed) {
    compare(testing::corpus_design(seed), options(PruneMode::Exhaustive, FaultSemantics::Persistent));
  }
  report(mismatches == 0, "7 parallel invariance",
         std::to_string(campaigns - mismatches) + "/" + std::to_string(campaigns) +
             " campaigns give identical totals and per-fault outcomes with workers 1 and " +
             std::to_string(kParallelWorkers));
}

}  // namespace

int main() {
  std::vector<std::function<void()>> criteria = {corpus_oracle, slice_oracle, pruning_magnitude, speedup,
                                                 cli_determinism, parallel_invariance};
  for (auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      report(false, "criterion aborted", e.what());
    }
  }
  std::size_t failed = std::count_if(results.begin(), results.end(), [](const Line& l) { return !l.pass; });
  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
