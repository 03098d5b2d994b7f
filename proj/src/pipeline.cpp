#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "slicefi/campaign.hpp"
#include "slicefi/frontend.hpp"
#include "text_util.hpp"

namespace slicefi {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

// ---- preparation ----

std::vector<SignalId> resolve_observation(const ElaboratedDesign& d, const std::vector<std::string>& names) {
  if (names.empty()) throw Error(ErrorKind::EmptyCriterion, "observation list is empty");
  std::vector<SignalId> ids;
  for (const auto& n : names) {
    auto id = d.find_signal(n);
    if (!id) throw Error(ErrorKind::UnknownObservationSignal, "observation signal '" + n + "' is not declared");
    if (std::find(ids.begin(), ids.end(), *id) == ids.end()) ids.push_back(*id);
  }
  validate_observation(d, ids);
  return ids;
}

PreparedDesign prepare(ElaboratedDesign design, Stimulus stimulus, const std::vector<std::string>& observation) {
  PreparedDesign p{std::move(design), std::move(stimulus), {}, {}, {}, {}, {}};
  p.observation = resolve_observation(p.design, observation);
  p.pdg = build_pdg(p.design);
  p.slice = static_slice(p.pdg, p.design, p.observation);
  p.golden = simulate_golden(p.design, p.stimulus, p.observation);
  p.dynamic = dynamic_slice(p.slice, p.golden.coverage);
  return p;
}

PreparedDesign prepare_from_text(std::string_view design_text, std::string_view stimulus_text,
                                 const std::vector<std::string>& observation) {
  ElaboratedDesign d = load_design(design_text);
  Stimulus s = parse_stimulus_csv(d, stimulus_text);
  return prepare(std::move(d), std::move(s), observation);
}

PreparedDesign prepare(const CampaignConfig& config) {
  config.validate();
  if (config.design_path.empty()) throw Error(ErrorKind::ConfigError, "no design given");
  if (config.stimulus_path.empty()) throw Error(ErrorKind::ConfigError, "no stimulus given");
  std::string design_text = read_text_file(config.design_path);
  std::string stimulus_text = read_text_file(config.stimulus_path);
  return prepare_from_text(design_text, stimulus_text, config.observation);
}

FaultList PreparedDesign::fault_list(const PruneOptions& options) const {
  PruneInputs in{slice, &dynamic, &golden.access, observation};
  return generate_fault_list(design, in, n_cycles(), options);
}

// ---- reports ----

double CampaignReport::prune_ratio() const noexcept {
  return universe_size == 0 ? 0.0 : static_cast<double>(injected) / static_cast<double>(universe_size);
}

bool CampaignReport::equivalent(const CampaignReport& o) const {
  return design_name == o.design_name && mode == o.mode && semantics == o.semantics && observation == o.observation &&
         fault_target == o.fault_target && universe_size == o.universe_size && injected == o.injected &&
         detected == o.detected && undetected == o.undetected && results_path == o.results_path &&
         cpu_seconds.has_value() == o.cpu_seconds.has_value() && wall_seconds.has_value() == o.wall_seconds.has_value();
}

std::string emit_report(const CampaignReport& r, ReportFormat format) {
  if (r.injected != r.detected + r.undetected) {
    throw Error(ErrorKind::InternalInvariant, "report totals disagree: injected " + std::to_string(r.injected) +
                                                  " != detected " + std::to_string(r.detected) + " + undetected " +
                                                  std::to_string(r.undetected));
  }
  std::ostringstream os;
  if (format == ReportFormat::Text) {
    os << "Design Name | " << r.design_name << '\n'
       << "Optimization type | " << to_string(r.mode) << '\n'
       << "Fault semantics | " << to_string(r.semantics) << '\n'
       << "Observation list | " << join(r.observation, ", ") << '\n'
       << "Fault target | " << r.fault_target << '\n'
       << "Fault universe size | " << r.universe_size << '\n'
       << "Total number of injected faults | " << r.injected << '\n'
       << "Number of detected faults | " << r.detected << '\n'
       << "Number of undetected faults | " << r.undetected << '\n'
       << "Prune ratio | " << fixed(r.prune_ratio(), 3) << '\n';
    if (r.cpu_seconds) os << "Total CPU time of overall regression | " << fixed(*r.cpu_seconds, 4) << "s\n";
    if (r.wall_seconds) os << "Wall time | " << fixed(*r.wall_seconds, 4) << "s\n";
    return os.str();
  }
  os << "design = " << r.design_name << '\n'
     << "optimization_type = " << to_string(r.mode) << '\n'
     << "semantics = " << to_string(r.semantics) << '\n'
     << "observation_list = " << join(r.observation, ",") << '\n'
     << "fault_target = " << r.fault_target << '\n'
     << "universe_size = " << r.universe_size << '\n'
     << "total_injected = " << r.injected << '\n'
     << "detected = " << r.detected << '\n'
     << "undetected = " << r.undetected << '\n'
     << "prune_ratio = " << fixed(r.prune_ratio(), 6) << '\n';
  if (r.cpu_seconds) os << "cpu_seconds = " << fixed(*r.cpu_seconds, 6) << '\n';
  if (r.wall_seconds) os << "wall_seconds = " << fixed(*r.wall_seconds, 6) << '\n';
  os << "results_path = " << r.results_path << '\n';
  return os.str();
}

CampaignReport parse_structured_report(std::string_view text) {
  CampaignReport r;
  auto count = [](const std::string& key, std::string_view v) -> std::size_t {
    try {
      return std::stoull(std::string(v));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ConfigError, "report key '" + key + "' must be an integer");
    }
  };
  auto seconds = [](const std::string& key, std::string_view v) -> double {
    try {
      return std::stod(std::string(v));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ConfigError, "report key '" + key + "' must be a number");
    }
  };
  for (const auto& raw : detail::split_lines(text)) {
    auto line = detail::trim(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::ConfigError, "malformed report line: " + raw);
    std::string key(detail::trim(line.substr(0, eq)));
    auto v = detail::trim(line.substr(eq + 1));
    if (key == "design") r.design_name = v;
    else if (key == "optimization_type") r.mode = parse_mode(v);
    else if (key == "semantics") r.semantics = parse_semantics(v);
    else if (key == "observation_list") {
      r.observation.clear();
      for (const auto& n : detail::split(v, ',')) {
        if (!detail::trim(n).empty()) r.observation.emplace_back(detail::trim(n));
      }
    } else if (key == "fault_target") r.fault_target = v;
    else if (key == "universe_size") r.universe_size = count(key, v);
    else if (key == "total_injected") r.injected = count(key, v);
    else if (key == "detected") r.detected = count(key, v);
    else if (key == "undetected") r.undetected = count(key, v);
    else if (key == "prune_ratio") continue;  // derived
    else if (key == "cpu_seconds") r.cpu_seconds = seconds(key, v);
    else if (key == "wall_seconds") r.wall_seconds = seconds(key, v);
    else if (key == "results_path") r.results_path = v;
    else throw Error(ErrorKind::ConfigError, "unknown report key '" + key + "'");
  }
  return r;
}

// ---- campaigns ----

PipelineResult run_prepared(const PreparedDesign& p, const PruneOptions& options, unsigned workers) {
  PipelineResult out;
  out.faults = p.fault_list(options);
  if (!out.faults.faults.empty()) {
    out.campaign = run_campaign(p.design, p.stimulus, p.observation, out.faults, p.golden.golden, workers);
  } else {
    out.campaign.cpu_seconds = 0;
    out.campaign.wall_seconds = 0;
  }
  CampaignReport& r = out.report;
  r.design_name = p.design.name;
  r.mode = options.mode;
  r.semantics = options.semantics;
  for (SignalId id : p.observation) r.observation.push_back(p.design.signal(id).name);
  r.fault_target = options.target_spec;
  r.universe_size = out.faults.universe_size;
  r.injected = out.campaign.injected;
  r.detected = out.campaign.detected;
  r.undetected = out.campaign.undetected;
  r.cpu_seconds = out.campaign.cpu_seconds;
  r.wall_seconds = out.campaign.wall_seconds;
  return out;
}

PipelineResult run_pipeline(const CampaignConfig& config) {
  PreparedDesign p = prepare(config);
  return run_prepared(p, config.prune_options(), config.workers);
}

// ---- oracle ----

OracleComparison compare_outcomes(const FaultList& pruned, const CampaignResult& pruned_result,
                                  const CampaignResult& exhaustive) {
  using Key = decltype(FaultDescriptor{}.key());
  OracleComparison cmp;
  cmp.mode = pruned.mode;
  cmp.semantics = pruned.semantics;
  cmp.pruned_injected = pruned_result.injected;
  cmp.exhaustive_injected = exhaustive.injected;
  cmp.pruned_detected = pruned_result.detected;
  cmp.exhaustive_detected = exhaustive.detected;

  std::set<Key> kept;
  for (const auto& f : pruned.faults) kept.insert(f.key());
  std::set<Key> pruned_detected;
  for (std::size_t i = 0; i < pruned_result.faults.size(); ++i) {
    if (pruned_result.outcomes[i].detected()) pruned_detected.insert(pruned_result.faults[i].key());
  }
  std::set<Key> exhaustive_detected;
  for (std::size_t i = 0; i < exhaustive.faults.size(); ++i) {
    if (!exhaustive.outcomes[i].detected()) continue;
    const auto& f = exhaustive.faults[i];
    exhaustive_detected.insert(f.key());
    if (!kept.count(f.key())) cmp.violations.push_back(f);
    if (!pruned_detected.count(f.key())) cmp.completeness_misses.push_back(f);
  }
  cmp.complete = pruned_detected == exhaustive_detected;
  return cmp;
}

OracleComparison compare_with_oracle(const PreparedDesign& p, const PruneOptions& options, unsigned workers) {
  PipelineResult pruned = run_prepared(p, options, workers);
  PruneOptions all = options;
  all.mode = PruneMode::Exhaustive;
  PipelineResult exhaustive = run_prepared(p, all, workers);
  return compare_outcomes(pruned.faults, pruned.campaign, exhaustive.campaign);
}

OracleComparison compare_with_oracle(const CampaignConfig& config) {
  PreparedDesign p = prepare(config);
  return compare_with_oracle(p, config.prune_options(), config.workers);
}

std::string format_oracle(const ElaboratedDesign& d, const OracleComparison& c) {
  std::ostringstream os;
  auto fault = [&](const FaultDescriptor& f) {
    return d.signal(f.target).name + "," + std::to_string(f.row) + "," + std::to_string(f.bit) + "," +
           std::to_string(f.cycle);
  };
  os << "mode = " << to_string(c.mode) << '\n'
     << "semantics = " << to_string(c.semantics) << '\n'
     << "pruned_injected = " << c.pruned_injected << '\n'
     << "exhaustive_injected = " << c.exhaustive_injected << '\n'
     << "pruned_detected = " << c.pruned_detected << '\n'
     << "exhaustive_detected = " << c.exhaustive_detected << '\n'
     << "soundness_violations = " << c.violations.size() << '\n';
  for (const auto& f : c.violations) os << "  violation " << fault(f) << '\n';
  os << "completeness_misses = " << c.completeness_misses.size() << '\n';
  for (const auto& f : c.completeness_misses) os << "  miss " << fault(f) << '\n';
  os << "verdict = " << (c.verdict() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace slicefi
