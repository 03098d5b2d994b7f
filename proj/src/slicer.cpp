#include "slicefi/slicer.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <sstream>

#include "text_util.hpp"

namespace slicefi {

namespace {

bool contains_sorted(const std::vector<StatementId>& v, StatementId id) {
  return std::binary_search(v.begin(), v.end(), id);
}

// Per-cycle view of which stored bits in-slice logic can observe, and which
// bits the golden run overwrote.
class Activity {
 public:
  Activity(const ElaboratedDesign& d, const PruneInputs& in, std::size_t n_cycles, MemoryRowPolicy policy)
      : d_(d), n_(n_cycles), policy_(in.access ? policy : MemoryRowPolicy::WholeSignal) {
    const std::size_t nsig = d.signals.size();
    used_.assign(n_ * nsig, false);
    for (std::size_t t = 0; t < n_; ++t) {
      for (StatementId s : in.dynamic->slices[t]) {
        for (SignalId u : d.defuse[s].use) used_[t * nsig + u] = true;
      }
    }
    observed_.assign(nsig, false);
    for (SignalId s : in.observation) observed_[s] = true;
    if (!in.access) return;
    rows_read_.resize(n_);
    rows_sampled_.resize(n_);
    writes_.resize(n_);
    for (std::size_t t = 0; t < n_; ++t) {
      const auto& slice = in.dynamic->slices[t];
      for (const auto& r : in.access->reads[t]) {
        if (contains_sorted(slice, r.statement)) rows_read_[t].emplace_back(r.memory, r.row);
      }
      for (const auto& r : in.access->sample_reads[t]) {
        if (contains_sorted(slice, r.statement)) rows_sampled_[t].emplace_back(r.memory, r.row);
      }
      writes_[t] = in.access->writes[t];
    }
  }

  // Could an in-slice statement read this stored word before the commit of t?
  bool read_before_commit(SignalId sig, std::uint32_t row, std::size_t t) const {
    if (d_.signal(sig).kind == SignalKind::Memory && policy_ == MemoryRowPolicy::ReadAddresses) {
      return has_row(rows_read_[t], sig, row);
    }
    return used_[t * d_.signals.size() + sig];
  }

  // Could the end-of-cycle sample at t see this stored word?
  bool read_at_sample(SignalId sig, std::uint32_t row, std::size_t t) const {
    if (d_.signal(sig).kind == SignalKind::Memory) {
      // Whole-signal handling already counts the assign's pre-commit read.
      return policy_ == MemoryRowPolicy::ReadAddresses && has_row(rows_sampled_[t], sig, row);
    }
    return observed_[sig];
  }

  bool overwritten(SignalId sig, std::uint32_t row, std::uint32_t bit, std::size_t t) const {
    if (writes_.empty()) return false;
    for (const auto& w : writes_[t]) {
      if (w.signal == sig && w.row == row && ((w.mask >> bit) & 1)) return true;
    }
    return false;
  }

 private:
  static bool has_row(const std::vector<std::pair<SignalId, std::uint32_t>>& rows, SignalId sig, std::uint32_t row) {
    return std::find(rows.begin(), rows.end(), std::pair{sig, row}) != rows.end();
  }

  const ElaboratedDesign& d_;
  std::size_t n_;
  MemoryRowPolicy policy_;
  std::vector<bool> used_;  // [cycle * nsig + signal]
  std::vector<bool> observed_;
  std::vector<std::vector<std::pair<SignalId, std::uint32_t>>> rows_read_;
  std::vector<std::vector<std::pair<SignalId, std::uint32_t>>> rows_sampled_;
  std::vector<std::vector<CommittedWrite>> writes_;
};

}  // namespace

std::string_view to_string(FaultSemantics s) { return s == FaultSemantics::Transient ? "Transient" : "Persistent"; }

std::string_view to_string(PruneMode m) {
  switch (m) {
    case PruneMode::Exhaustive: return "Exhaustive";
    case PruneMode::StaticPrune: return "StaticPrune";
    case PruneMode::DynamicPrune: return "DynamicPrune";
    case PruneMode::DynamicLivePrune: return "DynamicLivePrune";
  }
  return "?";
}

FaultSemantics parse_semantics(std::string_view text) {
  if (text == "Transient" || text == "transient") return FaultSemantics::Transient;
  if (text == "Persistent" || text == "persistent") return FaultSemantics::Persistent;
  throw Error(ErrorKind::ConfigError, "unknown fault semantics '" + std::string(text) + "'");
}

PruneMode parse_mode(std::string_view text) {
  for (auto m : {PruneMode::Exhaustive, PruneMode::StaticPrune, PruneMode::DynamicPrune, PruneMode::DynamicLivePrune}) {
    if (text == to_string(m)) return m;
  }
  throw Error(ErrorKind::ConfigError, "unknown prune mode '" + std::string(text) + "'");
}

DynamicSliceSeries dynamic_slice(const StaticSlice& slice, const CoverageTrace& coverage) {
  if (coverage.n_cycles() == 0) throw Error(ErrorKind::EmptyStimulus, "coverage trace has no cycles");
  DynamicSliceSeries series;
  series.slices.reserve(coverage.n_cycles());
  for (const auto& executed : coverage.executed) {
    std::vector<StatementId> cut;
    std::set_intersection(slice.statements.begin(), slice.statements.end(), executed.begin(), executed.end(),
                          std::back_inserter(cut));
    series.slices.push_back(std::move(cut));
  }
  return series;
}

std::vector<SignalId> select_targets(const ElaboratedDesign& d, std::string_view target_spec) {
  std::vector<SignalId> out;
  std::string spec(detail::trim(target_spec));
  std::vector<std::string> patterns;
  for (const auto& p : detail::split(spec, ',')) {
    auto t = detail::trim(p);
    if (!t.empty()) patterns.emplace_back(t);
  }
  for (const auto& s : d.signals) {
    if (!s.is_storage()) continue;
    bool match = spec == "all";
    for (const auto& p : patterns) {
      if (!match && fnmatch(p.c_str(), s.name.c_str(), 0) == 0) match = true;
    }
    if (match) out.push_back(s.id);
  }
  if (out.empty()) {
    throw Error(ErrorKind::NoMatchingTargets, "fault target '" + spec + "' matches no register or memory");
  }
  return out;
}

FaultList fault_universe(const ElaboratedDesign& d, std::size_t n_cycles, std::string_view target_spec,
                         FaultSemantics semantics) {
  FaultList list;
  list.mode = PruneMode::Exhaustive;
  list.semantics = semantics;
  for (SignalId sig : select_targets(d, target_spec)) {
    const SignalDecl& decl = d.signal(sig);
    for (std::uint32_t row = 0; row < decl.rows(); ++row) {
      for (std::uint32_t bit = 0; bit < decl.width; ++bit) {
        for (std::uint32_t c = 0; c < n_cycles; ++c) list.faults.push_back({sig, row, bit, c, semantics});
      }
    }
  }
  list.universe_size = list.faults.size();
  return list;
}

FaultList generate_fault_list(const ElaboratedDesign& d, const PruneInputs& in, std::size_t n_cycles,
                              const PruneOptions& options) {
  FaultList universe = fault_universe(d, n_cycles, options.target_spec, options.semantics);
  FaultList out;
  out.mode = options.mode;
  out.semantics = options.semantics;
  out.universe_size = universe.universe_size;

  switch (options.mode) {
    case PruneMode::Exhaustive:
      out.faults = std::move(universe.faults);
      return out;
    case PruneMode::StaticPrune:
      for (const auto& f : universe.faults) {
        if (in.static_slice.has_register(f.target)) out.faults.push_back(f);
      }
      return out;
    case PruneMode::DynamicPrune:
    case PruneMode::DynamicLivePrune:
      break;
  }
  if (!in.dynamic) {
    throw Error(ErrorKind::ModeRequiresDynamicSlice,
                std::string(to_string(options.mode)) + " needs the per-cycle dynamic slice");
  }
  if (in.dynamic->n_cycles() < n_cycles) {
    throw Error(ErrorKind::TraceMismatchHorizon, "dynamic slice covers fewer cycles than the fault horizon");
  }
  Activity act(d, in, n_cycles, options.memory_rows);

  // Universe faults are grouped by (target, row, bit) with cycles ascending.
  for (std::size_t i = 0; i < universe.faults.size(); i += n_cycles) {
    const FaultDescriptor& first = universe.faults[i];
    std::vector<bool> keep(n_cycles, false);
    if (options.mode == PruneMode::DynamicPrune) {
      for (std::size_t t = 0; t < n_cycles; ++t) keep[t] = act.read_before_commit(first.target, first.row, t);
    } else {
      // live(t) = read(t) || (!overwritten(t) && (sampled(t) || live(t+1)))
      bool live_next = false;
      for (std::size_t t = n_cycles; t-- > 0;) {
        bool live = act.read_before_commit(first.target, first.row, t) ||
                    (!act.overwritten(first.target, first.row, first.bit, t) &&
                     (act.read_at_sample(first.target, first.row, t) || live_next));
        keep[t] = live;
        live_next = live;
      }
    }
    for (std::size_t t = 0; t < n_cycles; ++t) {
      if (keep[t]) out.faults.push_back(universe.faults[i + t]);
    }
  }
  return out;
}

std::string format_fault_csv(const ElaboratedDesign& d, const FaultList& list) {
  std::ostringstream os;
  os << "signal,row,bit,cycle,mode,semantics\n";
  for (const auto& f : list.faults) {
    os << d.signal(f.target).name << ',' << f.row << ',' << f.bit << ',' << f.cycle << ',' << to_string(list.mode)
       << ',' << to_string(f.semantics) << '\n';
  }
  return os.str();
}

FaultList parse_fault_csv(const ElaboratedDesign& d, std::string_view text) {
  FaultList list;
  auto lines = detail::split_lines(text);
  if (lines.empty() || detail::trim(lines[0]) != "signal,row,bit,cycle,mode,semantics") {
    throw Error(ErrorKind::ConfigError, "fault list must start with 'signal,row,bit,cycle,mode,semantics'");
  }
  bool first = true;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (detail::trim(lines[ln]).empty()) continue;
    auto f = detail::split(lines[ln], ',');
    auto where = "fault list line " + std::to_string(ln + 1);
    if (f.size() != 6) throw Error(ErrorKind::ConfigError, where + ": expected 6 fields");
    auto sig = d.find_signal(detail::trim(f[0]));
    if (!sig || !d.signal(*sig).is_storage()) {
      throw Error(ErrorKind::ConfigError, where + ": '" + f[0] + "' is not a register or memory");
    }
    FaultDescriptor fd;
    fd.target = *sig;
    try {
      fd.row = static_cast<std::uint32_t>(std::stoul(f[1]));
      fd.bit = static_cast<std::uint32_t>(std::stoul(f[2]));
      fd.cycle = static_cast<std::uint32_t>(std::stoul(f[3]));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ConfigError, where + ": row, bit and cycle must be integers");
    }
    PruneMode mode = parse_mode(detail::trim(f[4]));
    fd.semantics = parse_semantics(detail::trim(f[5]));
    if (first) {
      list.mode = mode;
      list.semantics = fd.semantics;
      first = false;
    }
    list.faults.push_back(fd);
  }
  std::sort(list.faults.begin(), list.faults.end());
  list.faults.erase(std::unique(list.faults.begin(), list.faults.end(),
                                [](const auto& a, const auto& b) { return a.key() == b.key(); }),
                    list.faults.end());
  return list;
}

}  // namespace slicefi
