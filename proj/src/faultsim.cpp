#include "slicefi/faultsim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace slicefi {

namespace {

void check_horizon(const Stimulus& stimulus, std::span<const SignalId> observation, const GoldenTrace& golden) {
  if (golden.n_cycles() != stimulus.n_cycles()) {
    throw Error(ErrorKind::TraceMismatchHorizon, "golden trace has " + std::to_string(golden.n_cycles()) +
                                                     " cycles, stimulus has " + std::to_string(stimulus.n_cycles()));
  }
  if (!std::equal(observation.begin(), observation.end(), golden.observation.begin(), golden.observation.end())) {
    throw Error(ErrorKind::TraceMismatchHorizon, "golden trace was recorded for a different observation list");
  }
}

void check_fault(const ElaboratedDesign& d, const Stimulus& stimulus, const FaultDescriptor& f) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::FaultOutOfBounds, "fault (" + std::to_string(f.target) + ", " + std::to_string(f.row) +
                                                 ", " + std::to_string(f.bit) + ", " + std::to_string(f.cycle) +
                                                 "): " + why);
  };
  if (f.target >= d.signals.size()) fail("no such signal");
  const SignalDecl& s = d.signal(f.target);
  if (!s.is_storage()) fail("'" + s.name + "' is not a register or memory");
  if (f.row >= s.rows()) fail("row outside '" + s.name + "'");
  if (f.bit >= s.width) fail("bit outside '" + s.name + "'");
  if (f.cycle >= stimulus.n_cycles()) fail("cycle beyond the stimulus horizon");
}

FaultOutcome simulate_fault(const ElaboratedDesign& d, const Stimulus& stimulus, std::span<const SignalId> observation,
                            const FaultDescriptor& f, const GoldenTrace& golden) {
  SimState st(d);
  CycleOptions fast;
  fast.policy = IndexPolicy::Lenient;
  fast.record = false;
  for (std::size_t c = 0; c < f.cycle; ++c) {
    fast.cycle = c;
    evaluate_cycle(d, st, stimulus.rows[c], fast);
  }

  const Word bit = Word{1} << f.bit;
  Word& word = st.storage(d, f.target, f.row);
  const Word original = word & bit;
  word ^= bit;

  CycleOptions inject = fast;
  inject.cycle = f.cycle;
  inject.record = true;
  CycleResult r = evaluate_cycle(d, st, stimulus.rows[f.cycle], inject);
  if (f.semantics == FaultSemantics::Transient) {
    bool overwritten = std::any_of(r.writes.begin(), r.writes.end(), [&](const CommittedWrite& w) {
      return w.signal == f.target && w.row == f.row && (w.mask & bit) != 0;
    });
    if (!overwritten) {
      Word& w = st.storage(d, f.target, f.row);
      w = (w & ~bit) | original;
    }
  }

  for (std::size_t c = f.cycle;; ) {
    auto sample = sample_observation(d, st, observation, IndexPolicy::Lenient, c);
    if (sample != golden.values[c]) {
      FaultOutcome out;
      out.classification = Classification::Detected;
      out.detection_cycle = static_cast<std::uint32_t>(c);
      out.latency = static_cast<std::uint32_t>(c - f.cycle);
      return out;
    }
    if (++c == stimulus.n_cycles()) break;
    fast.cycle = c;
    evaluate_cycle(d, st, stimulus.rows[c], fast);
  }
  return {};
}

}  // namespace

std::string_view to_string(Classification c) { return c == Classification::Detected ? "Detected" : "Undetected"; }

FaultOutcome inject_and_simulate(const ElaboratedDesign& design, const Stimulus& stimulus,
                                 std::span<const SignalId> observation, const FaultDescriptor& fault,
                                 const GoldenTrace& golden) {
  check_horizon(stimulus, observation, golden);
  check_fault(design, stimulus, fault);
  return simulate_fault(design, stimulus, observation, fault, golden);
}

CampaignResult run_campaign(const ElaboratedDesign& design, const Stimulus& stimulus,
                            std::span<const SignalId> observation, const FaultList& faults, const GoldenTrace& golden,
                            unsigned workers) {
  using Clock = std::chrono::steady_clock;
  if (faults.faults.empty()) throw Error(ErrorKind::EmptyFaultList, "fault list is empty");
  check_horizon(stimulus, observation, golden);
  for (const auto& f : faults.faults) check_fault(design, stimulus, f);

  CampaignResult result;
  result.faults = faults.faults;
  result.outcomes.resize(faults.faults.size());
  std::vector<double> seconds(faults.faults.size(), 0.0);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= faults.faults.size()) return;
      try {
        auto start = Clock::now();
        result.outcomes[i] = simulate_fault(design, stimulus, observation, faults.faults[i], golden);
        seconds[i] = std::chrono::duration<double>(Clock::now() - start).count();
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(faults.faults.size());
        return;
      }
    }
  };

  auto wall_start = Clock::now();
  workers = std::max(1u, workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  result.wall_seconds = std::chrono::duration<double>(Clock::now() - wall_start).count();
  if (error) std::rethrow_exception(error);

  result.injected = result.outcomes.size();
  for (const auto& o : result.outcomes) {
    if (o.detected()) ++result.detected;
  }
  result.undetected = result.injected - result.detected;
  for (double s : seconds) result.cpu_seconds += s;
  return result;
}

std::string format_results_csv(const ElaboratedDesign& d, const CampaignResult& result) {
  std::ostringstream os;
  os << "signal,row,bit,cycle,outcome,detection_cycle,latency\n";
  for (std::size_t i = 0; i < result.faults.size(); ++i) {
    const auto& f = result.faults[i];
    const auto& o = result.outcomes[i];
    os << d.signal(f.target).name << ',' << f.row << ',' << f.bit << ',' << f.cycle << ',' << to_string(o.classification)
       << ',';
    if (o.detection_cycle) os << *o.detection_cycle;
    os << ',';
    if (o.latency) os << *o.latency;
    os << '\n';
  }
  return os.str();
}

}  // namespace slicefi
