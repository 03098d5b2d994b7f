#include <doctest.h>

#include <deque>

#include "helpers.hpp"

using namespace slicefi;
using testing::sig;

TEST_CASE("toy coverage and golden trace") {
  auto p = testing::toy();
  const auto& cov = p.golden.coverage;
  REQUIRE(cov.n_cycles() == 4);
  CHECK(cov.executed[0] == std::vector<StatementId>{0, 1, 3, 4, 5});
  CHECK(cov.executed[1] == std::vector<StatementId>{0, 2, 3, 4, 5});
  CHECK(cov.executed[3] == std::vector<StatementId>{0, 2, 3, 4, 5});
  // r1: 0 1 1 1, r2 <= r1 ^ r2: 0 0 1 0
  std::vector<std::vector<Word>> out{{0}, {0}, {1}, {0}};
  CHECK(p.golden.golden.values == out);
  CHECK(format_golden_csv(p.design, p.golden.golden) == "cycle,out\n0,0\n1,0\n2,1\n3,0\n");
}

TEST_CASE("evaluate_cycle commits at the end of the cycle") {
  auto p = testing::toy();
  const auto& d = p.design;
  SimState st(d);
  st.set_value(sig(d, "r1"), 1);
  st.set_value(sig(d, "r2"), 0);
  CycleResult r = evaluate_cycle(d, st, p.stimulus.rows[0]);
  CHECK(st.value(sig(d, "r1")) == 0);
  CHECK(st.value(sig(d, "r2")) == 1);  // saw r1 = 1 from the start of the cycle
  CHECK(r.executed == std::vector<StatementId>{0, 1, 3, 4, 5});
}

TEST_CASE("empty design") {
  ElaboratedDesign d = load_design("module m(clk); input clk; endmodule");
  SimState st(d);
  SimState before = st;
  CycleResult r = evaluate_cycle(d, st, std::vector<Word>{});
  CHECK(r.executed.empty());
  CHECK(st == before);
}

TEST_CASE("empty stimulus is rejected") {
  auto p = testing::toy();
  Stimulus empty{p.stimulus.inputs, {}};
  try {
    simulate_golden(p.design, empty, p.observation);
    FAIL("expected EmptyStimulus");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyStimulus);
  }
  try {
    parse_stimulus_csv(p.design, "rst,in_a\n");
    FAIL("expected EmptyStimulus");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyStimulus);
  }
}

TEST_CASE("stimulus CSV parsing") {
  auto p = testing::toy();
  const auto& d = p.design;
  Stimulus s = parse_stimulus_csv(d, "in_a, rst\n0x1,1\n0,0\n");
  REQUIRE(s.n_cycles() == 2);
  CHECK(s.inputs == d.stimulus_inputs);
  CHECK(s.rows[0] == std::vector<Word>{1, 1});  // columns reordered to rst,in_a
  CHECK(parse_stimulus_csv(d, "cycle,rst,in_a\n0,1,0\n").rows[0] == std::vector<Word>{1, 0});
  CHECK(format_stimulus_csv(d, s) == "rst,in_a\n1,1\n0,0\n");
  auto kind = [&](const char* text) {
    try {
      parse_stimulus_csv(d, text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InternalInvariant;
  };
  CHECK(kind("rst\n1\n") == ErrorKind::StimulusFormat);
  CHECK(kind("rst,in_a,bogus\n1,1,1\n") == ErrorKind::StimulusFormat);
  CHECK(kind("rst,rst,in_a\n1,1,1\n") == ErrorKind::StimulusFormat);
  CHECK(kind("rst,in_a\n1,2\n") == ErrorKind::StimulusFormat);
  CHECK(kind("rst,in_a\n1\n") == ErrorKind::StimulusFormat);
  CHECK(kind("rst,in_a\n1,x\n") == ErrorKind::StimulusFormat);
}

TEST_CASE("design without data inputs uses a cycle column") {
  ElaboratedDesign d = load_design(
      "module m(clk, o); input clk; output [1:0] o; reg [1:0] c; always @(posedge clk) c <= c + 1; assign o = c; "
      "endmodule");
  Stimulus s = parse_stimulus_csv(d, "cycle\n0\n1\n2\n");
  CHECK(s.n_cycles() == 3);
  CHECK(format_stimulus_csv(d, s) == "cycle\n0\n1\n2\n");
  std::vector<SignalId> obs{sig(d, "o")};
  GoldenRun g = simulate_golden(d, s, obs);
  CHECK(g.golden.values == std::vector<std::vector<Word>>{{1}, {2}, {3}});
}

TEST_CASE("dynamic memory index out of range") {
  ElaboratedDesign d = load_design(
      "module m(clk, a, o); input clk; input [2:0] a; output [3:0] o; reg [3:0] mem [0:4]; reg [3:0] q;\n"
      "always @(posedge clk) q <= mem[a];\nassign o = q;\nendmodule");
  std::vector<SignalId> obs{sig(d, "o")};
  Stimulus ok = parse_stimulus_csv(d, "a\n4\n");
  CHECK_NOTHROW(simulate_golden(d, ok, obs));
  Stimulus bad = parse_stimulus_csv(d, "a\n1\n7\n");
  try {
    simulate_golden(d, bad, obs);
    FAIL("expected MemoryIndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MemoryIndexOutOfRange);
    CHECK(std::string(e.what()).find("cycle 1") != std::string::npos);
  }
  SimState st(d);
  CycleOptions lenient;
  lenient.policy = IndexPolicy::Lenient;
  CHECK_NOTHROW(evaluate_cycle(d, st, bad.rows[1], lenient));
  CHECK(st.value(sig(d, "q")) == 0);
}

TEST_CASE("partial writes and last-write-wins inside a process") {
  ElaboratedDesign d = load_design(
      "module m(clk, a, o); input clk; input [3:0] a; output [3:0] o; reg [3:0] r;\n"
      "always @(posedge clk) begin r <= a; r[0] <= 0; r[3:2] <= 2'b01; end\nassign o = r;\nendmodule");
  std::vector<SignalId> obs{sig(d, "o")};
  GoldenRun g = simulate_golden(d, parse_stimulus_csv(d, "a\n15\n3\n"), obs);
  CHECK(g.golden.values == std::vector<std::vector<Word>>{{0b0110}, {0b0110}});
  REQUIRE(g.access.writes[0].size() == 3);
  CHECK(g.access.writes[0][1].mask == 0b0001);
  CHECK(g.access.writes[0][2].mask == 0b1100);
  CHECK(g.access.writes[0][2].value == 0b0100);
}

TEST_CASE("straight-line designs execute every statement every cycle") {
  ElaboratedDesign d = load_design(
      "module m(clk, a, o); input clk; input [3:0] a; output [3:0] o; reg [3:0] x, y; wire [3:0] w;\n"
      "assign w = x + a; always @(posedge clk) x <= w; always @(posedge clk) y <= x ^ a; assign o = y;\nendmodule");
  std::vector<SignalId> obs{sig(d, "o")};
  GoldenRun g = simulate_golden(d, parse_stimulus_csv(d, "a\n1\n2\n3\n4\n5\n"), obs);
  for (const auto& row : g.coverage.executed) CHECK(row == std::vector<StatementId>{0, 1, 2, 3});
}

TEST_CASE("constant logic gives constant traces") {
  ElaboratedDesign d = load_design(
      "module m(clk, a, o); input clk; input a; output o; reg r; always @(posedge clk) r <= 0; assign o = r & a;\n"
      "endmodule");
  std::vector<SignalId> obs{sig(d, "o")};
  GoldenRun g = simulate_golden(d, parse_stimulus_csv(d, "a\n1\n0\n1\n1\n"), obs);
  for (std::size_t c = 0; c < 4; ++c) {
    CHECK(g.golden.values[c] == std::vector<Word>{0});
    CHECK(g.coverage.executed[c] == g.coverage.executed[0]);
  }
}

// A plain queue model of the FIFO benchmark, written independently of the simulator.
TEST_CASE("spi_like matches a reference FIFO model") {
  auto p = prepare_from_text(testing::bench_file("spi_like.mrtl"), testing::bench_file("spi_like.csv"), {"dat_o"});
  std::deque<Word> fifo;
  Word dout = 0;
  const auto& d = p.design;
  auto col = [&](const char* name) {
    auto it = std::find(p.stimulus.inputs.begin(), p.stimulus.inputs.end(), sig(d, name));
    return static_cast<std::size_t>(it - p.stimulus.inputs.begin());
  };
  std::size_t rst = col("rst"), we = col("we"), re = col("re"), din = col("din");
  for (std::size_t c = 0; c < p.n_cycles(); ++c) {
    const auto& row = p.stimulus.rows[c];
    // mem and dout_r carry no reset; the model matches because both start at zero
    bool push = row[we] && fifo.size() != 16;
    bool pop = row[re] && !fifo.empty();
    if (pop) dout = fifo.front();
    if (row[rst]) {
      fifo.clear();
    } else {
      if (pop) fifo.pop_front();
      if (push) fifo.push_back(row[din]);
    }
    REQUIRE(p.golden.golden.values[c] == std::vector<Word>{dout});
  }
}

TEST_CASE("process order does not matter") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    auto p = testing::corpus_design(seed);
    ElaboratedDesign shuffled = p.design;
    std::shuffle(shuffled.processes.begin(), shuffled.processes.end(), rng);
    GoldenRun g = simulate_golden(shuffled, p.stimulus, p.observation);
    CHECK(g.golden == p.golden.golden);
    CHECK(g.coverage == p.golden.coverage);
  }
}

TEST_CASE("equal start state, inputs and executed set give equal end state") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto p = testing::corpus_design(seed);
    SimState a(p.design);
    std::vector<SimState> starts;
    std::vector<CycleResult> results;
    for (const auto& row : p.stimulus.rows) {
      starts.push_back(a);
      results.push_back(evaluate_cycle(p.design, a, row));
    }
    for (std::size_t c = 0; c < starts.size(); ++c) {
      SimState again = starts[c];
      CycleResult r = evaluate_cycle(p.design, again, p.stimulus.rows[c]);
      CHECK(r.executed == results[c].executed);
      SimState next = starts[c];
      evaluate_cycle(p.design, next, p.stimulus.rows[c]);
      CHECK(next == again);
    }
  }
}

TEST_CASE("golden runs are deterministic") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto p = testing::corpus_design(seed);
    GoldenRun g = simulate_golden(p.design, p.stimulus, p.observation);
    CHECK(g.golden == p.golden.golden);
    CHECK(g.coverage == p.golden.coverage);
    CHECK(g.access == p.golden.access);
  }
}

TEST_CASE("coverage run-length encoding") {
  auto p = testing::toy();
  std::string text = format_coverage_rle(p.golden.coverage);
  CHECK(text == "0: 0 1 3 4 5\n1-3: 0 2 3 4 5\n");
  CHECK(parse_coverage_rle(text) == p.golden.coverage);
  CoverageTrace gaps{{{}, {1}, {}, {}}};
  CHECK(parse_coverage_rle(format_coverage_rle(gaps)) == gaps);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto q = testing::corpus_design(seed);
    CHECK(parse_coverage_rle(format_coverage_rle(q.golden.coverage)) == q.golden.coverage);
  }
}

TEST_CASE("observation of a memory is rejected") {
  ElaboratedDesign d = load_design(
      "module m(clk, o); input clk; output o; reg [1:0] mem [0:1]; assign o = mem[0][0]; endmodule");
  try {
    validate_observation(d, std::vector<SignalId>{sig(d, "mem")});
    FAIL("expected UnknownObservationSignal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownObservationSignal);
  }
}
