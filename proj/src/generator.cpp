#include <random>
#include <sstream>

#include "slicefi/campaign.hpp"

namespace slicefi {

void GeneratorParams::validate() const {
  auto bad = [](const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); };
  if (max_regs > 8) bad("generator: max_regs must be in 0..8");
  if (max_stmts < 1 || max_stmts > 64) bad("generator: max_stmts must be in 1..64");
  if (max_reg_bits < 1 || max_reg_bits > 64) bad("generator: max_reg_bits must be in 1..64");
  if (cycles < 1 || cycles > 256) bad("generator: cycles must be in 1..256");
  if (memory && max_regs < 1) bad("generator: a memory needs max_regs >= 1");
}

namespace {

struct Net {
  std::string name;
  unsigned width;
};

class Generator {
 public:
  Generator(std::uint64_t seed, const GeneratorParams& p) : rng_(seed), p_(p) {}

  GeneratedDesign run(std::uint64_t seed) {
    GeneratedDesign g;
    g.name = "gen" + std::to_string(seed);
    plan();
    std::ostringstream body;
    emit_wires(body);
    emit_regs(body);
    emit_memory(body);
    emit_outputs(body);

    std::ostringstream os;
    os << "module " << g.name << "(clk, rst";
    for (const auto& in : inputs_) os << ", " << in.name;
    for (const auto& out : outputs_) os << ", " << out.name;
    os << ");\n";
    os << "  input clk;\n  input rst;\n";
    for (const auto& in : inputs_) os << "  input " << range(in.width) << in.name << ";\n";
    for (const auto& out : outputs_) os << "  output " << range(out.width) << out.name << ";\n";
    for (const auto& r : regs_) os << "  reg " << range(r.width) << r.name << ";\n";
    if (mem_depth_) os << "  reg " << range(mem_width_) << "m [0:" << mem_depth_ - 1 << "];\n";
    for (const auto& w : wires_) os << "  wire " << range(w.width) << w.name << ";\n";
    os << body.str() << "endmodule\n";
    g.mrtl = os.str();

    g.stimulus_csv = stimulus();
    for (const auto& out : outputs_) g.observation.push_back(out.name);
    if (!regs_.empty() && pick(3) == 0) g.observation.push_back(regs_[pick(regs_.size())].name);
    return g;
  }

 private:
  std::size_t pick(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
  bool coin() { return pick(2) == 0; }

  static std::string range(unsigned w) { return w == 1 ? "" : "[" + std::to_string(w - 1) + ":0] "; }

  void plan() {
    unsigned n_in = 1 + static_cast<unsigned>(pick(2));
    for (unsigned i = 0; i < n_in; ++i) inputs_.push_back({"in" + std::to_string(i), 1 + unsigned(pick(4))});

    unsigned bits = p_.max_reg_bits;
    unsigned slots = p_.max_regs;
    if (p_.memory && slots > 0) {
      mem_depth_ = coin() ? 2 : 4;
      mem_width_ = 1 + unsigned(pick(2));
      if (mem_depth_ * mem_width_ > bits) {
        mem_depth_ = 2;
        mem_width_ = 1;
      }
      if (mem_depth_ * mem_width_ > bits) {
        mem_depth_ = 0;
      } else {
        bits -= mem_depth_ * mem_width_;
        --slots;
      }
    }
    unsigned n_regs = slots == 0 ? 0 : 1 + unsigned(pick(slots));
    for (unsigned i = 0; i < n_regs && bits > 0; ++i) {
      unsigned w = 1 + unsigned(pick(std::min(4u, bits)));
      bits -= w;
      regs_.push_back({"r" + std::to_string(i), w});
    }
    budget_ = p_.max_stmts;
    unsigned n_wires = unsigned(pick(3));
    for (unsigned i = 0; i < n_wires; ++i) wires_.push_back({"w" + std::to_string(i), 1 + unsigned(pick(4))});
    unsigned n_out = 1 + unsigned(pick(2));
    for (unsigned i = 0; i < n_out; ++i) outputs_.push_back({"out" + std::to_string(i), 1 + unsigned(pick(4))});
  }

  // A readable net no wider than `width`, narrowed with a select when needed.
  std::string leaf(unsigned width, std::size_t wire_limit) {
    std::vector<const Net*> pool;
    for (const auto& n : inputs_) pool.push_back(&n);
    for (const auto& n : regs_) pool.push_back(&n);
    for (std::size_t i = 0; i < wire_limit; ++i) pool.push_back(&wires_[i]);
    bool mem_ok = mem_depth_ != 0 && mem_width_ <= width;
    std::size_t choices = pool.size() + 1 + (mem_ok ? 1 : 0);
    std::size_t c = pick(choices);
    if (c < pool.size()) {
      const Net& n = *pool[c];
      if (n.width <= width) return n.name;
      if (width == 1) return n.name + "[" + std::to_string(pick(n.width)) + "]";
      return n.name + "[" + std::to_string(width - 1) + ":0]";
    }
    if (c == pool.size()) return std::to_string(pick(width >= 3 ? 8 : (Word{1} << width)));
    return "m[" + index(wire_limit) + "]";
  }

  // A memory index whose width cannot exceed the address range.
  std::string index(std::size_t wire_limit) {
    unsigned aw = mem_depth_ == 2 ? 1 : 2;
    std::vector<const Net*> pool;
    for (const auto& n : inputs_) pool.push_back(&n);
    for (const auto& n : regs_) pool.push_back(&n);
    for (std::size_t i = 0; i < wire_limit; ++i) pool.push_back(&wires_[i]);
    const Net& n = *pool[pick(pool.size())];
    if (n.width <= aw) return n.name;
    if (aw == 1) return n.name + "[" + std::to_string(pick(n.width)) + "]";
    return n.name + "[1:0]";
  }

  std::string expr(unsigned width, std::size_t wire_limit, int depth) {
    if (depth == 0 || pick(3) == 0) return leaf(width, wire_limit);
    switch (pick(7)) {
      case 0: return "(" + expr(width, wire_limit, depth - 1) + " ^ " + expr(width, wire_limit, depth - 1) + ")";
      case 1: return "(" + expr(width, wire_limit, depth - 1) + " & " + expr(width, wire_limit, depth - 1) + ")";
      case 2: return "(" + expr(width, wire_limit, depth - 1) + " | " + expr(width, wire_limit, depth - 1) + ")";
      case 3: return "(" + expr(width, wire_limit, depth - 1) + " + " + expr(width, wire_limit, depth - 1) + ")";
      case 4: return "(~" + expr(width, wire_limit, depth - 1) + ")";
      case 5:
        return "(" + cond(wire_limit, depth - 1) + " ? " + expr(width, wire_limit, depth - 1) + " : " +
               expr(width, wire_limit, depth - 1) + ")";
      default: return "(" + cond(wire_limit, depth - 1) + ")";
    }
  }

  std::string cond(std::size_t wire_limit, int depth) {
    switch (pick(4)) {
      case 0: return leaf(1, wire_limit);
      case 1: return "(" + leaf(4, wire_limit) + " == " + leaf(4, wire_limit) + ")";
      case 2: return "(" + leaf(4, wire_limit) + " < " + leaf(4, wire_limit) + ")";
      default: return "(|" + expr(4, wire_limit, std::max(0, depth - 1)) + ")";
    }
  }

  void emit_wires(std::ostringstream& os) {
    for (std::size_t i = 0; i < wires_.size(); ++i) {
      os << "  assign " << wires_[i].name << " = " << expr(wires_[i].width, i, 2) << ";\n";
    }
  }

  void emit_outputs(std::ostringstream& os) {
    for (const auto& out : outputs_) os << "  assign " << out.name << " = " << expr(out.width, wires_.size(), 2) << ";\n";
  }

  // One assignment to `r`, occasionally to a single bit of it.
  std::string assign(const Net& r) {
    --budget_;
    if (r.width > 1 && pick(4) == 0) {
      unsigned b = unsigned(pick(r.width));
      return r.name + "[" + std::to_string(b) + "] <= " + expr(1, wires_.size(), 2) + ";";
    }
    return r.name + " <= " + expr(r.width, wires_.size(), 2) + ";";
  }

  std::string body(const Net& r, int depth, const std::string& pad) {
    std::size_t k = budget_ > 2 && depth > 0 ? pick(4) : 0;
    if (k == 1) {
      --budget_;
      std::string s = "if (" + cond(wires_.size(), 1) + ")\n" + pad + "  " + body(r, depth - 1, pad + "  ");
      if (coin()) s += "\n" + pad + "else\n" + pad + "  " + body(r, depth - 1, pad + "  ");
      return s;
    }
    if (k == 2) {
      --budget_;
      const Net& sel = pick(2) == 0 || regs_.empty() ? inputs_[pick(inputs_.size())] : regs_[pick(regs_.size())];
      std::string s = "case (" + sel.name + ")\n";
      unsigned labels = std::min<unsigned>(2, 1u << std::min(sel.width, 4u));
      for (unsigned l = 0; l < labels; ++l) {
        s += pad + "  " + std::to_string(l) + ": " + body(r, 0, pad + "    ") + "\n";
      }
      if (coin()) s += pad + "  default: " + body(r, 0, pad + "    ") + "\n";
      return s + pad + "endcase";
    }
    if (k == 3) {
      std::string s = "begin\n" + pad + "  " + assign(r) + "\n";
      if (r.width > 1) s += pad + "  " + r.name + "[0] <= " + expr(1, wires_.size(), 1) + ";\n";
      --budget_;
      return s + pad + "end";
    }
    return assign(r);
  }

  void emit_regs(std::ostringstream& os) {
    for (const auto& r : regs_) {
      os << "  always @(posedge clk)\n";
      if (coin()) {
        --budget_;
        os << "    if (rst)\n      " << r.name << " <= 0;\n    else\n      " << body(r, 2, "      ") << "\n";
      } else {
        os << "    " << body(r, 2, "    ") << "\n";
      }
    }
  }

  void emit_memory(std::ostringstream& os) {
    if (!mem_depth_) return;
    os << "  always @(posedge clk)\n";
    os << "    if (" << cond(wires_.size(), 1) << ")\n";
    os << "      m[" << index(wires_.size()) << "] <= " << expr(mem_width_, wires_.size(), 1) << ";\n";
  }

  std::string stimulus() {
    std::ostringstream os;
    os << "rst";
    for (const auto& in : inputs_) os << ',' << in.name;
    os << '\n';
    for (unsigned c = 0; c < p_.cycles; ++c) {
      os << (c == 0 || pick(16) == 0 ? 1 : 0);
      for (const auto& in : inputs_) os << ',' << pick(Word{1} << in.width);
      os << '\n';
    }
    return os.str();
  }

  std::mt19937_64 rng_;
  GeneratorParams p_;
  std::vector<Net> inputs_;
  std::vector<Net> regs_;
  std::vector<Net> wires_;
  std::vector<Net> outputs_;
  unsigned mem_depth_ = 0;
  unsigned mem_width_ = 0;
  int budget_ = 0;
};

}  // namespace

GeneratedDesign generate_random_design(std::uint64_t seed, const GeneratorParams& params) {
  params.validate();
  return Generator(seed, params).run(seed);
}

}  // namespace slicefi
