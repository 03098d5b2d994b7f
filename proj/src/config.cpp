#include <cstdint>
#include <fstream>
#include <sstream>

#include "slicefi/campaign.hpp"
#include "text_util.hpp"

namespace slicefi {

namespace {

std::uint64_t parse_unsigned(const std::string& key, std::string_view value, std::uint64_t max) {
  auto bad = [&] {
    return Error(ErrorKind::ConfigError, "'" + key + "' must be an integer in 0.." + std::to_string(max) + ", got '" +
                                             std::string(value) + "'");
  };
  if (value.empty() || value.size() > 20) throw bad();
  std::uint64_t v = 0;
  for (char c : value) {
    if (c < '0' || c > '9') throw bad();
    std::uint64_t next = v * 10 + static_cast<std::uint64_t>(c - '0');
    if (next / 10 != v) throw bad();
    v = next;
  }
  if (v > max) throw bad();
  return v;
}

}  // namespace

FaultSemantics CampaignConfig::effective_semantics() const {
  if (semantics) return *semantics;
  return mode == PruneMode::DynamicLivePrune ? FaultSemantics::Persistent : FaultSemantics::Transient;
}

PruneOptions CampaignConfig::prune_options() const {
  PruneOptions o;
  o.mode = mode;
  o.semantics = effective_semantics();
  o.memory_rows = memory_rows;
  o.target_spec = target_spec;
  return o;
}

void CampaignConfig::validate() const {
  if (workers == 0) throw Error(ErrorKind::ConfigError, "workers must be at least 1");
  if (mode == PruneMode::DynamicPrune && effective_semantics() == FaultSemantics::Persistent) {
    throw Error(ErrorKind::ConfigError,
                "DynamicPrune only covers faults that vanish after one cycle; use DynamicLivePrune for Persistent faults");
  }
}

CampaignConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  CampaignConfig cfg;
  auto lines = detail::split_lines(text);
  auto resolve = [&](std::string_view v) {
    std::filesystem::path p{std::string(v)};
    return p.is_absolute() ? p : base_dir / p;
  };
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    auto line = detail::trim(lines[ln]);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::ConfigError, "config line " + std::to_string(ln + 1) + ": expected 'key = value'");
    }
    std::string key(detail::trim(line.substr(0, eq)));
    auto value = detail::trim(line.substr(eq + 1));
    if (key == "design") {
      cfg.design_path = resolve(value);
    } else if (key == "stimulus") {
      cfg.stimulus_path = resolve(value);
    } else if (key == "observation") {
      cfg.observation.clear();
      for (const auto& n : detail::split(value, ',')) {
        auto name = detail::trim(n);
        if (!name.empty()) cfg.observation.emplace_back(name);
      }
    } else if (key == "target") {
      cfg.target_spec = std::string(value);
    } else if (key == "mode") {
      cfg.mode = parse_mode(value);
    } else if (key == "semantics") {
      cfg.semantics = parse_semantics(value);
    } else if (key == "memory_rows") {
      if (value == "whole") cfg.memory_rows = MemoryRowPolicy::WholeSignal;
      else if (value == "read") cfg.memory_rows = MemoryRowPolicy::ReadAddresses;
      else throw Error(ErrorKind::ConfigError, "memory_rows must be 'whole' or 'read'");
    } else if (key == "workers") {
      cfg.workers = static_cast<unsigned>(parse_unsigned(key, value, 1024));
    } else if (key == "seed") {
      cfg.seed = parse_unsigned(key, value, UINT64_MAX);
    } else if (key == "out") {
      cfg.out_dir = resolve(value);
    } else {
      throw Error(ErrorKind::ConfigError, "config line " + std::to_string(ln + 1) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

CampaignConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path), path.parent_path());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace slicefi
