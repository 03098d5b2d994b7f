#include <charconv>
#include <sstream>

#include "slicefi/sim.hpp"
#include "text_util.hpp"

namespace slicefi {

namespace {

Word parse_value(std::string_view field, std::size_t line) {
  std::string_view f = detail::trim(field);
  int base = 10;
  if (f.size() > 2 && f[0] == '0' && (f[1] == 'x' || f[1] == 'X')) {
    base = 16;
    f.remove_prefix(2);
  }
  Word v = 0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v, base);
  if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size()) {
    throw Error(ErrorKind::StimulusFormat,
                "line " + std::to_string(line) + ": '" + std::string(field) + "' is not a decimal or 0x-hex value");
  }
  return v;
}

}  // namespace

Stimulus parse_stimulus_csv(const ElaboratedDesign& d, std::string_view text) {
  std::vector<std::string> lines = detail::split_lines(text);
  std::size_t header_line = 0;
  while (header_line < lines.size() && detail::trim(lines[header_line]).empty()) ++header_line;
  if (header_line == lines.size()) throw Error(ErrorKind::EmptyStimulus, "stimulus file is empty");

  // column -> position in design.stimulus_inputs; kIgnored for a `cycle` column
  constexpr std::size_t kIgnored = static_cast<std::size_t>(-1);
  std::vector<std::size_t> column_slot;
  std::vector<bool> seen(d.stimulus_inputs.size(), false);
  for (const auto& raw : detail::split(lines[header_line], ',')) {
    std::string name(detail::trim(raw));
    if (name == "cycle" && !d.find_signal(name)) {
      column_slot.push_back(kIgnored);
      continue;
    }
    auto id = d.find_signal(name);
    std::size_t slot = d.stimulus_inputs.size();
    for (std::size_t i = 0; id && i < d.stimulus_inputs.size(); ++i) {
      if (d.stimulus_inputs[i] == *id) slot = i;
    }
    if (slot == d.stimulus_inputs.size()) {
      throw Error(ErrorKind::StimulusFormat, "stimulus column '" + name + "' is not a non-clock input of the design");
    }
    if (seen[slot]) throw Error(ErrorKind::StimulusFormat, "stimulus column '" + name + "' appears twice");
    seen[slot] = true;
    column_slot.push_back(slot);
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorKind::StimulusFormat,
                  "stimulus has no column for input '" + d.signal(d.stimulus_inputs[i]).name + "'");
    }
  }

  Stimulus s;
  s.inputs = d.stimulus_inputs;
  for (std::size_t ln = header_line + 1; ln < lines.size(); ++ln) {
    if (detail::trim(lines[ln]).empty()) continue;
    auto fields = detail::split(lines[ln], ',');
    if (fields.size() != column_slot.size()) {
      throw Error(ErrorKind::StimulusFormat, "line " + std::to_string(ln + 1) + ": expected " +
                                                 std::to_string(column_slot.size()) + " fields");
    }
    std::vector<Word> row(d.stimulus_inputs.size(), 0);
    for (std::size_t c = 0; c < fields.size(); ++c) {
      Word v = parse_value(fields[c], ln + 1);
      if (column_slot[c] == kIgnored) continue;
      const SignalDecl& in = d.signal(d.stimulus_inputs[column_slot[c]]);
      if ((v & ~width_mask(in.width)) != 0) {
        throw Error(ErrorKind::StimulusFormat, "line " + std::to_string(ln + 1) + ": value " + std::to_string(v) +
                                                   " does not fit " + std::to_string(in.width) + "-bit input '" +
                                                   in.name + "'");
      }
      row[column_slot[c]] = v;
    }
    s.rows.push_back(std::move(row));
  }
  if (s.rows.empty()) throw Error(ErrorKind::EmptyStimulus, "stimulus has no cycles");
  return s;
}

std::string format_stimulus_csv(const ElaboratedDesign& d, const Stimulus& stimulus) {
  // A design without data inputs still needs one column to count cycles.
  const bool cycle_column = stimulus.inputs.empty();
  std::ostringstream os;
  if (cycle_column) os << "cycle";
  for (std::size_t i = 0; i < stimulus.inputs.size(); ++i) {
    if (i) os << ',';
    os << d.signal(stimulus.inputs[i]).name;
  }
  os << '\n';
  for (std::size_t c = 0; c < stimulus.rows.size(); ++c) {
    const auto& row = stimulus.rows[c];
    if (cycle_column) os << c;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << row[i];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace slicefi
