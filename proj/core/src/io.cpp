// Copyright 2026 The sedeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sedeval/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "sedeval/errors.hpp"

namespace sedeval {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r";
  auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

// Times in messages always carry a decimal point: "5.0", "6.25".
std::string format_time(double t) {
  std::string s = format_number(t);
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// The first data row is a header when its second column is present but not
// numeric.
bool looks_like_header(const std::vector<std::string_view>& fields) {
  return fields.size() >= 2 && !trim(fields[1]).empty() &&
         !parse_number(fields[1]).has_value();
}

double require_number(std::string_view field, std::string_view what,
                      std::size_t line) {
  auto v = parse_number(field);
  if (!v) {
    throw ParseError("non-numeric " + std::string(what) + " '" +
                         std::string(field) + "'",
                     line);
  }
  return *v;
}

}  // namespace

std::vector<std::string_view> split_lines(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto end = nl == std::string_view::npos ? text.size() : nl;
    auto line = text.substr(pos, end - pos);
    if (line.ends_with('\r')) line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    auto tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view field) {
  field = trim(field);
  if (field.starts_with('+')) field.remove_prefix(1);
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    return std::nullopt;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::string format_number(double value) {
  char buf[512];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
  if (ec != std::errc()) {
    throw Error("cannot format number");
  }
  return std::string(buf, ptr);
}

GroundTruth parse_ground_truth(std::string_view tsv_text) {
  GroundTruth gt;
  std::vector<std::string> invalid;
  bool first = true;
  auto lines = split_lines(tsv_text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (is_blank(lines[i])) continue;
    auto fields = split_fields(lines[i]);
    if (first) {
      first = false;
      if (looks_like_header(fields)) continue;
    }
    const auto filename = trim(fields[0]);
    if (filename.empty()) throw ParseError("empty filename", line_no);
    if (fields.size() == 1 ||
        (fields.size() == 4 && trim(fields[1]).empty() &&
         trim(fields[2]).empty() && trim(fields[3]).empty())) {
      gt.try_emplace(std::string(filename));
      continue;
    }
    if (fields.size() != 4) {
      throw ParseError("expected 4 tab-separated columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    Event e;
    e.clip_id = std::string(filename);
    e.onset = require_number(fields[1], "onset", line_no);
    e.offset = require_number(fields[2], "offset", line_no);
    e.label = std::string(trim(fields[3]));
    if (e.label.empty()) {
      invalid.push_back("empty event label at line " + std::to_string(line_no));
      continue;
    }
    if (e.onset < 0.0) {
      invalid.push_back("negative onset at line " + std::to_string(line_no));
      continue;
    }
    if (e.offset <= e.onset) {
      invalid.push_back("offset ≤ onset at line " + std::to_string(line_no));
      continue;
    }
    gt[e.clip_id].push_back(std::move(e));
  }
  if (!invalid.empty()) throw ValidationError(join(invalid, "; "));
  return gt;
}

std::vector<SoftSegmentLabel> parse_soft_labels(std::string_view tsv_text) {
  std::vector<SoftSegmentLabel> out;
  std::vector<std::string> invalid;
  bool first = true;
  auto lines = split_lines(tsv_text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (is_blank(lines[i])) continue;
    auto fields = split_fields(lines[i]);
    if (first) {
      first = false;
      if (looks_like_header(fields)) continue;
    }
    if (fields.size() != 5) {
      throw ParseError("expected 5 tab-separated columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    SoftSegmentLabel l;
    l.clip_id = std::string(trim(fields[0]));
    if (l.clip_id.empty()) throw ParseError("empty filename", line_no);
    l.onset = require_number(fields[1], "onset", line_no);
    l.offset = require_number(fields[2], "offset", line_no);
    l.label = std::string(trim(fields[3]));
    l.confidence = require_number(fields[4], "confidence", line_no);
    const std::string at = " at line " + std::to_string(line_no);
    if (l.label.empty()) {
      invalid.push_back("empty event label" + at);
    } else if (l.onset < 0.0) {
      invalid.push_back("negative onset" + at);
    } else if (l.offset <= l.onset) {
      invalid.push_back("offset ≤ onset" + at);
    } else if (l.confidence < 0.0 || l.confidence > 1.0) {
      invalid.push_back("confidence " + std::string(trim(fields[4])) +
                        " outside [0, 1]" + at);
    } else {
      out.push_back(std::move(l));
    }
  }
  if (!invalid.empty()) throw ValidationError(join(invalid, "; "));
  return out;
}

ScoreTimeline parse_scores(std::string_view tsv_text,
                           std::span<const std::string> expected_classes,
                           std::string clip_id) {
  auto lines = split_lines(tsv_text);
  std::size_t i = 0;
  while (i < lines.size() && is_blank(lines[i])) ++i;
  if (i == lines.size()) throw ParseError("empty score file", 0);

  auto header = split_fields(lines[i]);
  if (header.size() < 2 || !looks_like_header(header)) {
    throw SchemaError("score file must start with an 'onset\\toffset\\t<class>...' header");
  }
  std::vector<std::string> columns;
  for (std::size_t c = 2; c < header.size(); ++c) {
    columns.emplace_back(trim(header[c]));
  }
  {
    std::set<std::string> seen;
    for (const auto& c : columns) {
      if (!seen.insert(c).second) {
        throw SchemaError("duplicate class column '" + c + "'");
      }
    }
    std::vector<std::string> missing, extra;
    for (const auto& c : expected_classes) {
      if (!seen.count(c)) missing.push_back(c);
    }
    std::set<std::string> expected(expected_classes.begin(),
                                   expected_classes.end());
    for (const auto& c : columns) {
      if (!expected.count(c)) extra.push_back(c);
    }
    if (!missing.empty() || !extra.empty()) {
      std::string msg = "class columns do not match";
      if (!missing.empty()) msg += "; missing: " + join(missing, ", ");
      if (!extra.empty()) msg += "; unexpected: " + join(extra, ", ");
      throw SchemaError(msg);
    }
  }
  // Column of the file holding expected class k.
  std::vector<std::size_t> source(expected_classes.size());
  for (std::size_t k = 0; k < expected_classes.size(); ++k) {
    source[k] = static_cast<std::size_t>(
        std::find(columns.begin(), columns.end(), expected_classes[k]) -
        columns.begin());
  }

  std::vector<double> breakpoints{0.0};
  std::vector<double> scores;
  std::vector<double> row(columns.size());
  bool first_row = true;
  for (++i; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (is_blank(lines[i])) continue;
    auto fields = split_fields(lines[i]);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) +
                           " tab-separated columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    const double onset = require_number(fields[0], "onset", line_no);
    const double offset = require_number(fields[1], "offset", line_no);
    const double prev = breakpoints.back();
    if (first_row) {
      if (std::abs(onset) > kTimeTolerance) {
        throw TilingError(onset > 0.0
                              ? "gap at 0.0–" + format_time(onset)
                              : "scores start before 0 at line " +
                                    std::to_string(line_no));
      }
    } else if (onset > prev + kTimeTolerance) {
      throw TilingError("gap at " + format_time(prev) + "–" +
                        format_time(onset));
    } else if (onset < prev - kTimeTolerance) {
      throw TilingError("overlap at " + format_time(onset) + "–" +
                        format_time(prev));
    }
    first_row = false;
    if (!(offset > prev + kTimeTolerance)) {
      throw ValidationError("offset ≤ onset at line " +
                            std::to_string(line_no));
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
      row[c] = require_number(fields[c + 2], "score", line_no);
      if (row[c] < 0.0 || row[c] > 1.0) {
        throw ValidationError("score " + std::string(trim(fields[c + 2])) +
                              " outside [0, 1] at line " +
                              std::to_string(line_no));
      }
    }
    breakpoints.push_back(offset);
    for (std::size_t k = 0; k < source.size(); ++k) {
      scores.push_back(row[source[k]]);
    }
  }
  if (first_row) throw ValidationError("score file has no rows");
  return ScoreTimeline(std::move(clip_id),
                       {expected_classes.begin(), expected_classes.end()},
                       std::move(breakpoints), std::move(scores));
}

DurationMap parse_durations(std::string_view tsv_text) {
  DurationMap out;
  bool first = true;
  auto lines = split_lines(tsv_text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (is_blank(lines[i])) continue;
    auto fields = split_fields(lines[i]);
    if (first) {
      first = false;
      if (looks_like_header(fields)) continue;
    }
    if (fields.size() != 2) {
      throw ParseError("expected 2 tab-separated columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    std::string clip(trim(fields[0]));
    if (clip.empty()) throw ParseError("empty filename", line_no);
    const double d = require_number(fields[1], "duration", line_no);
    if (!(d > 0.0)) {
      throw ValidationError("non-positive duration for '" + clip +
                            "' at line " + std::to_string(line_no));
    }
    if (!out.emplace(clip, d).second) {
      throw ValidationError("duplicate clip '" + clip + "' at line " +
                            std::to_string(line_no));
    }
  }
  return out;
}

std::string format_scores(const ScoreTimeline& timeline) {
  std::string out = "onset\toffset";
  for (const auto& c : timeline.class_labels()) {
    out += '\t';
    out += c;
  }
  out += '\n';
  for (std::size_t r = 0; r < timeline.num_rows(); ++r) {
    out += format_number(timeline.onset(r));
    out += '\t';
    out += format_number(timeline.offset(r));
    for (std::size_t c = 0; c < timeline.num_classes(); ++c) {
      out += '\t';
      out += format_number(timeline.score(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string format_ground_truth(std::span<const Event> events) {
  std::string out = "filename\tonset\toffset\tevent_label\n";
  for (const auto& e : events) {
    out += e.clip_id + '\t' + format_number(e.onset) + '\t' +
           format_number(e.offset) + '\t' + e.label + '\n';
  }
  return out;
}

std::string format_soft_labels(std::span<const SoftSegmentLabel> labels) {
  std::string out = "filename\tonset\toffset\tevent_label\tconfidence\n";
  for (const auto& l : labels) {
    out += l.clip_id + '\t' + format_number(l.onset) + '\t' +
           format_number(l.offset) + '\t' + l.label + '\t' +
           format_number(l.confidence) + '\n';
  }
  return out;
}

std::string format_durations(const DurationMap& durations) {
  std::string out = "filename\tduration\n";
  for (const auto& [clip, d] : durations) {
    out += clip + '\t' + format_number(d) + '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return std::move(ss).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace sedeval
