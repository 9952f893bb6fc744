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

#include "sedeval/longform.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <tuple>

#include "sedeval/errors.hpp"
#include "sedeval/io.hpp"

namespace sedeval {

namespace {

std::string ms_text(double seconds) {
  return std::to_string(std::llround(seconds * 1000.0));
}

std::optional<long long> parse_int(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return v;
}

// Duration-weighted mean of every class over [lo, hi] (timeline-local time).
void accumulate_interval_mean(const ScoreTimeline& t, double lo, double hi,
                              std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  const auto& bp = t.breakpoints();
  // First row whose offset exceeds lo.
  auto it = std::upper_bound(bp.begin() + 1, bp.end(), lo);
  std::size_t row = static_cast<std::size_t>(it - bp.begin()) - 1;
  double covered = 0.0;
  for (; row < t.num_rows() && t.onset(row) < hi; ++row) {
    const double w = std::min(hi, t.offset(row)) - std::max(lo, t.onset(row));
    if (w <= 0.0) continue;
    covered += w;
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += w * t.score(row, c);
  }
  if (covered > 0.0) {
    for (auto& v : out) v /= covered;
  }
}

void check_segment_length(double duration, double segment_length) {
  if (!(duration > 0.0)) throw ValidationError("duration must be positive");
  if (!(segment_length > 0.0)) {
    throw ValidationError("segment length must be positive");
  }
}

}  // namespace

std::string ClipWindow::clip_name() const {
  return recording_id + "@" + ms_text(start) + "-" + ms_text(end);
}

std::optional<ClipWindow> parse_clip_name(std::string_view name) {
  auto at = name.rfind('@');
  if (at == std::string_view::npos || at == 0) return std::nullopt;
  auto range = name.substr(at + 1);
  auto dash = range.find('-');
  if (dash == std::string_view::npos) return std::nullopt;
  auto start = parse_int(range.substr(0, dash));
  auto end = parse_int(range.substr(dash + 1));
  if (!start || !end || *start < 0 || *end <= *start) return std::nullopt;
  return ClipWindow{std::string(name.substr(0, at)),
                    static_cast<double>(*start) / 1000.0,
                    static_cast<double>(*end) / 1000.0};
}

std::vector<ClipWindow> split_recording(std::string_view recording_id,
                                        double duration, double clip_length,
                                        double overlap_fraction) {
  if (!(duration > 0.0)) throw ValidationError("duration must be positive");
  if (!(clip_length > 0.0)) {
    throw ValidationError("clip length must be positive");
  }
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) {
    throw ValidationError("overlap fraction must lie in [0, 1)");
  }
  const std::string id(recording_id);
  if (duration <= clip_length + kTimeTolerance) {
    return {ClipWindow{id, 0.0, duration}};
  }
  const double hop = clip_length * (1.0 - overlap_fraction);
  std::vector<ClipWindow> windows;
  for (std::size_t k = 0;; ++k) {
    const double start = static_cast<double>(k) * hop;
    if (start + clip_length > duration + kTimeTolerance) break;
    windows.push_back({id, start, start + clip_length});
  }
  if (windows.back().end < duration - kTimeTolerance) {
    windows.push_back({id, duration - clip_length, duration});
  }
  return windows;
}

std::size_t segment_count(double duration, double segment_length) {
  check_segment_length(duration, segment_length);
  return static_cast<std::size_t>(
      std::ceil((duration - kTimeTolerance) / segment_length));
}

SegmentScoreMatrix reconstruct_segment_scores(
    std::span<const std::pair<ClipWindow, ScoreTimeline>> clip_timelines,
    double duration, double segment_length) {
  check_segment_length(duration, segment_length);
  if (clip_timelines.empty()) {
    throw CoverageError("no clips to reconstruct from");
  }
  const auto& classes = clip_timelines.front().second.class_labels();
  for (const auto& [window, timeline] : clip_timelines) {
    if (timeline.class_labels() != classes) {
      throw SchemaError("clip '" + window.clip_name() +
                        "' has a different class list");
    }
    if (std::abs(timeline.duration() - window.length()) > kTimeTolerance) {
      throw ValidationError("clip '" + window.clip_name() + "' spans " +
                            format_number(timeline.duration()) +
                            " s but its window is " +
                            format_number(window.length()) + " s long");
    }
  }
  // Summation order fixed by window position, so the result does not depend
  // on the order of the input list.
  std::vector<std::size_t> order(clip_timelines.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    const auto& wa = clip_timelines[a].first;
    const auto& wb = clip_timelines[b].first;
    return std::tie(wa.start, wa.end) < std::tie(wb.start, wb.end);
  });

  SegmentScoreMatrix out;
  out.recording_id = clip_timelines.front().first.recording_id;
  out.segment_length = segment_length;
  out.duration = duration;
  out.class_labels = classes;
  out.num_segments = segment_count(duration, segment_length);
  out.values.assign(out.num_segments * classes.size(), 0.0);

  std::vector<double> clip_mean(classes.size());
  for (std::size_t s = 0; s < out.num_segments; ++s) {
    const double a = out.segment_onset(s);
    const double b = out.segment_offset(s);
    std::size_t covering = 0;
    for (std::size_t idx : order) {
      const auto& [window, timeline] = clip_timelines[idx];
      const double lo = std::max(a, window.start);
      const double hi = std::min(b, window.end);
      if (hi - lo <= kTimeTolerance) continue;
      accumulate_interval_mean(timeline, lo - window.start, hi - window.start,
                               clip_mean);
      for (std::size_t c = 0; c < classes.size(); ++c) {
        out.at(s, c) += clip_mean[c];
      }
      ++covering;
    }
    if (covering == 0) {
      throw CoverageError("segment " + std::to_string(s) + " [" +
                          format_number(a) + ", " + format_number(b) +
                          "] of '" + out.recording_id +
                          "' is not covered by any clip");
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      out.at(s, c) /= static_cast<double>(covering);
    }
  }
  return out;
}

SegmentScoreMatrix segment_scores(const ScoreTimeline& timeline,
                                  double segment_length) {
  const std::pair<ClipWindow, ScoreTimeline> single{
      ClipWindow{timeline.clip_id(), 0.0, timeline.duration()}, timeline};
  return reconstruct_segment_scores(std::span(&single, 1), timeline.duration(),
                                    segment_length);
}

namespace {

SegmentLabelMatrix empty_labels(std::string recording_id,
                                std::span<const std::string> classes,
                                double duration, double segment_length) {
  SegmentLabelMatrix m;
  m.recording_id = std::move(recording_id);
  m.segment_length = segment_length;
  m.duration = duration;
  m.class_labels.assign(classes.begin(), classes.end());
  m.num_segments = segment_count(duration, segment_length);
  m.values.assign(m.num_segments * classes.size(), 0);
  return m;
}

void mark_interval(SegmentLabelMatrix& m, std::size_t cls, double onset,
                   double offset) {
  const double first = std::floor(onset / m.segment_length);
  std::size_t s = first > 0.0 ? static_cast<std::size_t>(first) : 0;
  if (s > 0) --s;  // guard against rounding in the division
  for (; s < m.num_segments; ++s) {
    const double a = m.segment_onset(s);
    if (a >= offset) break;
    const double overlap =
        std::min(offset, m.segment_offset(s)) - std::max(onset, a);
    if (overlap > kTimeTolerance) m.at(s, cls) = 1;
  }
}

}  // namespace

SegmentLabelMatrix segment_labels_from_soft(
    std::string recording_id, std::span<const SoftSegmentLabel> labels,
    std::span<const std::string> classes, double duration,
    double segment_length, double binarization_threshold) {
  auto m = empty_labels(std::move(recording_id), classes, duration,
                        segment_length);
  for (const auto& l : labels) {
    if (l.confidence < binarization_threshold) continue;
    if (auto c = m.class_index(l.label)) mark_interval(m, *c, l.onset, l.offset);
  }
  return m;
}

SegmentLabelMatrix segment_labels_from_events(
    std::string recording_id, std::span<const Event> events,
    std::span<const std::string> classes, double duration,
    double segment_length) {
  auto m = empty_labels(std::move(recording_id), classes, duration,
                        segment_length);
  for (const auto& e : events) {
    if (auto c = m.class_index(e.label)) mark_interval(m, *c, e.onset, e.offset);
  }
  return m;
}

}  // namespace sedeval
