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

// Long-form recordings: splitting into overlapping clips and rebuilding
// recording-level segment scores and labels.

#ifndef SEDEVAL_LONGFORM_HPP_
#define SEDEVAL_LONGFORM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sedeval/types.hpp"

namespace sedeval {

struct ClipWindow {
  std::string recording_id;
  double start = 0.0;
  double end = 0.0;

  double length() const { return end - start; }
  // "<recording_id>@<start_ms>-<end_ms>", milliseconds rounded to integers.
  std::string clip_name() const;
  friend bool operator==(const ClipWindow&, const ClipWindow&) = default;
};

// Inverse of ClipWindow::clip_name(). The recording id is everything before
// the last '@'.
std::optional<ClipWindow> parse_clip_name(std::string_view name);

// Windows start at multiples of clip_length * (1 - overlap_fraction). When
// the last regular window stops short of the end, a final window
// right-aligned to the end is appended. A recording no longer than one clip
// yields the single window (0, duration).
std::vector<ClipWindow> split_recording(std::string_view recording_id,
                                        double duration, double clip_length,
                                        double overlap_fraction);

// Number of segments of `segment_length` covering `duration`; the last one
// may be shorter.
std::size_t segment_count(double duration, double segment_length);

// Dense segment x class matrix for one recording.
template <typename T>
struct SegmentMatrix {
  std::string recording_id;
  double segment_length = 1.0;
  double duration = 0.0;
  std::vector<std::string> class_labels;
  std::size_t num_segments = 0;
  std::vector<T> values;  // row-major [segment][class]

  std::size_t num_classes() const { return class_labels.size(); }
  T at(std::size_t segment, std::size_t cls) const {
    return values[segment * class_labels.size() + cls];
  }
  T& at(std::size_t segment, std::size_t cls) {
    return values[segment * class_labels.size() + cls];
  }
  double segment_onset(std::size_t s) const {
    return static_cast<double>(s) * segment_length;
  }
  double segment_offset(std::size_t s) const;
  std::optional<std::size_t> class_index(std::string_view label) const;

  friend bool operator==(const SegmentMatrix&, const SegmentMatrix&) = default;
};

using SegmentScoreMatrix = SegmentMatrix<double>;
using SegmentLabelMatrix = SegmentMatrix<std::uint8_t>;

// For every segment and class: the duration-weighted mean score of each clip
// over the part of the segment it covers, then the plain mean across those
// clips. Every timeline must span its window's length and share one class
// list. Throws CoverageError when a segment is covered by no clip.
SegmentScoreMatrix reconstruct_segment_scores(
    std::span<const std::pair<ClipWindow, ScoreTimeline>> clip_timelines,
    double duration, double segment_length);

// Segment means of a single clip timeline (one window spanning the clip).
SegmentScoreMatrix segment_scores(const ScoreTimeline& timeline,
                                  double segment_length);

// Segment s is positive for class c iff a label of c with confidence >=
// threshold overlaps s by more than kTimeTolerance. Labels of other classes
// are ignored.
SegmentLabelMatrix segment_labels_from_soft(
    std::string recording_id, std::span<const SoftSegmentLabel> labels,
    std::span<const std::string> classes, double duration,
    double segment_length, double binarization_threshold);

SegmentLabelMatrix segment_labels_from_events(
    std::string recording_id, std::span<const Event> events,
    std::span<const std::string> classes, double duration,
    double segment_length);

template <typename T>
double SegmentMatrix<T>::segment_offset(std::size_t s) const {
  const double end = static_cast<double>(s + 1) * segment_length;
  return end < duration ? end : duration;
}

template <typename T>
std::optional<std::size_t> SegmentMatrix<T>::class_index(
    std::string_view label) const {
  for (std::size_t i = 0; i < class_labels.size(); ++i) {
    if (class_labels[i] == label) return i;
  }
  return std::nullopt;
}

}  // namespace sedeval

#endif  // SEDEVAL_LONGFORM_HPP_
