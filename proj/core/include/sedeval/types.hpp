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

// Domain types shared by every module: annotated events, soft labels,
// piecewise-constant score timelines, durations and bootstrap weights.

#ifndef SEDEVAL_TYPES_HPP_
#define SEDEVAL_TYPES_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sedeval {

// Absolute tolerance for every comparison between times, in seconds.
inline constexpr double kTimeTolerance = 1e-9;

struct Event {
  std::string clip_id;
  double onset = 0.0;
  double offset = 0.0;
  std::string label;

  double duration() const { return offset - onset; }
  friend bool operator==(const Event&, const Event&) = default;
};

// Strict weak order on (clip_id, label, onset, offset).
bool operator<(const Event& a, const Event& b);

struct SoftSegmentLabel {
  std::string clip_id;
  double onset = 0.0;
  double offset = 0.0;
  std::string label;
  double confidence = 0.0;

  friend bool operator==(const SoftSegmentLabel&,
                         const SoftSegmentLabel&) = default;
};

bool operator<(const SoftSegmentLabel& a, const SoftSegmentLabel& b);

// Ground-truth events keyed by clip id. A clip may map to an empty list.
using GroundTruth = std::map<std::string, std::vector<Event>>;

// Clip (or recording) id -> duration in seconds.
using DurationMap = std::map<std::string, double>;

struct DatasetTag {
  std::string name;
};

// Piecewise-constant class scores over [0, duration] of one clip.
//
// Row r holds the scores on [breakpoints[r], breakpoints[r + 1]). Scores are
// stored row-major, one column per class.
class ScoreTimeline {
 public:
  ScoreTimeline() = default;

  // Throws ValidationError when breakpoints are not strictly increasing from
  // 0, when the score count does not match, or when a score leaves [0, 1].
  ScoreTimeline(std::string clip_id, std::vector<std::string> class_labels,
                std::vector<double> breakpoints, std::vector<double> scores);

  const std::string& clip_id() const { return clip_id_; }
  const std::vector<std::string>& class_labels() const { return classes_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& scores() const { return scores_; }

  std::size_t num_rows() const { return breakpoints_.size() - 1; }
  std::size_t num_classes() const { return classes_.size(); }
  double duration() const { return breakpoints_.back(); }
  double onset(std::size_t row) const { return breakpoints_[row]; }
  double offset(std::size_t row) const { return breakpoints_[row + 1]; }
  double score(std::size_t row, std::size_t cls) const {
    return scores_[row * classes_.size() + cls];
  }

  std::optional<std::size_t> class_index(std::string_view label) const;
  // Throws SchemaError when the label is absent.
  std::size_t require_class(std::string_view label) const;
  std::vector<double> column(std::size_t cls) const;

  // Same timeline restricted to (and reordered as) `labels`.
  ScoreTimeline select_classes(std::span<const std::string> labels) const;
  ScoreTimeline with_clip_id(std::string clip_id) const;

  friend bool operator==(const ScoreTimeline&, const ScoreTimeline&) = default;

 private:
  std::string clip_id_;
  std::vector<std::string> classes_;
  std::vector<double> breakpoints_{0.0};
  std::vector<double> scores_;
};

// Per-unit integer weights of one bootstrap sample. A default-constructed
// object is the identity (weight 1 for every id); otherwise ids absent from
// the map weigh 0.
class SampleWeights {
 public:
  SampleWeights() = default;
  explicit SampleWeights(std::map<std::string, std::uint64_t> counts)
      : counts_(std::move(counts)), identity_(false) {}

  static SampleWeights identity() { return SampleWeights(); }
  // Weights counting each occurrence of an id in `ids`.
  static SampleWeights from_multiset(std::span<const std::string> ids);

  std::uint64_t operator()(const std::string& id) const;
  bool is_identity() const { return identity_; }

 private:
  std::map<std::string, std::uint64_t> counts_;
  bool identity_ = true;
};

// "clip.wav" -> "clip". Strips one trailing audio extension
// (.wav, .flac, .mp3, .ogg); other names are returned unchanged.
std::string audio_id(std::string_view filename);

// Events of one clip grouped per class label.
std::map<std::string, std::vector<Event>> group_by_label(
    std::span<const Event> events);

// Flattens a GroundTruth into one list, clip order then file order.
std::vector<Event> flatten(const GroundTruth& gt);

}  // namespace sedeval

#endif  // SEDEVAL_TYPES_HPP_
