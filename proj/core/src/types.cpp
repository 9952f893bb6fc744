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

#include "sedeval/types.hpp"

#include <algorithm>
#include <array>
#include <tuple>

#include "sedeval/errors.hpp"

namespace sedeval {

bool operator<(const Event& a, const Event& b) {
  return std::tie(a.clip_id, a.label, a.onset, a.offset) <
         std::tie(b.clip_id, b.label, b.onset, b.offset);
}

bool operator<(const SoftSegmentLabel& a, const SoftSegmentLabel& b) {
  return std::tie(a.clip_id, a.label, a.onset, a.offset, a.confidence) <
         std::tie(b.clip_id, b.label, b.onset, b.offset, b.confidence);
}

ScoreTimeline::ScoreTimeline(std::string clip_id,
                             std::vector<std::string> class_labels,
                             std::vector<double> breakpoints,
                             std::vector<double> scores)
    : clip_id_(std::move(clip_id)),
      classes_(std::move(class_labels)),
      breakpoints_(std::move(breakpoints)),
      scores_(std::move(scores)) {
  if (breakpoints_.size() < 2) {
    throw ValidationError("timeline '" + clip_id_ +
                          "' needs at least one interval");
  }
  if (breakpoints_.front() != 0.0) {
    throw ValidationError("timeline '" + clip_id_ +
                          "' must start at 0, starts at " +
                          std::to_string(breakpoints_.front()));
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1])) {
      throw ValidationError("timeline '" + clip_id_ +
                            "' breakpoints not strictly increasing at index " +
                            std::to_string(i));
    }
  }
  if (scores_.size() != num_rows() * classes_.size()) {
    throw ValidationError("timeline '" + clip_id_ + "' has " +
                          std::to_string(scores_.size()) + " scores, expected " +
                          std::to_string(num_rows() * classes_.size()));
  }
  for (double s : scores_) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw ValidationError("timeline '" + clip_id_ + "' score " +
                            std::to_string(s) + " outside [0, 1]");
    }
  }
}

std::optional<std::size_t> ScoreTimeline::class_index(
    std::string_view label) const {
  auto it = std::find(classes_.begin(), classes_.end(), label);
  if (it == classes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - classes_.begin());
}

std::size_t ScoreTimeline::require_class(std::string_view label) const {
  auto idx = class_index(label);
  if (!idx) {
    throw SchemaError("timeline '" + clip_id_ + "' has no class '" +
                      std::string(label) + "'");
  }
  return *idx;
}

std::vector<double> ScoreTimeline::column(std::size_t cls) const {
  std::vector<double> out(num_rows());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = score(r, cls);
  return out;
}

ScoreTimeline ScoreTimeline::select_classes(
    std::span<const std::string> labels) const {
  std::vector<std::size_t> idx;
  idx.reserve(labels.size());
  for (const auto& l : labels) idx.push_back(require_class(l));
  std::vector<double> out;
  out.reserve(num_rows() * idx.size());
  for (std::size_t r = 0; r < num_rows(); ++r) {
    for (std::size_t c : idx) out.push_back(score(r, c));
  }
  return ScoreTimeline(clip_id_, {labels.begin(), labels.end()}, breakpoints_,
                       std::move(out));
}

ScoreTimeline ScoreTimeline::with_clip_id(std::string clip_id) const {
  ScoreTimeline copy = *this;
  copy.clip_id_ = std::move(clip_id);
  return copy;
}

SampleWeights SampleWeights::from_multiset(std::span<const std::string> ids) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& id : ids) ++counts[id];
  return SampleWeights(std::move(counts));
}

std::uint64_t SampleWeights::operator()(const std::string& id) const {
  if (identity_) return 1;
  auto it = counts_.find(id);
  return it == counts_.end() ? 0 : it->second;
}

std::string audio_id(std::string_view filename) {
  static constexpr std::array<std::string_view, 4> kExtensions = {
      ".wav", ".flac", ".mp3", ".ogg"};
  for (auto ext : kExtensions) {
    if (filename.size() > ext.size() && filename.ends_with(ext)) {
      return std::string(filename.substr(0, filename.size() - ext.size()));
    }
  }
  return std::string(filename);
}

std::map<std::string, std::vector<Event>> group_by_label(
    std::span<const Event> events) {
  std::map<std::string, std::vector<Event>> out;
  for (const auto& e : events) out[e.label].push_back(e);
  return out;
}

std::vector<Event> flatten(const GroundTruth& gt) {
  std::vector<Event> out;
  for (const auto& [clip, events] : gt) {
    out.insert(out.end(), events.begin(), events.end());
  }
  return out;
}

}  // namespace sedeval
