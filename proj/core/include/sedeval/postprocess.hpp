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

// Class-wise median filtering, event extraction and filter-length search.

#ifndef SEDEVAL_POSTPROCESS_HPP_
#define SEDEVAL_POSTPROCESS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sedeval/types.hpp"

namespace sedeval {

inline constexpr double kDefaultFrameLength = 0.064;

struct FilterConfig {
  double frame_length = kDefaultFrameLength;
  std::map<std::string, int> lengths;  // class -> odd window length, frames

  // Throws ValidationError on an even or non-positive length or a
  // non-positive frame length.
  void validate() const;
  // Throws SchemaError when the class is not configured.
  int length_for(const std::string& label) const;

  friend bool operator==(const FilterConfig&, const FilterConfig&) = default;
};

// "frame_length_s\t<seconds>" line, then "class\tlength_frames" rows.
FilterConfig parse_filter_config(std::string_view tsv_text);
std::string format_filter_config(const FilterConfig& config);

// Resamples onto frames of `frame_length` (the last frame may be shorter);
// each frame takes the duration-weighted mean of the scores inside it.
ScoreTimeline resample_to_frames(const ScoreTimeline& timeline,
                                 double frame_length);

// Running median of odd window `length` with replicate padding.
std::vector<double> median_filter_frames(std::span<const double> frames,
                                         int length);

// Frame resampling followed by a per-class running median.
ScoreTimeline median_filter(const ScoreTimeline& timeline,
                            const FilterConfig& config);

// Maximal runs of rows with score >= threshold, per class, in class order
// then time order. Classes missing from `thresholds` raise SchemaError.
std::vector<Event> extract_events(const ScoreTimeline& timeline,
                                  const std::map<std::string, double>& thresholds);
std::vector<Event> extract_events(const ScoreTimeline& timeline,
                                  double threshold);
// Runs of one class column only.
std::vector<Event> extract_class_events(const ScoreTimeline& timeline,
                                        std::size_t cls, double threshold);

using FilterObjective = std::function<double(const FilterConfig&)>;

struct TuningResult {
  FilterConfig best;
  std::size_t best_index = 0;
  double best_objective = 0.0;
  std::vector<FilterConfig> trials;
  std::vector<double> objectives;
  std::vector<double> running_best;
};

// Seeded random search: `budget` configurations, each drawing every class's
// length uniformly from `candidates` (classes in the given order), all drawn
// before evaluation. Returns the argmax; ties go to the earlier trial.
// Evaluation may run on `jobs` threads without changing the result.
TuningResult tune_filter_lengths(std::span<const std::string> classes,
                                 double frame_length,
                                 std::span<const int> candidates, int budget,
                                 std::uint64_t seed,
                                 const FilterObjective& objective,
                                 unsigned jobs = 1);

}  // namespace sedeval

#endif  // SEDEVAL_POSTPROCESS_HPP_
