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

#include "sedeval/postprocess.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "sedeval/errors.hpp"
#include "sedeval/io.hpp"
#include "sedeval/longform.hpp"
#include "sedeval/parallel.hpp"
#include "sedeval/random.hpp"

namespace sedeval {

namespace {

void check_length(int length, const std::string& where) {
  if (length < 1 || length % 2 == 0) {
    throw ValidationError("median filter length " + std::to_string(length) +
                          " for " + where + " must be odd and >= 1");
  }
}

}  // namespace

void FilterConfig::validate() const {
  if (!(frame_length > 0.0)) {
    throw ValidationError("frame length must be positive");
  }
  for (const auto& [label, length] : lengths) {
    check_length(length, "'" + label + "'");
  }
}

int FilterConfig::length_for(const std::string& label) const {
  auto it = lengths.find(label);
  if (it == lengths.end()) {
    throw SchemaError("filter config has no length for class '" + label + "'");
  }
  return it->second;
}

FilterConfig parse_filter_config(std::string_view tsv_text) {
  FilterConfig config;
  config.lengths.clear();
  auto lines = split_lines(tsv_text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto fields = split_fields(lines[i]);
    if (fields.size() == 1 &&
        fields[0].find_first_not_of(" \r") == std::string_view::npos) {
      continue;
    }
    if (fields.size() != 2) {
      throw ParseError("expected 2 tab-separated columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    if (fields[0] == "frame_length_s") {
      auto v = parse_number(fields[1]);
      if (!v) throw ParseError("non-numeric frame length", line_no);
      config.frame_length = *v;
      continue;
    }
    if (fields[0] == "class" && fields[1] == "length_frames") continue;
    int length = 0;
    auto [ptr, ec] = std::from_chars(
        fields[1].data(), fields[1].data() + fields[1].size(), length);
    if (ec != std::errc() || ptr != fields[1].data() + fields[1].size()) {
      throw ParseError("non-integer filter length '" + std::string(fields[1]) +
                           "'",
                       line_no);
    }
    if (!config.lengths.emplace(std::string(fields[0]), length).second) {
      throw ValidationError("duplicate class '" + std::string(fields[0]) +
                            "' at line " + std::to_string(line_no));
    }
  }
  config.validate();
  return config;
}

std::string format_filter_config(const FilterConfig& config) {
  std::string out = "frame_length_s\t" + format_number(config.frame_length) +
                    "\nclass\tlength_frames\n";
  for (const auto& [label, length] : config.lengths) {
    out += label + '\t' + std::to_string(length) + '\n';
  }
  return out;
}

ScoreTimeline resample_to_frames(const ScoreTimeline& timeline,
                                 double frame_length) {
  if (!(frame_length > 0.0)) {
    throw ValidationError("frame length must be positive");
  }
  const double duration = timeline.duration();
  const std::size_t n_frames = segment_count(duration, frame_length);
  const std::size_t n_classes = timeline.num_classes();

  std::vector<double> breakpoints(n_frames + 1);
  for (std::size_t k = 0; k < n_frames; ++k) {
    breakpoints[k] = static_cast<double>(k) * frame_length;
  }
  breakpoints[n_frames] = duration;

  std::vector<double> scores(n_frames * n_classes, 0.0);
  std::size_t row = 0;
  for (std::size_t k = 0; k < n_frames; ++k) {
    const double lo = breakpoints[k];
    const double hi = breakpoints[k + 1];
    while (row < timeline.num_rows() && timeline.offset(row) <= lo) ++row;
    double covered = 0.0;
    for (std::size_t r = row; r < timeline.num_rows() && timeline.onset(r) < hi;
         ++r) {
      const double w =
          std::min(hi, timeline.offset(r)) - std::max(lo, timeline.onset(r));
      if (w <= 0.0) continue;
      covered += w;
      for (std::size_t c = 0; c < n_classes; ++c) {
        scores[k * n_classes + c] += w * timeline.score(r, c);
      }
    }
    for (std::size_t c = 0; c < n_classes; ++c) {
      // Clamp guards the last ulp of rounding in the weighted mean.
      scores[k * n_classes + c] =
          std::clamp(scores[k * n_classes + c] / covered, 0.0, 1.0);
    }
  }
  return ScoreTimeline(timeline.clip_id(), timeline.class_labels(),
                       std::move(breakpoints), std::move(scores));
}

std::vector<double> median_filter_frames(std::span<const double> frames,
                                         int length) {
  check_length(length, "frames");
  const auto n = static_cast<std::ptrdiff_t>(frames.size());
  const std::ptrdiff_t half = length / 2;
  std::vector<double> out(frames.size());
  std::vector<double> window(static_cast<std::size_t>(length));
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t k = -half; k <= half; ++k) {
      const auto j = std::clamp<std::ptrdiff_t>(i + k, 0, n - 1);
      window[static_cast<std::size_t>(k + half)] =
          frames[static_cast<std::size_t>(j)];
    }
    auto mid = window.begin() + half;
    std::nth_element(window.begin(), mid, window.end());
    out[static_cast<std::size_t>(i)] = *mid;
  }
  return out;
}

ScoreTimeline median_filter(const ScoreTimeline& timeline,
                            const FilterConfig& config) {
  config.validate();
  auto frames = resample_to_frames(timeline, config.frame_length);
  const std::size_t n_classes = frames.num_classes();
  std::vector<double> scores = frames.scores();
  for (std::size_t c = 0; c < n_classes; ++c) {
    const int length = config.length_for(frames.class_labels()[c]);
    if (length == 1) continue;
    auto filtered = median_filter_frames(frames.column(c), length);
    for (std::size_t r = 0; r < filtered.size(); ++r) {
      scores[r * n_classes + c] = filtered[r];
    }
  }
  return ScoreTimeline(frames.clip_id(), frames.class_labels(),
                       frames.breakpoints(), std::move(scores));
}

std::vector<Event> extract_class_events(const ScoreTimeline& timeline,
                                        std::size_t cls, double threshold) {
  std::vector<Event> events;
  const auto& label = timeline.class_labels()[cls];
  std::size_t r = 0;
  while (r < timeline.num_rows()) {
    if (timeline.score(r, cls) < threshold) {
      ++r;
      continue;
    }
    std::size_t end = r;
    while (end + 1 < timeline.num_rows() &&
           timeline.score(end + 1, cls) >= threshold) {
      ++end;
    }
    events.push_back(
        {timeline.clip_id(), timeline.onset(r), timeline.offset(end), label});
    r = end + 1;
  }
  return events;
}

std::vector<Event> extract_events(
    const ScoreTimeline& timeline,
    const std::map<std::string, double>& thresholds) {
  std::vector<Event> events;
  for (std::size_t c = 0; c < timeline.num_classes(); ++c) {
    auto it = thresholds.find(timeline.class_labels()[c]);
    if (it == thresholds.end()) {
      throw SchemaError("no threshold for class '" +
                        timeline.class_labels()[c] + "'");
    }
    auto ev = extract_class_events(timeline, c, it->second);
    events.insert(events.end(), ev.begin(), ev.end());
  }
  return events;
}

std::vector<Event> extract_events(const ScoreTimeline& timeline,
                                  double threshold) {
  std::vector<Event> events;
  for (std::size_t c = 0; c < timeline.num_classes(); ++c) {
    auto ev = extract_class_events(timeline, c, threshold);
    events.insert(events.end(), ev.begin(), ev.end());
  }
  return events;
}

TuningResult tune_filter_lengths(std::span<const std::string> classes,
                                 double frame_length,
                                 std::span<const int> candidates, int budget,
                                 std::uint64_t seed,
                                 const FilterObjective& objective,
                                 unsigned jobs) {
  if (candidates.empty()) {
    throw ValidationError("filter-length candidate list is empty");
  }
  for (int c : candidates) check_length(c, "candidate");
  if (budget < 1) throw ValidationError("tuning budget must be >= 1");

  TuningResult result;
  DeterministicRng rng(seed);
  result.trials.resize(static_cast<std::size_t>(budget));
  for (auto& trial : result.trials) {
    trial.frame_length = frame_length;
    for (const auto& label : classes) {
      trial.lengths[label] =
          candidates[static_cast<std::size_t>(rng.below(candidates.size()))];
    }
  }
  result.objectives.resize(result.trials.size());
  parallel_for(result.trials.size(), jobs, [&](std::size_t i) {
    result.objectives[i] = objective(result.trials[i]);
  });

  result.running_best.resize(result.trials.size());
  for (std::size_t i = 0; i < result.trials.size(); ++i) {
    if (i == 0 || result.objectives[i] > result.best_objective) {
      result.best_objective = result.objectives[i];
      result.best_index = i;
    }
    result.running_best[i] = result.best_objective;
  }
  result.best = result.trials[result.best_index];
  return result;
}

}  // namespace sedeval
