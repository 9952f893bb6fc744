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

#include "sedeval/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sedeval/errors.hpp"
#include "sedeval/io.hpp"

namespace sedeval {

namespace {

std::string missing_message(const std::string& what,
                            const std::vector<std::string>& ids) {
  std::string msg = "missing scores for " + what + ":";
  for (const auto& id : ids) msg += " " + id;
  return msg;
}

ScoreTimeline prepare_timeline(const ScoreTimeline& t,
                               std::span<const std::string> classes,
                               const std::optional<FilterConfig>& filter) {
  auto selected = t.select_classes(classes);
  return filter ? median_filter(selected, *filter) : selected;
}

// Undefined auxiliary values are reported as NaN (JSON null).
template <typename Fn>
double or_nan(Fn&& fn) {
  try {
    return fn();
  } catch (const UndefinedRocError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::vector<std::string> evaluated_classes(const EvaluationBundle& bundle) {
  std::vector<std::string> out;
  auto add = [&](const std::vector<std::string>& cs) {
    for (const auto& c : cs) {
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  };
  if (bundle.strong) add(bundle.strong->classes);
  if (bundle.soft) add(bundle.soft->classes);
  return out;
}

RunScores prepare_run(const RawRunScores& raw, const EvaluationBundle& bundle,
                      const std::optional<FilterConfig>& filter,
                      double segment_length) {
  RunScores run;
  if (bundle.strong) {
    const auto& ds = *bundle.strong;
    std::vector<std::string> missing;
    for (const auto& [clip, duration] : ds.durations) {
      auto it = raw.strong.find(clip);
      if (it == raw.strong.end()) {
        missing.push_back(clip);
        continue;
      }
      if (std::abs(it->second.duration() - duration) > kTimeTolerance) {
        throw ValidationError("scores of '" + clip + "' end at " +
                              format_number(it->second.duration()) +
                              " s but the clip lasts " +
                              format_number(duration) + " s");
      }
      run.strong.emplace(clip,
                         prepare_timeline(it->second, ds.classes, filter));
    }
    if (!missing.empty()) {
      throw CoverageError(missing_message(ds.name + " clip(s)", missing));
    }
  }
  if (bundle.soft) {
    const auto& ds = *bundle.soft;
    std::vector<std::string> missing;
    for (const auto& [rec, duration] : ds.durations) {
      auto it = raw.soft.find(rec);
      if (it == raw.soft.end() || it->second.empty()) {
        missing.push_back(rec);
        continue;
      }
      std::vector<std::pair<ClipWindow, ScoreTimeline>> clips;
      clips.reserve(it->second.size());
      for (const auto& [window, timeline] : it->second) {
        clips.emplace_back(window,
                           prepare_timeline(timeline, ds.classes, filter));
      }
      auto matrix = reconstruct_segment_scores(clips, duration, segment_length);
      matrix.recording_id = rec;
      run.soft.emplace(rec, std::move(matrix));
    }
    if (!missing.empty()) {
      throw CoverageError(missing_message(ds.name + " recording(s)", missing));
    }
  }
  return run;
}

RunEvaluator::RunEvaluator(const EvaluationBundle& bundle,
                           const RunScores& scores, const EvalParams& params,
                           unsigned jobs)
    : bundle_(&bundle), params_(params) {
  params_.psds.validate();
  params_.segment.validate();
  if (bundle.strong) {
    const auto& ds = *bundle.strong;
    psd_ = PsdEvidence::build(scores.strong, ds.references, ds.durations,
                              ds.classes, params_.psds, jobs);
    if (params_.auxiliary) {
      std::vector<Event> detections;
      for (const auto& [clip, d] : ds.durations) {
        const auto& timeline = scores.strong.at(clip);
        auto ev = extract_events(timeline.with_clip_id(clip),
                                 params_.detection_threshold);
        detections.insert(detections.end(), ev.begin(), ev.end());
      }
      const auto refs = flatten(ds.references);
      collar_counts_ =
          collar_counts_by_clip(detections, refs, ds.classes, params_.collar);
      for (const auto& [clip, d] : ds.durations) {
        auto sm = segment_scores(scores.strong.at(clip),
                                 params_.segment.segment_length);
        sm.recording_id = clip;
        sm.duration = d;
        strong_segment_scores_.push_back(std::move(sm));
        std::span<const Event> events;
        if (auto it = ds.references.find(clip); it != ds.references.end()) {
          events = it->second;
        }
        strong_segment_labels_.push_back(segment_labels_from_events(
            clip, events, ds.classes, d, params_.segment.segment_length));
      }
    }
  }
  if (bundle.soft) {
    const auto& ds = *bundle.soft;
    std::vector<std::string> missing;
    for (const auto& [rec, d] : ds.durations) {
      auto it = scores.soft.find(rec);
      if (it == scores.soft.end()) {
        missing.push_back(rec);
        continue;
      }
      soft_segment_scores_.push_back(it->second);
      std::span<const SoftSegmentLabel> labels;
      if (auto lt = ds.labels.find(rec); lt != ds.labels.end()) {
        labels = lt->second;
      }
      soft_segment_labels_.push_back(segment_labels_from_soft(
          rec, labels, ds.classes, d, params_.segment.segment_length,
          params_.segment.binarization_threshold));
    }
    if (!missing.empty()) {
      throw CoverageError(missing_message(ds.name + " recording(s)", missing));
    }
  }
}

std::map<std::string, double> RunEvaluator::evaluate(
    const SampleWeights& strong_weights,
    const SampleWeights& soft_weights) const {
  std::map<std::string, double> out;
  if (bundle_->strong) {
    const auto& ds = *bundle_->strong;
    out[metric_names::kPsds1] = psds(psd_->roc(strong_weights));
    if (params_.auxiliary) {
      const std::string p = ds.name + ".";
      out[p + "segmpauc"] = or_nan([&] {
        return seg_mpauc(strong_segment_scores_, strong_segment_labels_,
                         ds.classes, params_.segment, strong_weights)
            .value;
      });
      out[p + "collar_f1"] =
          aggregate_f1(collar_counts_, ds.classes, strong_weights).macro_f1;
      auto fixed = segment_f1_er(
          strong_segment_scores_, strong_segment_labels_, ds.classes,
          ThresholdMode::fixed(params_.detection_threshold), strong_weights);
      auto optimal =
          segment_f1_er(strong_segment_scores_, strong_segment_labels_,
                        ds.classes, ThresholdMode::optimal(), strong_weights);
      out[p + "segment_f1_fixed"] = fixed.macro_f1;
      out[p + "segment_er_fixed"] = fixed.macro_er;
      out[p + "segment_f1_optimal"] = optimal.macro_f1;
      out[p + "segment_er_optimal"] = optimal.macro_er;
    }
  }
  if (bundle_->soft) {
    const auto& ds = *bundle_->soft;
    out[metric_names::kSegMpauc] =
        seg_mpauc(soft_segment_scores_, soft_segment_labels_, ds.classes,
                  params_.segment, soft_weights)
            .value;
    if (params_.auxiliary) {
      const std::string p = ds.name + ".";
      auto fixed = segment_f1_er(
          soft_segment_scores_, soft_segment_labels_, ds.classes,
          ThresholdMode::fixed(params_.detection_threshold), soft_weights);
      auto optimal =
          segment_f1_er(soft_segment_scores_, soft_segment_labels_, ds.classes,
                        ThresholdMode::optimal(), soft_weights);
      out[p + "segment_f1_fixed"] = fixed.macro_f1;
      out[p + "segment_er_fixed"] = fixed.macro_er;
      out[p + "segment_f1_optimal"] = optimal.macro_f1;
      out[p + "segment_er_optimal"] = optimal.macro_er;
    }
  }
  return out;
}

RunDetails RunEvaluator::details() const {
  RunDetails d;
  if (bundle_->strong) {
    const auto& ds = *bundle_->strong;
    d.psd_roc = psd_->roc();
    d.psds1 = psds(*d.psd_roc);
    if (params_.auxiliary) {
      d.collar = aggregate_f1(collar_counts_, ds.classes);
      try {
        d.strong_auc = seg_mpauc(strong_segment_scores_, strong_segment_labels_,
                                 ds.classes, params_.segment);
      } catch (const UndefinedRocError&) {
        d.strong_auc.value = std::numeric_limits<double>::quiet_NaN();
        d.strong_auc.skipped = ds.classes;
      }
      d.strong_fixed = segment_f1_er(
          strong_segment_scores_, strong_segment_labels_, ds.classes,
          ThresholdMode::fixed(params_.detection_threshold));
      d.strong_optimal =
          segment_f1_er(strong_segment_scores_, strong_segment_labels_,
                        ds.classes, ThresholdMode::optimal());
    }
  }
  if (bundle_->soft) {
    const auto& ds = *bundle_->soft;
    d.soft_auc = seg_mpauc(soft_segment_scores_, soft_segment_labels_,
                           ds.classes, params_.segment);
    if (params_.auxiliary) {
      d.soft_fixed = segment_f1_er(
          soft_segment_scores_, soft_segment_labels_, ds.classes,
          ThresholdMode::fixed(params_.detection_threshold));
      d.soft_optimal = segment_f1_er(soft_segment_scores_, soft_segment_labels_,
                                     ds.classes, ThresholdMode::optimal());
    }
  }
  return d;
}

double primary_objective(const EvaluationBundle& bundle, const RunScores& run,
                         const EvalParams& params) {
  EvalParams primary = params;
  primary.auxiliary = false;
  const auto values = RunEvaluator(bundle, run, primary).evaluate();
  double sum = 0.0;
  for (const char* name : {metric_names::kPsds1, metric_names::kSegMpauc}) {
    if (auto it = values.find(name); it != values.end()) sum += it->second;
  }
  return sum;
}

TuningResult tune_filter_lengths(const EvaluationBundle& bundle,
                                 const RawRunScores& dev_scores,
                                 const EvalParams& params,
                                 std::span<const int> candidates, int budget,
                                 std::uint64_t seed, double frame_length,
                                 unsigned jobs) {
  const auto classes = evaluated_classes(bundle);
  auto objective = [&](const FilterConfig& config) {
    const auto run = prepare_run(dev_scores, bundle, config,
                                 params.segment.segment_length);
    return primary_objective(bundle, run, params);
  };
  return tune_filter_lengths(classes, frame_length, candidates, budget, seed,
                             objective, jobs);
}

}  // namespace sedeval
