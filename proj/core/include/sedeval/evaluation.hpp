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

// Evaluation of one system run over the two dataset families:
//
//   strong (event-annotated clips, e.g. DESED): PSDS1 is primary; segMPAUC,
//     collar F1 and segment F1/ER are auxiliary.
//   soft (long-form recordings with soft segment labels, e.g. MAESTRO):
//     segMPAUC is primary; segment F1/ER are auxiliary.
//
// Each family is scored only on its own classes; the cross cells are never
// evaluated.

#ifndef SEDEVAL_EVALUATION_HPP_
#define SEDEVAL_EVALUATION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sedeval/event_metrics.hpp"
#include "sedeval/longform.hpp"
#include "sedeval/postprocess.hpp"
#include "sedeval/segment_metrics.hpp"
#include "sedeval/types.hpp"

namespace sedeval {

struct StrongDataset {
  std::string name = "desed";
  std::vector<std::string> classes;
  GroundTruth references;
  DurationMap durations;  // the evaluated clips
};

struct SoftDataset {
  std::string name = "maestro";
  std::vector<std::string> classes;
  std::map<std::string, std::vector<SoftSegmentLabel>> labels;  // by recording
  DurationMap durations;  // the evaluated recordings
};

struct EvaluationBundle {
  std::optional<StrongDataset> strong;
  std::optional<SoftDataset> soft;
};

// Clip-level system output as read from disk.
struct RawRunScores {
  std::map<std::string, ScoreTimeline> strong;  // clip id -> timeline
  std::map<std::string, std::vector<std::pair<ClipWindow, ScoreTimeline>>>
      soft;  // recording id -> clips
};

// Scores ready for metric computation: post-processed strong timelines and
// reconstructed soft segment matrices.
struct RunScores {
  std::map<std::string, ScoreTimeline> strong;
  std::map<std::string, SegmentScoreMatrix> soft;
};

struct EvalParams {
  PsdsParams psds;
  SegMpaucParams segment;
  CollarParams collar;
  double detection_threshold = 0.5;
  // When false only the two primary metrics are computed.
  bool auxiliary = true;
};

namespace metric_names {
inline constexpr const char* kPsds1 = "psds1";
inline constexpr const char* kSegMpauc = "segmpauc";
}  // namespace metric_names

// Restricts every timeline to its family's classes, applies the median filter
// when given and reconstructs soft recordings. Missing clips or recordings
// raise CoverageError listing the ids.
RunScores prepare_run(const RawRunScores& raw, const EvaluationBundle& bundle,
                      const std::optional<FilterConfig>& filter,
                      double segment_length);

// Per-class detail of one run over the unresampled data.
struct RunDetails {
  std::optional<PsdRoc> psd_roc;
  double psds1 = 0.0;
  F1Result collar;
  SegMpaucResult strong_auc;
  SegmentF1ErResult strong_fixed;
  SegmentF1ErResult strong_optimal;
  SegMpaucResult soft_auc;
  SegmentF1ErResult soft_fixed;
  SegmentF1ErResult soft_optimal;
};

// Everything that does not depend on the bootstrap sample is computed once
// in the constructor; evaluate() only re-weights.
class RunEvaluator {
 public:
  RunEvaluator(const EvaluationBundle& bundle, const RunScores& scores,
               const EvalParams& params, unsigned jobs = 1);

  // Metric name -> value for one resampling of strong clips and soft
  // recordings.
  std::map<std::string, double> evaluate(
      const SampleWeights& strong_weights = {},
      const SampleWeights& soft_weights = {}) const;

  RunDetails details() const;

 private:
  const EvaluationBundle* bundle_;
  EvalParams params_;
  std::optional<PsdEvidence> psd_;
  ClipF1Counts collar_counts_;
  std::vector<SegmentScoreMatrix> strong_segment_scores_;
  std::vector<SegmentLabelMatrix> strong_segment_labels_;
  std::vector<SegmentScoreMatrix> soft_segment_scores_;
  std::vector<SegmentLabelMatrix> soft_segment_labels_;
};

// PSDS1 + segMPAUC of one run, the filter-tuning objective.
double primary_objective(const EvaluationBundle& bundle, const RunScores& run,
                         const EvalParams& params);

// Filter-length search on a development bundle. Classes are the strong
// classes followed by the soft ones (deduplicated).
TuningResult tune_filter_lengths(const EvaluationBundle& bundle,
                                 const RawRunScores& dev_scores,
                                 const EvalParams& params,
                                 std::span<const int> candidates, int budget,
                                 std::uint64_t seed, double frame_length,
                                 unsigned jobs = 1);

// Union of the evaluated classes, strong family first.
std::vector<std::string> evaluated_classes(const EvaluationBundle& bundle);

}  // namespace sedeval

#endif  // SEDEVAL_EVALUATION_HPP_
