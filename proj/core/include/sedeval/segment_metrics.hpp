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

// Segment-level ROC, macro partial AUC and segment-based F1 / error rate.
// Segments are pooled over recordings within a class and averaged across
// classes.

#ifndef SEDEVAL_SEGMENT_METRICS_HPP_
#define SEDEVAL_SEGMENT_METRICS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sedeval/longform.hpp"
#include "sedeval/types.hpp"

namespace sedeval {

struct SegMpaucParams {
  double max_fpr = 0.1;
  double segment_length = 1.0;  // seconds
  double binarization_threshold = 0.5;

  void validate() const;
  friend bool operator==(const SegMpaucParams&, const SegMpaucParams&) = default;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;
  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

struct SegmentRoc {
  std::string label;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
  // Starts at (0, 0) with threshold +inf; one point per distinct score in
  // descending order; ends at (1, 1).
  std::vector<RocPoint> points;
};

// Pairs every label matrix with the score matrix of the same recording.
// Recordings are weighted by `weights` keyed on recording id. Throws
// UndefinedRocError when the pooled class has no positive or no negative
// segment, SchemaError on misaligned matrices.
SegmentRoc segment_roc(std::span<const SegmentScoreMatrix> scores,
                       std::span<const SegmentLabelMatrix> labels,
                       std::string_view label,
                       const SampleWeights& weights = {});

// Trapezoidal area for fpr in [0, max_fpr] with linear interpolation at the
// cut, divided by max_fpr.
double partial_auc(const SegmentRoc& roc, double max_fpr);

// Unweighted mean of partial_auc over `rocs`. Throws UndefinedRocError when
// `rocs` is empty.
double seg_mpauc(std::span<const SegmentRoc> rocs, const SegMpaucParams& params);

struct SegMpaucResult {
  double value = 0.0;
  std::map<std::string, double> per_class;
  std::vector<std::string> skipped;  // classes with an undefined ROC
};

SegMpaucResult seg_mpauc(std::span<const SegmentScoreMatrix> scores,
                         std::span<const SegmentLabelMatrix> labels,
                         std::span<const std::string> classes,
                         const SegMpaucParams& params,
                         const SampleWeights& weights = {});

struct ThresholdMode {
  std::optional<double> fixed_threshold;  // nullopt: per-class optimum

  static ThresholdMode fixed(double t) { return {t}; }
  static ThresholdMode optimal() { return {std::nullopt}; }
};

struct SegmentClassStats {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t positives = 0;
  double threshold = 0.0;
  double f1 = 0.0;
  double error_rate = 0.0;  // (FP + FN) / positives; may exceed 1
};

struct SegmentF1ErResult {
  std::map<std::string, SegmentClassStats> per_class;
  double macro_f1 = 0.0;  // over classes with positives
  double macro_er = 0.0;
};

// Binarizes at score >= threshold. In optimal mode each class takes the
// distinct segment score maximizing its F1, the lowest one on ties.
SegmentF1ErResult segment_f1_er(std::span<const SegmentScoreMatrix> scores,
                                std::span<const SegmentLabelMatrix> labels,
                                std::span<const std::string> classes,
                                const ThresholdMode& mode,
                                const SampleWeights& weights = {});

// "class,<metric>..." table of per-class values.
std::string format_segment_table(const SegMpaucResult& auc,
                                 const SegmentF1ErResult& fixed,
                                 const SegmentF1ErResult& optimal);

}  // namespace sedeval

#endif  // SEDEVAL_SEGMENT_METRICS_HPP_
