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

// Intersection-based event matching, the threshold-independent PSD-ROC,
// PSDS and collar-based F1.
//
// A detection is "relevant" when the summed intersection with same-class
// references covers at least rho_dtc of its duration; other detections are
// false positives. A reference is a true positive when the summed
// intersection with relevant detections covers at least rho_gtc of it.

#ifndef SEDEVAL_EVENT_METRICS_HPP_
#define SEDEVAL_EVENT_METRICS_HPP_

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sedeval/types.hpp"

namespace sedeval {

struct PsdsParams {
  double rho_dtc = 0.7;
  double rho_gtc = 0.7;
  double alpha_st = 1.0;
  double e_max = 100.0;  // false positives per hour

  void validate() const;
  friend bool operator==(const PsdsParams&, const PsdsParams&) = default;
};

struct MatchCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t references = 0;
  std::uint64_t detections = 0;
  friend bool operator==(const MatchCounts&, const MatchCounts&) = default;
};

// Per-class DTC/GTC counts. Intersections are only taken within the same
// clip and class. Throws ValidationError on a zero-length detection.
std::map<std::string, MatchCounts> match_events_dtc_gtc(
    std::span<const Event> detections, std::span<const Event> references,
    double rho_dtc, double rho_gtc);

struct OperatingPoint {
  double threshold = 0.0;
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  double tp_rate = 0.0;
  double fp_rate = 0.0;  // per hour
  friend bool operator==(const OperatingPoint&, const OperatingPoint&) = default;
};

struct ClassRoc {
  std::string label;
  std::uint64_t references = 0;
  // One point per distinct score value of the class, descending threshold,
  // preceded by a sentinel at +inf (no detections).
  std::vector<OperatingPoint> points;
  // Running maximum of tp_rate over fp_rate: ascending fp breakpoints, each
  // with the best tp_rate achievable at that false-positive budget.
  std::vector<double> step_fp_rates;
  std::vector<double> step_tp_rates;

  double tp_rate_at(double fp_rate) const;
};

struct PsdRoc {
  PsdsParams params;
  double audio_hours = 0.0;
  std::vector<ClassRoc> classes;      // classes with references
  std::vector<std::string> excluded;  // classes without references
  // Effective curve on [0, e_max]: eTPR is constant from fp_rates[i] up to the
  // next breakpoint.
  std::vector<double> fp_rates;
  std::vector<double> etpr;

  double etpr_at(double fp_rate) const;
};

// Per-clip change points of the DTC/GTC counts, built once and re-weighted
// per bootstrap sample.
//
// Counts at threshold t depend only on the clip's own score values >= t, so
// each clip contributes signed (tp, fp) deltas at its distinct values. Summing
// deltas over clips in descending threshold order gives exactly the counts a
// full re-extraction at every threshold would produce.
class PsdEvidence {
 public:
  // Evaluated clips are the keys of `durations`; each needs a timeline in
  // `scores` (CoverageError otherwise). References of other clips raise
  // SchemaError. Only `classes` are evaluated.
  static PsdEvidence build(const std::map<std::string, ScoreTimeline>& scores,
                           const GroundTruth& references,
                           const DurationMap& durations,
                           std::span<const std::string> classes,
                           const PsdsParams& params, unsigned jobs = 1);

  // Clips weighted by `weights` (duplicated clips duplicate events, false
  // positives and audio duration).
  PsdRoc roc(const SampleWeights& weights = {}) const;

  const std::vector<std::string>& classes() const { return classes_; }
  const PsdsParams& params() const { return params_; }

 private:
  struct Delta {
    double threshold;
    std::int64_t tp;
    std::int64_t fp;
  };
  struct ClipEvidence {
    std::string clip_id;
    double duration = 0.0;
    std::vector<std::uint64_t> references;  // per class
    std::vector<std::vector<Delta>> deltas;  // per class, descending
  };

  std::vector<std::string> classes_;
  PsdsParams params_;
  std::vector<ClipEvidence> clips_;
};

PsdRoc compute_psd_roc(const std::map<std::string, ScoreTimeline>& scores,
                       const GroundTruth& references, const PsdsParams& params,
                       const DurationMap& durations,
                       std::span<const std::string> classes);

// Normalized area under max(0, eTPR) on [0, e_max], integrated exactly over
// the step breakpoints.
double psds(const PsdRoc& curve);
// Same class curves re-summarized with `params`' alpha_st and e_max. The
// detection criteria must match the ones the curve was built with.
double psds(const PsdRoc& curve, const PsdsParams& params);

// "fp_rate,<class tp_rate>...,etpr" rows at every effective breakpoint.
std::string format_roc_csv(const PsdRoc& curve);

struct CollarParams {
  double onset_collar = 0.2;        // seconds
  double offset_collar_rate = 0.2;  // fraction of reference duration
  friend bool operator==(const CollarParams&, const CollarParams&) = default;
};

struct F1Counts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  double precision() const;
  double recall() const;
  // 2TP / (2TP + FP + FN); 0 when the denominator is 0.
  double f1() const;
  F1Counts& operator+=(const F1Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const F1Counts&, const F1Counts&) = default;
};

struct F1Result {
  std::map<std::string, F1Counts> per_class;
  double macro_f1 = 0.0;  // over classes with at least one reference
};

// One-to-one greedy matching per clip and class: references in ascending
// onset order, each taking the earliest-onset unmatched detection whose onset
// lies within onset_collar and whose offset lies within
// max(onset_collar, offset_collar_rate * reference duration).
F1Result collar_f1(std::span<const Event> detections,
                   std::span<const Event> references,
                   std::span<const std::string> classes,
                   const CollarParams& params);

// Collar counts per clip (outer) and class (inner, in `classes` order), for
// re-weighting under bootstrap samples.
using ClipF1Counts = std::map<std::string, std::vector<F1Counts>>;
ClipF1Counts collar_counts_by_clip(std::span<const Event> detections,
                                   std::span<const Event> references,
                                   std::span<const std::string> classes,
                                   const CollarParams& params);
F1Result aggregate_f1(const ClipF1Counts& counts,
                      std::span<const std::string> classes,
                      const SampleWeights& weights = {});

}  // namespace sedeval

#endif  // SEDEVAL_EVENT_METRICS_HPP_
