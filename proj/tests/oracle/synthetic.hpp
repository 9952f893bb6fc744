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

// Hand-built corpora with known metric values.

#ifndef SEDEVAL_TESTS_SYNTHETIC_HPP_
#define SEDEVAL_TESTS_SYNTHETIC_HPP_

#include <map>
#include <string>
#include <vector>

#include "naive_oracle.hpp"
#include "sedeval/evaluation.hpp"

namespace oracle {

// 1 inside the references of a class, 0 elsewhere. Rows break at every
// reference boundary of the clip.
std::map<std::string, sedeval::ScoreTimeline> oracle_scores(
    const sedeval::GroundTruth& references,
    const sedeval::DurationMap& durations,
    const std::vector<std::string>& classes);

// Single row per clip holding `value` for every class.
std::map<std::string, sedeval::ScoreTimeline> constant_scores(
    const sedeval::DurationMap& durations,
    const std::vector<std::string>& classes, double value);

// Segment scores copied from the labels.
std::vector<sedeval::SegmentScoreMatrix> oracle_segment_scores(
    const std::vector<sedeval::SegmentLabelMatrix>& labels);

std::vector<sedeval::SegmentScoreMatrix> constant_segment_scores(
    const std::vector<sedeval::SegmentLabelMatrix>& labels, double value);

// Four clips, three classes, every reference shorter than 70% of its clip
// so that a detection spanning a whole clip never satisfies the DTC.
struct StrongCorpus {
  std::vector<std::string> classes;
  sedeval::GroundTruth references;
  sedeval::DurationMap durations;
};
StrongCorpus small_strong_corpus();

// Two recordings labelled on 1 s segments, every class with positive and
// negative segments.
struct SoftCorpus {
  std::vector<std::string> classes;
  std::map<std::string, std::vector<sedeval::SoftSegmentLabel>> labels;
  sedeval::DurationMap durations;
};
SoftCorpus small_soft_corpus();

// Dev set whose references are isolated single frames with perfect scores.
// Any median window longer than one frame erases a class's detections, so
// the all-ones configuration is the unique maximizer of the objective.
struct TuningSet {
  sedeval::EvaluationBundle bundle;
  sedeval::RawRunScores scores;
  double frame_length = 0.25;
};
TuningSet short_event_dev_set();

// The two corpora above as an evaluation bundle.
sedeval::EvaluationBundle small_bundle();

// 1 inside references and positive segments, 0 elsewhere.
sedeval::RunScores oracle_run(const sedeval::EvaluationBundle& bundle);

// Oracle scores mixed with seeded uniform noise of the given weight.
sedeval::RunScores noisy_run(const sedeval::EvaluationBundle& bundle,
                             std::uint64_t seed, double noise);

}  // namespace oracle

#endif  // SEDEVAL_TESTS_SYNTHETIC_HPP_
