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

#include <benchmark/benchmark.h>

#include <random>

#include "sedeval/event_metrics.hpp"
#include "sedeval/postprocess.hpp"
#include "sedeval/segment_metrics.hpp"

namespace {

using namespace sedeval;

const std::vector<std::string> kClasses{"a", "b", "c", "d", "e"};

// Clips of 10 s scored on 0.064 s frames, a few references per class.
struct Corpus {
  std::map<std::string, ScoreTimeline> scores;
  GroundTruth refs;
  DurationMap durations;
};

Corpus make_corpus(int clips) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Corpus c;
  for (int k = 0; k < clips; ++k) {
    const std::string id = "clip" + std::to_string(k) + ".wav";
    c.durations[id] = 10.0;
    std::vector<double> bps;
    for (int f = 0; f < 156; ++f) bps.push_back(f * 0.064);
    bps.push_back(10.0);
    std::vector<double> vals;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
      for (std::size_t j = 0; j < kClasses.size(); ++j) vals.push_back(u(rng));
    }
    c.scores.emplace(id, ScoreTimeline(id, kClasses, bps, vals));
    for (const auto& label : kClasses) {
      const double on = u(rng) * 8.0;
      c.refs[id].push_back({id, on, on + 0.5 + u(rng) * 1.5, label});
    }
  }
  return c;
}

void BM_PsdRoc(benchmark::State& state) {
  auto c = make_corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto roc = compute_psd_roc(c.scores, c.refs, PsdsParams{}, c.durations, kClasses);
    benchmark::DoNotOptimize(psds(roc));
  }
}
BENCHMARK(BM_PsdRoc)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_PsdResample(benchmark::State& state) {
  auto c = make_corpus(50);
  auto ev = PsdEvidence::build(c.scores, c.refs, c.durations, kClasses, PsdsParams{});
  for (auto _ : state) benchmark::DoNotOptimize(psds(ev.roc()));
}
BENCHMARK(BM_PsdResample)->Unit(benchmark::kMillisecond);

void BM_SegmentRoc(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<SegmentScoreMatrix> scores(1);
  std::vector<SegmentLabelMatrix> labels(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  scores[0].recording_id = labels[0].recording_id = "r";
  scores[0].duration = labels[0].duration = static_cast<double>(n);
  scores[0].num_segments = labels[0].num_segments = n;
  scores[0].class_labels = labels[0].class_labels = {"x"};
  for (std::size_t i = 0; i < n; ++i) {
    scores[0].values.push_back(u(rng));
    labels[0].values.push_back(u(rng) < 0.3);
  }
  for (auto _ : state) {
    auto roc = segment_roc(scores, labels, "x");
    benchmark::DoNotOptimize(partial_auc(roc, 0.1));
  }
}
BENCHMARK(BM_SegmentRoc)->Arg(1000)->Arg(100000);

void BM_MedianFilter(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> frames(10000);
  for (auto& f : frames) f = u(rng);
  const int length = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(median_filter_frames(frames, length));
}
BENCHMARK(BM_MedianFilter)->Arg(3)->Arg(21);

}  // namespace

BENCHMARK_MAIN();
