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

#include <gtest/gtest.h>

#include <random>

#include "sedeval/errors.hpp"
#include "sedeval/evaluation.hpp"
#include "sedeval/postprocess.hpp"
#include "synthetic.hpp"

namespace sedeval {
namespace {

ScoreTimeline frames_timeline(const std::vector<double>& frames, double frame) {
  std::vector<double> bps;
  for (std::size_t k = 0; k <= frames.size(); ++k) bps.push_back(static_cast<double>(k) * frame);
  return ScoreTimeline("c", {"a"}, bps, frames);
}

TEST(MedianFilter, Frames) {
  const std::vector<double> spike{0, 0, 1, 0, 0};
  const std::vector<double> dip{1, 1, 0, 1, 1};
  EXPECT_EQ(median_filter_frames(spike, 3), std::vector<double>(5, 0.0));
  EXPECT_EQ(median_filter_frames(dip, 3), std::vector<double>(5, 1.0));
}

TEST(MedianFilter, ReplicatePadding) {
  const std::vector<double> edge{1, 0, 0, 0, 0};
  // Left window [1, 1, 0] keeps the edge value.
  EXPECT_EQ(median_filter_frames(edge, 3), (std::vector<double>{1, 0, 0, 0, 0}));
}

TEST(MedianFilter, EvenLengthRejected) {
  const std::vector<double> f{0, 1};
  EXPECT_THROW(median_filter_frames(f, 2), ValidationError);
  FilterConfig cfg{0.5, {{"a", 4}}};
  EXPECT_THROW(median_filter(frames_timeline({0, 1}, 0.5), cfg), ValidationError);
}

TEST(MedianFilter, LengthOneIsIdentityAfterResampling) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> bps{0.0};
    std::vector<double> vals;
    for (int r = 0; r < 6; ++r) {
      bps.push_back(bps.back() + static_cast<double>(rng() % 9 + 1) * 0.1);
      vals.push_back(static_cast<double>(rng() % 101) / 100.0);
    }
    ScoreTimeline t("c", {"a"}, bps, vals);
    FilterConfig cfg{0.064, {{"a", 1}}};
    EXPECT_EQ(median_filter(t, cfg), resample_to_frames(t, 0.064));
  }
}

TEST(MedianFilter, ResamplesToFrameGrid) {
  ScoreTimeline t("c", {"a"}, {0.0, 0.75, 2.0}, {1.0, 0.0});
  auto r = resample_to_frames(t, 0.5);
  EXPECT_EQ(r.breakpoints(), (std::vector<double>{0, 0.5, 1.0, 1.5, 2.0}));
  EXPECT_NEAR(r.score(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(r.score(1, 0), 0.5, 1e-12);
  EXPECT_NEAR(r.score(2, 0), 0.0, 1e-12);
}

TEST(MedianFilter, ConfigRoundTrip) {
  FilterConfig cfg{0.064, {{"dog", 3}, {"speech", 21}}};
  EXPECT_EQ(parse_filter_config(format_filter_config(cfg)), cfg);
  EXPECT_THROW(parse_filter_config("dog\t4\n"), ValidationError);
}

TEST(Extract, Thresholding) {
  auto t = frames_timeline({0.1, 0.8, 0.8, 0.1}, 1.0);
  auto ev = extract_events(t, 0.5);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_EQ(ev[0], (Event{"c", 1.0, 3.0, "a"}));
  EXPECT_TRUE(extract_events(t, 0.9).empty());
  auto all = extract_events(t, 0.1);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].onset, 0.0);
  EXPECT_EQ(all[0].offset, 4.0);
}

TEST(Extract, MatchesNaiveExtraction) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = oracle::random_psd_instance(rng);
    for (const auto& [id, t] : inst.scores) {
      for (std::size_t c = 0; c < t.num_classes(); ++c) {
        for (double thr : {0.0, 0.25, 0.5, 0.8125, 1.0}) {
          EXPECT_EQ(extract_class_events(t, c, thr), oracle::naive_extract(t, c, thr));
        }
      }
    }
  }
}

double toy_objective(const FilterConfig& cfg) {
  // Prefers short windows for "a" and long ones for "b".
  return -cfg.length_for("a") + cfg.length_for("b");
}

TEST(Tune, BudgetOneReturnsTheSample) {
  const std::vector<std::string> cls{"a", "b"};
  const std::vector<int> cand{1, 3, 5};
  auto r = tune_filter_lengths(cls, 0.064, cand, 1, 42, toy_objective);
  ASSERT_EQ(r.trials.size(), 1u);
  EXPECT_EQ(r.best, r.trials[0]);
  EXPECT_EQ(r.best_index, 0u);
}

TEST(Tune, DeterministicAndJobInvariant) {
  const std::vector<std::string> cls{"a", "b"};
  const std::vector<int> cand{1, 3, 5, 7};
  auto r1 = tune_filter_lengths(cls, 0.064, cand, 40, 7, toy_objective, 1);
  auto r2 = tune_filter_lengths(cls, 0.064, cand, 40, 7, toy_objective, 1);
  auto r4 = tune_filter_lengths(cls, 0.064, cand, 40, 7, toy_objective, 4);
  EXPECT_EQ(r1.best, r2.best);
  EXPECT_EQ(r1.objectives, r2.objectives);
  EXPECT_EQ(r1.best, r4.best);
  EXPECT_EQ(r1.objectives, r4.objectives);
  EXPECT_EQ(r1.best.lengths.at("a"), 1);
  EXPECT_EQ(r1.best.lengths.at("b"), 7);
}

TEST(Tune, RunningBestIsMonotone) {
  const std::vector<std::string> cls{"a", "b"};
  const std::vector<int> cand{1, 3, 5, 7};
  auto r = tune_filter_lengths(cls, 0.064, cand, 30, 1, toy_objective);
  for (std::size_t i = 1; i < r.running_best.size(); ++i) {
    EXPECT_GE(r.running_best[i], r.running_best[i - 1]);
  }
  EXPECT_EQ(r.running_best.back(), r.best_objective);
  EXPECT_EQ(r.objectives[r.best_index], r.best_objective);
}

TEST(Tune, RejectsBadCandidates) {
  const std::vector<std::string> cls{"a"};
  EXPECT_THROW(tune_filter_lengths(cls, 0.064, std::vector<int>{}, 10, 0, toy_objective),
               ValidationError);
  EXPECT_THROW(tune_filter_lengths(cls, 0.064, std::vector<int>{2}, 10, 0, toy_objective),
               ValidationError);
}

TEST(Tune, ShortEventsPreferUnfiltered) {
  auto dev = oracle::short_event_dev_set();
  const std::vector<int> cand{1, 3, 5};
  auto r = tune_filter_lengths(dev.bundle, dev.scores, EvalParams{}, cand, 200, 0,
                               dev.frame_length);
  for (const auto& [label, length] : r.best.lengths) EXPECT_EQ(length, 1) << label;
  EXPECT_NEAR(r.best_objective, 1.0, 1e-12);
  for (std::size_t i = 0; i < r.trials.size(); ++i) {
    bool all_one = true;
    for (const auto& [label, length] : r.trials[i].lengths) all_one &= length == 1;
    if (!all_one) EXPECT_LT(r.objectives[i], r.best_objective);
  }
}

}  // namespace
}  // namespace sedeval
