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

#include <algorithm>
#include <random>

#include "sedeval/errors.hpp"
#include "sedeval/longform.hpp"
#include "test_util.hpp"

namespace sedeval {
namespace {

const std::vector<std::string> kCls{"car", "speech"};

using Clip = std::pair<ClipWindow, ScoreTimeline>;

Clip constant_clip(const ClipWindow& w, double value) {
  return {w, ScoreTimeline(w.clip_name(), kCls, {0.0, w.length()},
                           std::vector<double>(kCls.size(), value))};
}

std::vector<std::pair<double, double>> spans(const std::vector<ClipWindow>& ws) {
  std::vector<std::pair<double, double>> out;
  for (const auto& w : ws) out.emplace_back(w.start, w.end);
  return out;
}

TEST(Split, HalfOverlap) {
  EXPECT_EQ(spans(split_recording("r", 20, 10, 0.5)),
            (std::vector<std::pair<double, double>>{{0, 10}, {5, 15}, {10, 20}}));
}

TEST(Split, SingleClip) {
  EXPECT_EQ(spans(split_recording("r", 10, 10, 0.5)),
            (std::vector<std::pair<double, double>>{{0, 10}}));
  EXPECT_EQ(spans(split_recording("r", 4, 10, 0.5)),
            (std::vector<std::pair<double, double>>{{0, 4}}));
}

TEST(Split, RightAlignedTail) {
  EXPECT_EQ(spans(split_recording("r", 23, 10, 0.5)),
            (std::vector<std::pair<double, double>>{{0, 10}, {5, 15}, {10, 20}, {13, 23}}));
}

TEST(Split, RejectsFullOverlap) {
  EXPECT_THROW(split_recording("r", 20, 10, 1.0), ValidationError);
}

TEST(Split, CoversRecording) {
  for (double d : {10.5, 17.0, 33.3, 60.0, 121.7}) {
    for (double ov : {0.0, 0.25, 0.5, 0.75}) {
      auto ws = split_recording("r", d, 10, ov);
      EXPECT_EQ(ws.front().start, 0.0);
      EXPECT_NEAR(ws.back().end, d, 1e-9);
      for (std::size_t i = 1; i < ws.size(); ++i) {
        EXPECT_LE(ws[i].start, ws[i - 1].end + 1e-9);
        EXPECT_NEAR(ws[i].length(), 10.0, 1e-9);
      }
    }
  }
}

TEST(ClipName, RoundTrip) {
  ClipWindow w{"rec.wav", 13.0, 23.0};
  EXPECT_EQ(w.clip_name(), "rec.wav@13000-23000");
  EXPECT_EQ(parse_clip_name(w.clip_name()), w);
  EXPECT_FALSE(parse_clip_name("rec.wav"));
}

TEST(Reconstruct, ConstantClips) {
  std::vector<Clip> clips;
  for (const auto& w : split_recording("r", 23, 10, 0.5)) clips.push_back(constant_clip(w, 0.4));
  auto m = reconstruct_segment_scores(clips, 23, 1.0);
  ASSERT_EQ(m.num_segments, 23u);
  for (double v : m.values) EXPECT_NEAR(v, 0.4, 1e-12);
}

TEST(Reconstruct, AveragesAcrossClips) {
  auto ws = split_recording("r", 20, 10, 0.5);
  std::vector<Clip> clips{constant_clip(ws[0], 0.4), constant_clip(ws[1], 0.6),
                          constant_clip(ws[2], 0.9)};
  auto m = reconstruct_segment_scores(clips, 20, 1.0);
  EXPECT_NEAR(m.at(2, 0), 0.4, 1e-12);   // clip 0 only
  EXPECT_NEAR(m.at(7, 0), 0.5, 1e-12);   // clips 0 and 1
  EXPECT_NEAR(m.at(9, 1), 0.5, 1e-12);
  EXPECT_NEAR(m.at(12, 0), 0.75, 1e-12); // clips 1 and 2
  EXPECT_NEAR(m.at(17, 1), 0.9, 1e-12);  // clip 2 only
}

TEST(Reconstruct, WithinSegmentMean) {
  // One clip, one segment covering rows 0.2 (first 0.25 s) and 1.0 (rest).
  ClipWindow w{"r", 0, 1};
  ScoreTimeline t(w.clip_name(), kCls, {0.0, 0.25, 1.0}, {0.2, 0.2, 1.0, 0.6});
  std::vector<Clip> clips{{w, t}};
  auto m = reconstruct_segment_scores(clips, 1, 1.0);
  EXPECT_NEAR(m.at(0, 0), 0.25 * 0.2 + 0.75 * 1.0, 1e-12);
  EXPECT_NEAR(m.at(0, 1), 0.25 * 0.2 + 0.75 * 0.6, 1e-12);
}

TEST(Reconstruct, UncoveredSegment) {
  auto ws = split_recording("r", 20, 10, 0.5);
  std::vector<Clip> clips{constant_clip(ws[0], 0.4)};
  auto msg = thrown_message<CoverageError>([&] { reconstruct_segment_scores(clips, 20, 1.0); });
  EXPECT_MESSAGE_HAS(msg, "segment 10");
}

TEST(Reconstruct, ClipOrderInvariant) {
  std::mt19937_64 rng(3);
  auto ws = split_recording("r", 37, 10, 0.5);
  std::vector<Clip> clips;
  for (const auto& w : ws) {
    std::vector<double> bps{0.0};
    std::vector<double> vals;
    while (bps.back() < 10.0) {
      bps.push_back(std::min(10.0, bps.back() + static_cast<double>(rng() % 7 + 1) * 0.13));
      for (std::size_t c = 0; c < kCls.size(); ++c) vals.push_back(static_cast<double>(rng() % 1000) / 999.0);
    }
    clips.push_back({w, ScoreTimeline(w.clip_name(), kCls, bps, vals)});
  }
  auto base = reconstruct_segment_scores(clips, 37, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(clips.begin(), clips.end(), rng);
    EXPECT_EQ(reconstruct_segment_scores(clips, 37, 1.0), base);
  }
}

TEST(SegmentCount, PartialLastSegment) {
  EXPECT_EQ(segment_count(10.0, 1.0), 10u);
  EXPECT_EQ(segment_count(10.5, 1.0), 11u);
  EXPECT_EQ(segment_count(7.5, 1.0), 8u);
}

TEST(SoftLabels, Binarization) {
  const std::vector<std::string> car{"car"};
  std::vector<SoftSegmentLabel> hi{{"r", 0, 10, "car", 0.6}};
  auto m = segment_labels_from_soft("r", hi, car, 10, 1.0, 0.5);
  EXPECT_EQ(m.values, std::vector<std::uint8_t>(10, 1));

  std::vector<SoftSegmentLabel> edge{{"r", 0, 10, "car", 0.5}};
  EXPECT_EQ(segment_labels_from_soft("r", edge, car, 10, 1.0, 0.5).values,
            std::vector<std::uint8_t>(10, 1));

  std::vector<SoftSegmentLabel> lo{{"r", 0, 10, "car", 0.4}};
  EXPECT_EQ(segment_labels_from_soft("r", lo, car, 10, 1.0, 0.5).values,
            std::vector<std::uint8_t>(10, 0));
}

TEST(EventLabels, Overlap) {
  const std::vector<std::string> sp{"speech"};
  std::vector<Event> ev{{"c", 1.2, 2.8, "speech"}};
  auto m = segment_labels_from_events("c", ev, sp, 5, 1.0);
  EXPECT_EQ(m.values, (std::vector<std::uint8_t>{0, 1, 1, 0, 0}));

  EXPECT_EQ(segment_labels_from_events("c", {}, sp, 5, 1.0).values,
            std::vector<std::uint8_t>(5, 0));

  std::vector<Event> full{{"c", 0, 5, "speech"}};
  EXPECT_EQ(segment_labels_from_events("c", full, sp, 5, 1.0).values,
            std::vector<std::uint8_t>(5, 1));
}

TEST(SegmentScores, DurationWeightedMeans) {
  ScoreTimeline t("c", {"a"}, {0.0, 0.5, 2.0}, {1.0, 0.0});
  auto m = segment_scores(t, 1.0);
  ASSERT_EQ(m.num_segments, 2u);
  EXPECT_NEAR(m.at(0, 0), 0.5, 1e-12);
  EXPECT_NEAR(m.at(1, 0), 0.0, 1e-12);
}

}  // namespace
}  // namespace sedeval
