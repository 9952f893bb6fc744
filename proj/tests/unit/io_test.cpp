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
#include "sedeval/io.hpp"
#include "test_util.hpp"

namespace sedeval {
namespace {

const std::vector<std::string> kSpk{"spk"};

TEST(GroundTruth, ParsesRow) {
  auto gt = parse_ground_truth(
      "filename\tonset\toffset\tevent_label\na.wav\t1.0\t2.0\tspeech\n");
  ASSERT_EQ(gt.size(), 1u);
  ASSERT_EQ(gt["a.wav"].size(), 1u);
  EXPECT_EQ(gt["a.wav"][0], (Event{"a.wav", 1.0, 2.0, "speech"}));
}

TEST(GroundTruth, HeaderOnlyIsEmpty) {
  EXPECT_TRUE(parse_ground_truth("filename\tonset\toffset\tevent_label\n").empty());
}

TEST(GroundTruth, OffsetBeforeOnsetNamesLine) {
  auto msg = thrown_message<ValidationError>([] {
    parse_ground_truth("filename\tonset\toffset\tevent_label\na.wav\t2.0\t1.0\tdog\n");
  });
  EXPECT_MESSAGE_HAS(msg, "offset ≤ onset at line 2");
}

TEST(GroundTruth, MalformedRowsAreParseErrors) {
  EXPECT_THROW(parse_ground_truth("a.wav\t1.0\t2.0\n"), ParseError);
  EXPECT_THROW(parse_ground_truth("a.wav\t1.0\t2.0\tdog\na.wav\tx\t2.0\tdog\n"),
               ParseError);
}

TEST(GroundTruth, CrlfAndBom) {
  auto gt = parse_ground_truth(
      "\xEF\xBB\xBF" "filename\tonset\toffset\tevent_label\r\na.wav\t1\t2\tdog\r\n");
  ASSERT_EQ(gt["a.wav"].size(), 1u);
  EXPECT_EQ(gt["a.wav"][0].label, "dog");
}

TEST(GroundTruth, RoundTrip) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Event> events;
    const int n = static_cast<int>(rng() % 8) + 1;
    for (int i = 0; i < n; ++i) {
      const double on = static_cast<double>(rng() % 1000) / 8.0;
      const double len = static_cast<double>(rng() % 100 + 1) / 16.0;
      events.push_back({"c" + std::to_string(rng() % 3) + ".wav", on, on + len,
                        rng() % 2 ? "dog" : "speech"});
    }
    std::sort(events.begin(), events.end());
    auto parsed = parse_ground_truth(format_ground_truth(events));
    auto flat = flatten(parsed);
    std::sort(flat.begin(), flat.end());
    EXPECT_EQ(flat, events);
  }
}

TEST(GroundTruth, RowOrderDoesNotMatter) {
  const std::string a = "x.wav\t0.5\t1.0\tdog\ny.wav\t1\t3\tspeech\nx.wav\t2\t4\tcat\n";
  const std::string b = "x.wav\t2\t4\tcat\ny.wav\t1\t3\tspeech\nx.wav\t0.5\t1.0\tdog\n";
  auto fa = flatten(parse_ground_truth(a));
  auto fb = flatten(parse_ground_truth(b));
  std::sort(fa.begin(), fa.end());
  std::sort(fb.begin(), fb.end());
  EXPECT_EQ(fa, fb);
}

TEST(SoftLabels, ParsesRow) {
  auto labels = parse_soft_labels("r1.wav\t0.0\t10.0\tcar\t0.6\n");
  ASSERT_EQ(labels.size(), 1u);
  EXPECT_EQ(labels[0], (SoftSegmentLabel{"r1.wav", 0.0, 10.0, "car", 0.6}));
}

TEST(SoftLabels, ConfidenceRange) {
  EXPECT_THROW(parse_soft_labels("r1.wav\t0.0\t10.0\tcar\t1.2\n"), ValidationError);
  auto labels = parse_soft_labels("r1.wav\t0.0\t10.0\tcar\t0.0\n");
  ASSERT_EQ(labels.size(), 1u);
  EXPECT_EQ(labels[0].confidence, 0.0);
  EXPECT_THROW(parse_soft_labels("r1.wav\t0.0\t10.0\tcar\n"), ParseError);
}

TEST(SoftLabels, RoundTrip) {
  std::vector<SoftSegmentLabel> labels{{"r.wav", 0, 1, "car", 0.25},
                                       {"r.wav", 1, 2, "car", 1.0},
                                       {"s.wav", 0, 1, "footsteps", 0.0}};
  EXPECT_EQ(parse_soft_labels(format_soft_labels(labels)), labels);
}

TEST(Scores, BuildsBreakpoints) {
  auto t = parse_scores("onset\toffset\tspk\n0\t5\t0.9\n5\t10\t0.1\n", kSpk, "a");
  EXPECT_EQ(t.breakpoints(), (std::vector<double>{0, 5, 10}));
  EXPECT_EQ(t.score(0, 0), 0.9);
  EXPECT_EQ(t.score(1, 0), 0.1);
}

TEST(Scores, GapIsTilingError) {
  auto msg = thrown_message<TilingError>([] {
    parse_scores("onset\toffset\tspk\n0\t5\t0.9\n6\t10\t0.1\n", kSpk, "a");
  });
  EXPECT_MESSAGE_HAS(msg, "gap at 5.0–6.0");
}

TEST(Scores, OverlapIsTilingError) {
  EXPECT_THROW(parse_scores("onset\toffset\tspk\n0\t5\t0.9\n4\t10\t0.1\n", kSpk, "a"),
               TilingError);
}

TEST(Scores, OutOfRange) {
  EXPECT_THROW(parse_scores("onset\toffset\tspk\n0\t5\t-0.1\n", kSpk, "a"),
               ValidationError);
}

TEST(Scores, ColumnMismatchIsSchemaError) {
  const std::vector<std::string> two{"spk", "dog"};
  EXPECT_THROW(parse_scores("onset\toffset\tspk\n0\t5\t0.5\n", two, "a"), SchemaError);
  EXPECT_THROW(parse_scores("onset\toffset\tspk\tdog\tcat\n0\t5\t0.5\t0\t0\n", two, "a"),
               SchemaError);
}

TEST(Scores, ColumnOrderFollowsExpected) {
  const std::vector<std::string> cls{"dog", "spk"};
  auto t = parse_scores("onset\toffset\tspk\tdog\n0\t1\t0.25\t0.75\n", cls, "a");
  EXPECT_EQ(t.class_labels(), cls);
  EXPECT_EQ(t.score(0, 0), 0.75);
  EXPECT_EQ(t.score(0, 1), 0.25);
}

TEST(Scores, RoundTrip) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> cls{"a", "b", "c"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> bps{0.0};
    std::vector<double> values;
    const int rows = static_cast<int>(rng() % 10) + 1;
    for (int r = 0; r < rows; ++r) {
      bps.push_back(bps.back() + static_cast<double>(rng() % 64 + 1) / 32.0);
      for (std::size_t c = 0; c < cls.size(); ++c) {
        values.push_back(static_cast<double>(rng() % 1001) / 1000.0);
      }
    }
    ScoreTimeline t("clip", cls, bps, values);
    EXPECT_EQ(parse_scores(format_scores(t), cls, "clip"), t);
  }
}

TEST(Durations, Parses) {
  auto d = parse_durations("a.wav\t10.0\n");
  EXPECT_EQ(d, (DurationMap{{"a.wav", 10.0}}));
}

TEST(Durations, Errors) {
  EXPECT_THROW(parse_durations("a.wav\t10.0\na.wav\t5.0\n"), ValidationError);
  EXPECT_THROW(parse_durations("a.wav\t0.0\n"), ValidationError);
}

TEST(Durations, RoundTrip) {
  DurationMap d{{"a.wav", 10.0}, {"b.wav", 7.125}, {"c.wav", 123.5}};
  EXPECT_EQ(parse_durations(format_durations(d)), d);
}

TEST(Numbers, ShortestRepresentationRoundTrips) {
  for (double v : {0.0, 0.1, 1.0 / 3.0, 5.0, 1e-7, 123456.789}) {
    EXPECT_EQ(parse_number(format_number(v)), v);
  }
}

TEST(AudioId, StripsExtension) {
  EXPECT_EQ(audio_id("a.wav"), "a");
  EXPECT_EQ(audio_id("rec"), "rec");
}

}  // namespace
}  // namespace sedeval
