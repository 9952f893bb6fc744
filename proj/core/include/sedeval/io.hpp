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

// Tab-separated annotation, score and duration files.
//
// All parsers accept LF or CRLF line endings, skip blank lines and use '.' as
// the decimal separator regardless of locale. A first row whose second column
// is not numeric is treated as a header and skipped.

#ifndef SEDEVAL_IO_HPP_
#define SEDEVAL_IO_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sedeval/types.hpp"

namespace sedeval {

// "filename\tonset\toffset\tevent_label". A row holding only a filename (or
// empty onset/offset/label fields) registers a clip without events.
GroundTruth parse_ground_truth(std::string_view tsv_text);

// "filename\tonset\toffset\tevent_label\tconfidence".
std::vector<SoftSegmentLabel> parse_soft_labels(std::string_view tsv_text);

// "onset\toffset\t<class>..." header followed by contiguous rows starting at
// 0. Columns are reordered to `expected_classes`, which must equal the header
// class set.
ScoreTimeline parse_scores(std::string_view tsv_text,
                           std::span<const std::string> expected_classes,
                           std::string clip_id = {});

// "filename\tduration".
DurationMap parse_durations(std::string_view tsv_text);

// Inverse of parse_scores; numbers use the shortest fixed-notation text that
// parses back to the same double.
std::string format_scores(const ScoreTimeline& timeline);
std::string format_ground_truth(std::span<const Event> events);
std::string format_soft_labels(std::span<const SoftSegmentLabel> labels);
std::string format_durations(const DurationMap& durations);

// Shortest round-trip fixed-notation text of `value`.
std::string format_number(double value);

// Locale-independent parse of a full field; nullopt on any trailing garbage.
std::optional<double> parse_number(std::string_view field);

// Splits text into lines (LF or CRLF) and lines into tab-separated fields.
std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split_fields(std::string_view line);

// Throws IoError on failure.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace sedeval

#endif  // SEDEVAL_IO_HPP_
