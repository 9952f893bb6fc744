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

#include "sedeval/harmonization.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <set>
#include <utility>

#include "sedeval/errors.hpp"
#include "sedeval/io.hpp"

namespace sedeval {

ClassMap::ClassMap(std::vector<ClassMapEntry> entries)
    : entries_(std::move(entries)) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& e : entries_) {
    if (e.child.empty() || e.parent.empty()) {
      throw ValidationError("class map entry with an empty class name");
    }
    if (e.child == e.parent) {
      throw ValidationError("class map entry maps '" + e.child +
                            "' to itself");
    }
    if (!seen.emplace(e.child, e.parent).second) {
      throw ValidationError("duplicate class map entry " + e.child + " -> " +
                            e.parent);
    }
  }
}

std::vector<std::string> ClassMap::parents_of(std::string_view child) const {
  std::vector<std::string> out;
  for (const auto& e : entries_) {
    if (e.child == child) out.push_back(e.parent);
  }
  return out;
}

bool ClassMap::is_child(std::string_view label) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const ClassMapEntry& e) { return e.child == label; });
}

ClassMap default_class_map() {
  return ClassMap({
      {"people_talking", "speech"},
      {"children_voices", "speech"},
      {"announcement", "speech"},
      {"cutlery_and_dishes", "dishes"},
      {"dog_bark", "dog"},
  });
}

ClassMap parse_class_map(std::string_view tsv_text) {
  std::vector<ClassMapEntry> entries;
  bool first = true;
  auto lines = split_lines(tsv_text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto fields = split_fields(lines[i]);
    if (fields.size() == 1 && fields[0].find_first_not_of(" \r") ==
                                  std::string_view::npos) {
      continue;
    }
    if (fields.size() != 2) {
      throw ParseError("expected 2 tab-separated columns, got " +
                           std::to_string(fields.size()),
                       i + 1);
    }
    if (first) {
      first = false;
      if (fields[0] == "child_class" || fields[0] == "child") continue;
    }
    entries.push_back({std::string(fields[0]), std::string(fields[1])});
  }
  return ClassMap(std::move(entries));
}

std::string format_class_map(const ClassMap& map) {
  std::string out = "child_class\tparent_class\n";
  for (const auto& e : map.entries()) out += e.child + '\t' + e.parent + '\n';
  return out;
}

const std::vector<std::string>& desed_classes() {
  static const std::vector<std::string> kClasses = {
      "alarm_bell_ringing", "blender",  "cat",           "dishes",
      "dog",                "electric_shaver_toothbrush", "frying",
      "running_water",      "speech",   "vacuum_cleaner"};
  return kClasses;
}

const std::vector<std::string>& maestro_eval_classes() {
  static const std::vector<std::string> kClasses = {
      "birds_singing",     "car",              "people_talking",
      "footsteps",         "children_voices",  "wind_blowing",
      "brakes_squeaking",  "large_vehicle",    "cutlery_and_dishes",
      "metro_approaching", "metro_leaving"};
  return kClasses;
}

const std::vector<std::string>& maestro_training_classes() {
  static const std::vector<std::string> kClasses = [] {
    auto v = maestro_eval_classes();
    v.push_back("announcement");
    v.push_back("dog_bark");
    return v;
  }();
  return kClasses;
}

namespace {

struct Piece {
  double onset;
  double offset;
  double confidence;
};

// Max-merge of possibly overlapping intervals into disjoint pieces.
std::vector<Piece> max_merge(std::vector<Piece> evidence) {
  std::vector<double> bounds;
  for (const auto& p : evidence) {
    bounds.push_back(p.onset);
    bounds.push_back(p.offset);
  }
  std::sort(bounds.begin(), bounds.end());
  std::vector<double> grid;
  for (double b : bounds) {
    if (grid.empty() || b - grid.back() > kTimeTolerance) grid.push_back(b);
  }
  std::vector<Piece> out;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double lo = grid[i];
    const double hi = grid[i + 1];
    double best = -1.0;
    for (const auto& p : evidence) {
      if (p.onset <= lo + kTimeTolerance && p.offset >= hi - kTimeTolerance) {
        best = std::max(best, p.confidence);
      }
    }
    if (best < 0.0) continue;
    if (!out.empty() && out.back().confidence == best &&
        std::abs(out.back().offset - lo) <= kTimeTolerance) {
      out.back().offset = hi;
    } else {
      out.push_back({lo, hi, best});
    }
  }
  return out;
}

}  // namespace

std::vector<SoftSegmentLabel> expand_targets(
    std::span<const SoftSegmentLabel> labels, const ClassMap& map) {
  std::vector<SoftSegmentLabel> out(labels.begin(), labels.end());
  if (map.empty()) return out;

  std::map<std::pair<std::string, std::string>, std::vector<Piece>> evidence;
  for (const auto& l : labels) {
    for (const auto& parent : map.parents_of(l.label)) {
      evidence[{l.clip_id, parent}].push_back({l.onset, l.offset, l.confidence});
    }
  }
  const std::set<SoftSegmentLabel> existing(labels.begin(), labels.end());
  for (auto& [key, pieces] : evidence) {
    for (const auto& p : max_merge(std::move(pieces))) {
      SoftSegmentLabel derived{key.first, p.onset, p.offset, key.second,
                               p.confidence};
      if (!existing.count(derived)) out.push_back(std::move(derived));
    }
  }
  return out;
}

bool ClassMask::is_supervised(std::string_view label) const {
  for (std::size_t i = 0; i < combined_classes.size(); ++i) {
    if (combined_classes[i] == label) return supervised[i];
  }
  return false;
}

std::vector<float> ClassMask::attention_bias() const {
  std::vector<float> bias(supervised.size());
  for (std::size_t i = 0; i < bias.size(); ++i) {
    bias[i] = supervised[i] ? 0.0f : -std::numeric_limits<float>::infinity();
  }
  return bias;
}

std::vector<float> ClassMask::apply(std::span<const float> logits) const {
  if (logits.size() != supervised.size()) {
    throw SchemaError("logit count " + std::to_string(logits.size()) +
                      " does not match mask size " +
                      std::to_string(supervised.size()));
  }
  std::vector<float> out(logits.begin(), logits.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!supervised[i]) out[i] = -std::numeric_limits<float>::infinity();
  }
  return out;
}

ClassMask build_class_mask(
    const DatasetTag& tag, std::span<const std::string> combined_classes,
    const std::map<std::string, std::vector<std::string>>& dataset_classes,
    const ClassMap& map) {
  auto it = dataset_classes.find(tag.name);
  if (it == dataset_classes.end()) {
    throw ValidationError("unknown dataset tag '" + tag.name + "'");
  }
  std::set<std::string> own(it->second.begin(), it->second.end());
  std::set<std::string> parents;
  for (const auto& e : map.entries()) {
    if (own.count(e.child)) parents.insert(e.parent);
  }
  ClassMask mask;
  mask.combined_classes.assign(combined_classes.begin(),
                               combined_classes.end());
  mask.supervised.reserve(combined_classes.size());
  for (const auto& c : combined_classes) {
    mask.supervised.push_back(own.count(c) > 0 || parents.count(c) > 0);
  }
  return mask;
}

}  // namespace sedeval
