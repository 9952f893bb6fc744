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

// Cross-dataset class mapping and per-dataset supervision masks.

#ifndef SEDEVAL_HARMONIZATION_HPP_
#define SEDEVAL_HARMONIZATION_HPP_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sedeval/types.hpp"

namespace sedeval {

struct ClassMapEntry {
  std::string child;
  std::string parent;
  friend bool operator==(const ClassMapEntry&, const ClassMapEntry&) = default;
};

// Directed child -> parent class mapping. Entries keep insertion order.
class ClassMap {
 public:
  ClassMap() = default;
  // Throws ValidationError on a self-mapping or a duplicate pair.
  explicit ClassMap(std::vector<ClassMapEntry> entries);

  const std::vector<ClassMapEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::vector<std::string> parents_of(std::string_view child) const;
  bool is_child(std::string_view label) const;

 private:
  std::vector<ClassMapEntry> entries_;
};

// MAESTRO -> DESED super-class mapping used by the 2024 baseline.
ClassMap default_class_map();

// Two-column TSV "child_class\tparent_class"; a header row is permitted.
ClassMap parse_class_map(std::string_view tsv_text);
std::string format_class_map(const ClassMap& map);

// The 10 DESED classes.
const std::vector<std::string>& desed_classes();
// The 11 MAESTRO classes evaluated with segMPAUC.
const std::vector<std::string>& maestro_eval_classes();
// MAESTRO classes known to occur in training annotations: the evaluated ones
// plus the mapped children (announcement, dog_bark).
const std::vector<std::string>& maestro_training_classes();

// Original labels followed by derived parent labels. Derived intervals of one
// (clip, parent) are merged over the union of child intervals, taking the
// maximum child confidence on every elementary piece and fusing touching
// pieces of equal confidence. A derived label already present verbatim in
// the input is not emitted again.
std::vector<SoftSegmentLabel> expand_targets(
    std::span<const SoftSegmentLabel> labels, const ClassMap& map);

struct ClassMask {
  std::vector<std::string> combined_classes;
  std::vector<bool> supervised;

  bool is_supervised(std::string_view label) const;
  // Additive bias for attention pooling: 0 where supervised, -inf elsewhere.
  std::vector<float> attention_bias() const;
  // Copy of `logits` with unsupervised entries replaced by -inf.
  std::vector<float> apply(std::span<const float> logits) const;
};

// supervised[c] holds iff c is one of the tag's dataset classes, or c is the
// parent of a mapped child among them. Throws ValidationError for an unknown
// tag.
ClassMask build_class_mask(
    const DatasetTag& tag, std::span<const std::string> combined_classes,
    const std::map<std::string, std::vector<std::string>>& dataset_classes,
    const ClassMap& map);

}  // namespace sedeval

#endif  // SEDEVAL_HARMONIZATION_HPP_
