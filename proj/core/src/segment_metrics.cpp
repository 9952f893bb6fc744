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

#include "sedeval/segment_metrics.hpp"

#include <cmath>
#include <algorithm>
#include <limits>

#include "sedeval/errors.hpp"
#include "sedeval/io.hpp"

namespace sedeval {

namespace {

struct Item {
  double score;
  bool positive;
  std::uint64_t weight;
};

std::vector<Item> pool(std::span<const SegmentScoreMatrix> scores,
                       std::span<const SegmentLabelMatrix> labels,
                       std::string_view label, const SampleWeights& weights) {
  std::map<std::string, const SegmentScoreMatrix*> by_id;
  for (const auto& s : scores) by_id[s.recording_id] = &s;

  std::vector<Item> items;
  for (const auto& lm : labels) {
    const std::uint64_t w = weights(lm.recording_id);
    if (w == 0) continue;
    auto it = by_id.find(lm.recording_id);
    if (it == by_id.end()) {
      throw CoverageError("no segment scores for recording '" +
                          lm.recording_id + "'");
    }
    const SegmentScoreMatrix& sm = *it->second;
    if (sm.num_segments != lm.num_segments) {
      throw SchemaError("recording '" + lm.recording_id + "' has " +
                        std::to_string(sm.num_segments) +
                        " score segments but " +
                        std::to_string(lm.num_segments) + " label segments");
    }
    auto lc = lm.class_index(label);
    auto sc = sm.class_index(label);
    if (!lc || !sc) {
      throw SchemaError("class '" + std::string(label) +
                        "' missing for recording '" + lm.recording_id + "'");
    }
    for (std::size_t s = 0; s < lm.num_segments; ++s) {
      items.push_back({sm.at(s, *sc), lm.at(s, *lc) != 0, w});
    }
  }
  return items;
}

double f1_of(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  const std::uint64_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0
                    : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

}  // namespace

void SegMpaucParams::validate() const {
  if (!(max_fpr > 0.0 && max_fpr <= 1.0)) {
    throw ValidationError("max_fpr must lie in (0, 1]");
  }
  if (!(segment_length > 0.0)) {
    throw ValidationError("segment length must be positive");
  }
}

SegmentRoc segment_roc(std::span<const SegmentScoreMatrix> scores,
                       std::span<const SegmentLabelMatrix> labels,
                       std::string_view label, const SampleWeights& weights) {
  auto items = pool(scores, labels, label, weights);
  SegmentRoc roc;
  roc.label = std::string(label);
  for (const auto& it : items) {
    (it.positive ? roc.positives : roc.negatives) += it.weight;
  }
  if (roc.positives == 0 || roc.negatives == 0) {
    throw UndefinedRocError("ROC undefined for class '" + roc.label + "': " +
                            std::to_string(roc.positives) + " positive and " +
                            std::to_string(roc.negatives) +
                            " negative segments");
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.score > b.score; });
  const double pos = static_cast<double>(roc.positives);
  const double neg = static_cast<double>(roc.negatives);
  roc.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  for (std::size_t i = 0; i < items.size();) {
    const double t = items[i].score;
    for (; i < items.size() && items[i].score == t; ++i) {
      (items[i].positive ? tp : fp) += items[i].weight;
    }
    roc.points.push_back({static_cast<double>(fp) / neg,
                          static_cast<double>(tp) / pos, t});
  }
  return roc;
}

double partial_auc(const SegmentRoc& roc, double max_fpr) {
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < roc.points.size(); ++i) {
    const auto& a = roc.points[i];
    const auto& b = roc.points[i + 1];
    if (a.fpr >= max_fpr) break;
    if (b.fpr <= max_fpr) {
      area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
    } else {
      const double y =
          a.tpr + (b.tpr - a.tpr) * (max_fpr - a.fpr) / (b.fpr - a.fpr);
      area += (max_fpr - a.fpr) * (a.tpr + y) / 2.0;
      break;
    }
  }
  return area / max_fpr;
}

double seg_mpauc(std::span<const SegmentRoc> rocs,
                 const SegMpaucParams& params) {
  params.validate();
  if (rocs.empty()) {
    throw UndefinedRocError("segMPAUC undefined: no class has a defined ROC");
  }
  double sum = 0.0;
  for (const auto& r : rocs) sum += partial_auc(r, params.max_fpr);
  return sum / static_cast<double>(rocs.size());
}

SegMpaucResult seg_mpauc(std::span<const SegmentScoreMatrix> scores,
                         std::span<const SegmentLabelMatrix> labels,
                         std::span<const std::string> classes,
                         const SegMpaucParams& params,
                         const SampleWeights& weights) {
  std::vector<SegmentRoc> rocs;
  SegMpaucResult result;
  for (const auto& c : classes) {
    try {
      rocs.push_back(segment_roc(scores, labels, c, weights));
    } catch (const UndefinedRocError&) {
      result.skipped.push_back(c);
    }
  }
  result.value = seg_mpauc(rocs, params);
  for (const auto& r : rocs) {
    result.per_class[r.label] = partial_auc(r, params.max_fpr);
  }
  return result;
}

SegmentF1ErResult segment_f1_er(std::span<const SegmentScoreMatrix> scores,
                                std::span<const SegmentLabelMatrix> labels,
                                std::span<const std::string> classes,
                                const ThresholdMode& mode,
                                const SampleWeights& weights) {
  SegmentF1ErResult result;
  double f1_sum = 0.0;
  double er_sum = 0.0;
  std::size_t n = 0;
  for (const auto& c : classes) {
    auto items = pool(scores, labels, c, weights);
    SegmentClassStats st;
    for (const auto& it : items) {
      if (it.positive) st.positives += it.weight;
    }
    if (mode.fixed_threshold) {
      st.threshold = *mode.fixed_threshold;
      for (const auto& it : items) {
        const bool pred = it.score >= st.threshold;
        if (pred && it.positive) st.tp += it.weight;
        if (pred && !it.positive) st.fp += it.weight;
        if (!pred && it.positive) st.fn += it.weight;
      }
    } else {
      std::stable_sort(items.begin(), items.end(), [](const Item& a,
                                                       const Item& b) {
        return a.score > b.score;
      });
      // Nothing predicted until the first threshold is crossed.
      st.threshold = std::numeric_limits<double>::infinity();
      st.fn = st.positives;
      double best = f1_of(0, 0, st.positives);
      std::uint64_t tp = 0;
      std::uint64_t fp = 0;
      for (std::size_t i = 0; i < items.size();) {
        const double t = items[i].score;
        for (; i < items.size() && items[i].score == t; ++i) {
          (items[i].positive ? tp : fp) += items[i].weight;
        }
        const double f = f1_of(tp, fp, st.positives - tp);
        if (f >= best) {
          best = f;
          st.threshold = t;
          st.tp = tp;
          st.fp = fp;
          st.fn = st.positives - tp;
        }
      }
    }
    st.f1 = f1_of(st.tp, st.fp, st.fn);
    if (st.positives > 0) {
      st.error_rate = static_cast<double>(st.fp + st.fn) /
                      static_cast<double>(st.positives);
      f1_sum += st.f1;
      er_sum += st.error_rate;
      ++n;
    }
    result.per_class[c] = st;
  }
  if (n > 0) {
    result.macro_f1 = f1_sum / static_cast<double>(n);
    result.macro_er = er_sum / static_cast<double>(n);
  }
  return result;
}

std::string format_segment_table(const SegMpaucResult& auc,
                                 const SegmentF1ErResult& fixed,
                                 const SegmentF1ErResult& optimal) {
  std::string out =
      "class,pauc,f1_fixed,er_fixed,f1_optimal,er_optimal,threshold_optimal\n";
  for (const auto& [label, st] : fixed.per_class) {
    auto a = auc.per_class.find(label);
    out += label + ",";
    out += a == auc.per_class.end() ? "" : format_number(a->second);
    out += "," + format_number(st.f1) + "," + format_number(st.error_rate);
    if (auto o = optimal.per_class.find(label); o != optimal.per_class.end()) {
      out += "," + format_number(o->second.f1) + "," +
             format_number(o->second.error_rate) + "," +
             (std::isinf(o->second.threshold)
                  ? std::string("inf")
                  : format_number(o->second.threshold));
    } else {
      out += ",,,";
    }
    out += "\n";
  }
  return out;
}

}  // namespace sedeval
