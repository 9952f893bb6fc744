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

#include "naive_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace oracle {

using sedeval::Event;

namespace {

double inter(const Event& a, const Event& b) {
  const double lo = std::max(a.onset, b.onset);
  const double hi = std::min(a.offset, b.offset);
  return hi > lo ? hi - lo : 0.0;
}

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

std::vector<Event> naive_extract(const sedeval::ScoreTimeline& t,
                                 std::size_t col, double threshold) {
  std::vector<Event> out;
  bool open = false;
  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    const bool on = t.score(r, col) >= threshold;
    if (on && !open) {
      out.push_back({t.clip_id(), t.onset(r), t.offset(r),
                     t.class_labels()[col]});
      open = true;
    } else if (on) {
      out.back().offset = t.offset(r);
    } else {
      open = false;
    }
  }
  return out;
}

PsdResult naive_psds(const std::map<std::string, sedeval::ScoreTimeline>& scores,
                     const sedeval::GroundTruth& references,
                     const sedeval::DurationMap& durations,
                     const std::vector<std::string>& classes,
                     const sedeval::PsdsParams& params) {
  PsdResult res;
  double seconds = 0.0;
  for (const auto& [id, d] : durations) seconds += d;
  res.hours = seconds / 3600.0;

  for (const auto& label : classes) {
    ClassCurve curve;
    curve.label = label;
    for (const auto& [id, d] : durations) {
      auto it = references.find(id);
      if (it == references.end()) continue;
      for (const auto& e : it->second) curve.references += e.label == label;
    }
    if (curve.references == 0) {
      res.excluded.push_back(label);
      continue;
    }
    std::set<double, std::greater<>> thresholds;
    for (const auto& [id, d] : durations) {
      const auto& t = scores.at(id);
      const std::size_t col = *t.class_index(label);
      for (std::size_t r = 0; r < t.num_rows(); ++r) {
        thresholds.insert(t.score(r, col));
      }
    }
    curve.points.push_back({std::numeric_limits<double>::infinity(), 0, 0});
    for (double thr : thresholds) {
      Point p{thr, 0, 0};
      for (const auto& [id, d] : durations) {
        const auto& t = scores.at(id);
        auto dets = naive_extract(t, *t.class_index(label), thr);
        std::vector<Event> refs;
        if (auto it = references.find(id); it != references.end()) {
          for (const auto& e : it->second) {
            if (e.label == label) refs.push_back(e);
          }
        }
        std::vector<bool> relevant(dets.size(), false);
        for (std::size_t k = 0; k < dets.size(); ++k) {
          double covered = 0.0;
          for (const auto& r : refs) covered += inter(dets[k], r);
          if (covered / (dets[k].offset - dets[k].onset) >= params.rho_dtc) {
            relevant[k] = true;
          } else {
            ++p.fp;
          }
        }
        for (const auto& r : refs) {
          double covered = 0.0;
          for (std::size_t k = 0; k < dets.size(); ++k) {
            if (relevant[k]) covered += inter(dets[k], r);
          }
          if (covered / (r.offset - r.onset) >= params.rho_gtc) ++p.tp;
        }
      }
      curve.points.push_back(p);
    }
    res.classes.push_back(std::move(curve));
  }

  // Sweep every false-positive rate at which some class curve can change.
  std::set<double> grid{0.0};
  for (const auto& c : res.classes) {
    for (const auto& p : c.points) {
      const double e = static_cast<double>(p.fp) / res.hours;
      if (e <= params.e_max) grid.insert(e);
    }
  }
  std::vector<double> xs(grid.begin(), grid.end());
  double area = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> tpr;
    for (const auto& c : res.classes) {
      double best = 0.0;
      for (const auto& p : c.points) {
        if (static_cast<double>(p.fp) / res.hours <= xs[i]) {
          best = std::max(best, static_cast<double>(p.tp) /
                                    static_cast<double>(c.references));
        }
      }
      tpr.push_back(best);
    }
    double mean = 0.0;
    for (double v : tpr) mean += v;
    mean /= static_cast<double>(tpr.size());
    double var = 0.0;
    for (double v : tpr) var += (v - mean) * (v - mean);
    var /= static_cast<double>(tpr.size());
    const double y = mean - params.alpha_st * std::sqrt(var);
    const double next = i + 1 < xs.size() ? xs[i + 1] : params.e_max;
    area += std::max(0.0, y) * (next - xs[i]);
  }
  res.psds = area / params.e_max;
  return res;
}

SegmentCurve naive_segment_roc(const std::vector<double>& scores,
                               const std::vector<bool>& positive,
                               double max_fpr) {
  SegmentCurve out;
  double pos = 0, neg = 0;
  for (bool b : positive) (b ? pos : neg) += 1;
  if (pos == 0 || neg == 0) return out;
  out.defined = true;
  std::set<double, std::greater<>> thresholds(scores.begin(), scores.end());
  out.points.push_back({0.0, 0.0});
  for (double t : thresholds) {
    double tp = 0, fp = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= t) (positive[i] ? tp : fp) += 1;
    }
    out.points.push_back({fp / neg, tp / pos});
  }
  // Trapezoids clipped to [0, max_fpr].
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < out.points.size(); ++i) {
    const auto a = out.points[i];
    const auto b = out.points[i + 1];
    const double x0 = std::min(a.fpr, max_fpr);
    const double x1 = std::min(b.fpr, max_fpr);
    if (!(x1 > x0)) continue;
    auto y_at = [&](double x) {
      return a.tpr + (b.tpr - a.tpr) * (x - a.fpr) / (b.fpr - a.fpr);
    };
    area += (x1 - x0) * (y_at(x0) + y_at(x1)) / 2.0;
  }
  out.pauc = area / max_fpr;
  return out;
}

double naive_seg_mpauc(const std::vector<sedeval::SegmentScoreMatrix>& scores,
                       const std::vector<sedeval::SegmentLabelMatrix>& labels,
                       const std::vector<std::string>& classes,
                       double max_fpr) {
  double sum = 0.0;
  int n = 0;
  for (const auto& label : classes) {
    std::vector<double> s;
    std::vector<bool> p;
    for (std::size_t k = 0; k < labels.size(); ++k) {
      const auto& lm = labels[k];
      const sedeval::SegmentScoreMatrix* sm = nullptr;
      for (const auto& m : scores) {
        if (m.recording_id == lm.recording_id) sm = &m;
      }
      const std::size_t lc = *lm.class_index(label);
      const std::size_t sc = *sm->class_index(label);
      for (std::size_t seg = 0; seg < lm.num_segments; ++seg) {
        s.push_back(sm->at(seg, sc));
        p.push_back(lm.at(seg, lc) != 0);
      }
    }
    auto roc = naive_segment_roc(s, p, max_fpr);
    if (roc.defined) {
      sum += roc.pauc;
      ++n;
    }
  }
  return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / n;
}

PsdInstance random_psd_instance(std::mt19937_64& rng, int max_classes,
                                int max_clips, int max_events,
                                int max_values) {
  PsdInstance inst;
  const int n_classes = pick(rng, 1, max_classes);
  for (int c = 0; c < n_classes; ++c) {
    inst.classes.push_back("class" + std::to_string(c));
  }
  const int n_values = pick(rng, 1, max_values);
  std::vector<double> values;
  for (int v = 0; v < n_values; ++v) values.push_back(pick(rng, 0, 16) / 16.0);

  const int n_clips = pick(rng, 1, max_clips);
  for (int k = 0; k < n_clips; ++k) {
    const std::string id = "clip" + std::to_string(k) + ".wav";
    const int quarters = pick(rng, 8, 40);  // 2 s to 10 s
    const double duration = quarters * 0.25;
    inst.durations[id] = duration;

    std::vector<double> bps{0.0};
    for (int q = 1; q < quarters; ++q) {
      if (pick(rng, 0, 2) == 0) bps.push_back(q * 0.25);
    }
    bps.push_back(duration);
    std::vector<double> sc;
    for (std::size_t r = 0; r + 1 < bps.size(); ++r) {
      for (int c = 0; c < n_classes; ++c) {
        sc.push_back(values[static_cast<std::size_t>(
            pick(rng, 0, n_values - 1))]);
      }
    }
    inst.scores.emplace(id,
                        sedeval::ScoreTimeline(id, inst.classes, bps, sc));

    auto& refs = inst.references[id];
    const int n_events = pick(rng, 0, max_events);
    for (int e = 0; e < n_events; ++e) {
      const int on = pick(rng, 0, quarters - 1);
      const int off = pick(rng, on + 1, quarters);
      refs.push_back({id, on * 0.25, off * 0.25,
                      inst.classes[static_cast<std::size_t>(
                          pick(rng, 0, n_classes - 1))]});
    }
  }
  return inst;
}

SegmentInstance random_segment_instance(std::mt19937_64& rng,
                                        int max_segments, int max_classes) {
  SegmentInstance inst;
  const int n_classes = pick(rng, 1, max_classes);
  for (int c = 0; c < n_classes; ++c) {
    inst.classes.push_back("class" + std::to_string(c));
  }
  const int total = pick(rng, 2, max_segments);
  const int n_values = pick(rng, 1, 12);
  int used = 0;
  int rec = 0;
  while (used < total) {
    const int n = std::min(total - used, pick(rng, 1, 15));
    used += n;
    sedeval::SegmentScoreMatrix sm;
    sedeval::SegmentLabelMatrix lm;
    sm.recording_id = lm.recording_id = "rec" + std::to_string(rec++);
    sm.segment_length = lm.segment_length = 1.0;
    sm.duration = lm.duration = n;
    sm.num_segments = lm.num_segments = static_cast<std::size_t>(n);
    sm.class_labels = lm.class_labels = inst.classes;
    for (int s = 0; s < n * n_classes; ++s) {
      sm.values.push_back(pick(rng, 0, n_values) / static_cast<double>(n_values));
      lm.values.push_back(static_cast<std::uint8_t>(pick(rng, 0, 2) == 0));
    }
    inst.scores.push_back(std::move(sm));
    inst.labels.push_back(std::move(lm));
  }
  return inst;
}

}  // namespace oracle
