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

#include "sedeval/event_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "sedeval/errors.hpp"
#include "sedeval/io.hpp"
#include "sedeval/parallel.hpp"
#include "sedeval/postprocess.hpp"

namespace sedeval {

namespace {

double overlap(double a_on, double a_off, double b_on, double b_off) {
  return std::max(0.0, std::min(a_off, b_off) - std::max(a_on, b_on));
}

bool by_onset(const Event& a, const Event& b) {
  return std::tie(a.onset, a.offset) < std::tie(b.onset, b.offset);
}

// DTC/GTC counts for detections and references of one clip and class, both
// sorted by onset.
std::pair<std::uint64_t, std::uint64_t> match_one_class(
    std::span<const Event> dets, std::span<const Event> refs, double rho_dtc,
    double rho_gtc) {
  std::vector<char> relevant(dets.size(), 0);
  std::uint64_t fp = 0;
  for (std::size_t d = 0; d < dets.size(); ++d) {
    const double len = dets[d].duration();
    if (!(len > 0.0)) {
      throw ValidationError("zero-length detection in '" + dets[d].clip_id +
                            "' at " + format_number(dets[d].onset));
    }
    double inter = 0.0;
    for (const auto& r : refs) {
      inter += overlap(dets[d].onset, dets[d].offset, r.onset, r.offset);
    }
    if (inter / len >= rho_dtc) {
      relevant[d] = 1;
    } else {
      ++fp;
    }
  }
  std::uint64_t tp = 0;
  for (const auto& r : refs) {
    double covered = 0.0;
    for (std::size_t d = 0; d < dets.size(); ++d) {
      if (relevant[d]) {
        covered += overlap(dets[d].onset, dets[d].offset, r.onset, r.offset);
      }
    }
    if (covered / r.duration() >= rho_gtc) ++tp;
  }
  return {tp, fp};
}

using ClipClassKey = std::pair<std::string, std::string>;

std::map<ClipClassKey, std::vector<Event>> group_by_clip_class(
    std::span<const Event> events) {
  std::map<ClipClassKey, std::vector<Event>> out;
  for (const auto& e : events) out[{e.clip_id, e.label}].push_back(e);
  for (auto& [key, list] : out) std::sort(list.begin(), list.end(), by_onset);
  return out;
}

double population_std(std::span<const double> xs, double mean) {
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return std::sqrt(var / static_cast<double>(xs.size()));
}

void build_effective_curve(PsdRoc& curve, double alpha_st, double e_max) {
  std::set<double> breaks{0.0};
  for (const auto& c : curve.classes) {
    for (double e : c.step_fp_rates) {
      if (e <= e_max) breaks.insert(e);
    }
  }
  curve.fp_rates.assign(breaks.begin(), breaks.end());
  curve.etpr.resize(curve.fp_rates.size());
  std::vector<double> tprs(curve.classes.size());
  for (std::size_t i = 0; i < curve.fp_rates.size(); ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < curve.classes.size(); ++k) {
      tprs[k] = curve.classes[k].tp_rate_at(curve.fp_rates[i]);
      sum += tprs[k];
    }
    const double mean = sum / static_cast<double>(tprs.size());
    curve.etpr[i] = mean - alpha_st * population_std(tprs, mean);
  }
}

double integrate(const PsdRoc& curve, double e_max) {
  double area = 0.0;
  for (std::size_t i = 0; i < curve.fp_rates.size(); ++i) {
    if (curve.fp_rates[i] >= e_max) break;
    const double next = i + 1 < curve.fp_rates.size()
                            ? std::min(curve.fp_rates[i + 1], e_max)
                            : e_max;
    area += std::max(0.0, curve.etpr[i]) * (next - curve.fp_rates[i]);
  }
  return area / e_max;
}

}  // namespace

void PsdsParams::validate() const {
  if (!(rho_dtc > 0.0 && rho_dtc <= 1.0)) {
    throw ValidationError("rho_dtc must lie in (0, 1]");
  }
  if (!(rho_gtc > 0.0 && rho_gtc <= 1.0)) {
    throw ValidationError("rho_gtc must lie in (0, 1]");
  }
  if (!(alpha_st >= 0.0)) throw ValidationError("alpha_st must be >= 0");
  if (!(e_max > 0.0)) throw ValidationError("e_max must be positive");
}

std::map<std::string, MatchCounts> match_events_dtc_gtc(
    std::span<const Event> detections, std::span<const Event> references,
    double rho_dtc, double rho_gtc) {
  auto dets = group_by_clip_class(detections);
  auto refs = group_by_clip_class(references);
  std::set<ClipClassKey> keys;
  for (const auto& [k, v] : dets) keys.insert(k);
  for (const auto& [k, v] : refs) keys.insert(k);

  std::map<std::string, MatchCounts> out;
  static const std::vector<Event> kNone;
  for (const auto& key : keys) {
    auto d = dets.find(key);
    auto r = refs.find(key);
    const auto& dl = d == dets.end() ? kNone : d->second;
    const auto& rl = r == refs.end() ? kNone : r->second;
    auto [tp, fp] = match_one_class(dl, rl, rho_dtc, rho_gtc);
    auto& counts = out[key.second];
    counts.tp += tp;
    counts.fp += fp;
    counts.references += rl.size();
    counts.detections += dl.size();
  }
  return out;
}

double ClassRoc::tp_rate_at(double fp_rate) const {
  auto it = std::upper_bound(step_fp_rates.begin(), step_fp_rates.end(),
                             fp_rate);
  if (it == step_fp_rates.begin()) return 0.0;
  return step_tp_rates[static_cast<std::size_t>(it - step_fp_rates.begin()) -
                       1];
}

double PsdRoc::etpr_at(double fp_rate) const {
  auto it = std::upper_bound(fp_rates.begin(), fp_rates.end(), fp_rate);
  if (it == fp_rates.begin()) return 0.0;
  return etpr[static_cast<std::size_t>(it - fp_rates.begin()) - 1];
}

PsdEvidence PsdEvidence::build(
    const std::map<std::string, ScoreTimeline>& scores,
    const GroundTruth& references, const DurationMap& durations,
    std::span<const std::string> classes, const PsdsParams& params,
    unsigned jobs) {
  params.validate();
  for (const auto& [clip, events] : references) {
    if (!durations.count(clip)) {
      throw SchemaError("reference clip '" + clip +
                        "' has no entry in the duration map");
    }
  }
  std::vector<std::string> missing;
  for (const auto& [clip, d] : durations) {
    if (!scores.count(clip)) missing.push_back(clip);
  }
  if (!missing.empty()) {
    std::string msg = "no scores for evaluated clip(s):";
    for (const auto& m : missing) msg += " " + m;
    throw CoverageError(msg);
  }

  PsdEvidence ev;
  ev.classes_.assign(classes.begin(), classes.end());
  ev.params_ = params;
  ev.clips_.resize(durations.size());
  std::vector<const std::string*> ids;
  for (const auto& [clip, d] : durations) ids.push_back(&clip);

  parallel_for(ids.size(), jobs, [&](std::size_t i) {
    const std::string& clip = *ids[i];
    const ScoreTimeline& timeline = scores.at(clip);
    ClipEvidence& ce = ev.clips_[i];
    ce.clip_id = clip;
    ce.duration = durations.at(clip);
    ce.references.assign(classes.size(), 0);
    ce.deltas.resize(classes.size());

    std::map<std::string, std::vector<Event>> refs_by_class;
    if (auto it = references.find(clip); it != references.end()) {
      refs_by_class = group_by_label(it->second);
      for (auto& [label, list] : refs_by_class) {
        std::sort(list.begin(), list.end(), by_onset);
      }
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const std::size_t col = timeline.require_class(classes[c]);
      std::span<const Event> refs;
      if (auto it = refs_by_class.find(classes[c]);
          it != refs_by_class.end()) {
        refs = it->second;
      }
      ce.references[c] = refs.size();

      auto values = timeline.column(col);
      std::sort(values.begin(), values.end(), std::greater<>());
      values.erase(std::unique(values.begin(), values.end()), values.end());

      std::int64_t prev_tp = 0;
      std::int64_t prev_fp = 0;
      auto& deltas = ce.deltas[c];
      deltas.reserve(values.size());
      for (double v : values) {
        const auto dets = extract_class_events(timeline, col, v);
        auto [tp, fp] =
            match_one_class(dets, refs, params.rho_dtc, params.rho_gtc);
        const auto tpi = static_cast<std::int64_t>(tp);
        const auto fpi = static_cast<std::int64_t>(fp);
        deltas.push_back({v, tpi - prev_tp, fpi - prev_fp});
        prev_tp = tpi;
        prev_fp = fpi;
      }
    }
  });
  return ev;
}

PsdRoc PsdEvidence::roc(const SampleWeights& weights) const {
  PsdRoc curve;
  curve.params = params_;

  double seconds = 0.0;
  for (const auto& ce : clips_) {
    seconds += static_cast<double>(weights(ce.clip_id)) * ce.duration;
  }
  curve.audio_hours = seconds / 3600.0;
  if (!(curve.audio_hours > 0.0)) {
    throw ValidationError("no audio to evaluate (total duration is zero)");
  }

  for (std::size_t c = 0; c < classes_.size(); ++c) {
    std::uint64_t refs = 0;
    std::vector<Delta> all;
    for (const auto& ce : clips_) {
      const std::uint64_t w = weights(ce.clip_id);
      if (w == 0) continue;
      refs += w * ce.references[c];
      const auto wi = static_cast<std::int64_t>(w);
      for (const auto& d : ce.deltas[c]) {
        all.push_back({d.threshold, wi * d.tp, wi * d.fp});
      }
    }
    if (refs == 0) {
      curve.excluded.push_back(classes_[c]);
      continue;
    }
    std::stable_sort(all.begin(), all.end(), [](const Delta& a, const Delta& b) {
      return a.threshold > b.threshold;
    });

    ClassRoc roc;
    roc.label = classes_[c];
    roc.references = refs;
    roc.points.push_back(
        {std::numeric_limits<double>::infinity(), 0, 0, 0.0, 0.0});
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    for (std::size_t i = 0; i < all.size();) {
      const double t = all[i].threshold;
      for (; i < all.size() && all[i].threshold == t; ++i) {
        tp += all[i].tp;
        fp += all[i].fp;
      }
      OperatingPoint p;
      p.threshold = t;
      p.tp = static_cast<std::uint64_t>(tp);
      p.fp = static_cast<std::uint64_t>(fp);
      p.tp_rate = static_cast<double>(p.tp) / static_cast<double>(refs);
      p.fp_rate = static_cast<double>(p.fp) / curve.audio_hours;
      roc.points.push_back(p);
    }

    std::vector<std::pair<double, double>> by_fp;
    by_fp.reserve(roc.points.size());
    for (const auto& p : roc.points) by_fp.emplace_back(p.fp_rate, p.tp_rate);
    std::sort(by_fp.begin(), by_fp.end());
    double best = -1.0;
    for (const auto& [e, tpr] : by_fp) {
      if (tpr <= best) continue;
      best = tpr;
      if (!roc.step_fp_rates.empty() && roc.step_fp_rates.back() == e) {
        roc.step_tp_rates.back() = tpr;
      } else {
        roc.step_fp_rates.push_back(e);
        roc.step_tp_rates.push_back(tpr);
      }
    }
    curve.classes.push_back(std::move(roc));
  }
  if (curve.classes.empty()) {
    throw ValidationError(
        "no evaluated class has reference events; PSDS is undefined");
  }
  build_effective_curve(curve, params_.alpha_st, params_.e_max);
  return curve;
}

PsdRoc compute_psd_roc(const std::map<std::string, ScoreTimeline>& scores,
                       const GroundTruth& references, const PsdsParams& params,
                       const DurationMap& durations,
                       std::span<const std::string> classes) {
  return PsdEvidence::build(scores, references, durations, classes, params)
      .roc();
}

double psds(const PsdRoc& curve) { return integrate(curve, curve.params.e_max); }

double psds(const PsdRoc& curve, const PsdsParams& params) {
  params.validate();
  if (params.rho_dtc != curve.params.rho_dtc ||
      params.rho_gtc != curve.params.rho_gtc) {
    throw ValidationError(
        "PSDS parameters use different detection criteria than the curve");
  }
  if (params.alpha_st == curve.params.alpha_st &&
      params.e_max == curve.params.e_max) {
    return psds(curve);
  }
  PsdRoc copy = curve;
  copy.params = params;
  build_effective_curve(copy, params.alpha_st, params.e_max);
  return integrate(copy, params.e_max);
}

std::string format_roc_csv(const PsdRoc& curve) {
  std::string out = "fp_rate";
  for (const auto& c : curve.classes) out += "," + c.label;
  out += ",etpr\n";
  for (std::size_t i = 0; i < curve.fp_rates.size(); ++i) {
    out += format_number(curve.fp_rates[i]);
    for (const auto& c : curve.classes) {
      out += "," + format_number(c.tp_rate_at(curve.fp_rates[i]));
    }
    out += "," + format_number(curve.etpr[i]) + "\n";
  }
  return out;
}

double F1Counts::precision() const {
  return tp + fp == 0 ? 0.0
                      : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double F1Counts::recall() const {
  return tp + fn == 0 ? 0.0
                      : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double F1Counts::f1() const {
  const std::uint64_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0
                    : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

ClipF1Counts collar_counts_by_clip(std::span<const Event> detections,
                                   std::span<const Event> references,
                                   std::span<const std::string> classes,
                                   const CollarParams& params) {
  auto dets = group_by_clip_class(detections);
  auto refs = group_by_clip_class(references);
  ClipF1Counts out;
  for (const auto& e : detections) out.try_emplace(e.clip_id, classes.size());
  for (const auto& e : references) out.try_emplace(e.clip_id, classes.size());

  static const std::vector<Event> kNone;
  for (auto& [clip, per_class] : out) {
    for (std::size_t c = 0; c < classes.size(); ++c) {
      auto d = dets.find({clip, classes[c]});
      auto r = refs.find({clip, classes[c]});
      const auto& dl = d == dets.end() ? kNone : d->second;
      const auto& rl = r == refs.end() ? kNone : r->second;
      std::vector<char> used(dl.size(), 0);
      std::uint64_t tp = 0;
      for (const auto& ref : rl) {
        const double offset_tol = std::max(
            params.onset_collar, params.offset_collar_rate * ref.duration());
        for (std::size_t k = 0; k < dl.size(); ++k) {
          if (used[k]) continue;
          if (std::abs(dl[k].onset - ref.onset) <=
                  params.onset_collar + kTimeTolerance &&
              std::abs(dl[k].offset - ref.offset) <=
                  offset_tol + kTimeTolerance) {
            used[k] = 1;
            ++tp;
            break;
          }
        }
      }
      per_class[c] = {tp, dl.size() - tp, rl.size() - tp};
    }
  }
  return out;
}

F1Result aggregate_f1(const ClipF1Counts& counts,
                      std::span<const std::string> classes,
                      const SampleWeights& weights) {
  F1Result result;
  for (const auto& c : classes) result.per_class[c] = {};
  for (const auto& [clip, per_class] : counts) {
    const std::uint64_t w = weights(clip);
    if (w == 0) continue;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      F1Counts scaled{w * per_class[c].tp, w * per_class[c].fp,
                      w * per_class[c].fn};
      result.per_class[classes[c]] += scaled;
    }
  }
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& c : classes) {
    const auto& k = result.per_class[c];
    if (k.tp + k.fn == 0) continue;
    sum += k.f1();
    ++n;
  }
  result.macro_f1 = n == 0 ? 0.0 : sum / static_cast<double>(n);
  return result;
}

F1Result collar_f1(std::span<const Event> detections,
                   std::span<const Event> references,
                   std::span<const std::string> classes,
                   const CollarParams& params) {
  return aggregate_f1(
      collar_counts_by_clip(detections, references, classes, params), classes);
}

}  // namespace sedeval
