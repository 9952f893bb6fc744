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

#include <cmath>

#include "json.hpp"
#include "sedeval/errors.hpp"
#include "sedeval/io.hpp"
#include "sedeval/pipeline.hpp"

namespace sedeval {

namespace {

using nlohmann::ordered_json;

// NaN and infinities become null.
ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json segment_table(const SegMpaucResult& auc,
                           const SegmentF1ErResult& fixed,
                           const SegmentF1ErResult& optimal,
                           const std::vector<std::string>& classes) {
  ordered_json out = ordered_json::object();
  for (const auto& c : classes) {
    ordered_json row;
    auto a = auc.per_class.find(c);
    row["segmpauc"] = a == auc.per_class.end() ? ordered_json(nullptr)
                                               : number(a->second);
    if (auto f = fixed.per_class.find(c); f != fixed.per_class.end()) {
      row["positives"] = f->second.positives;
      row["f1_fixed"] = number(f->second.f1);
      row["er_fixed"] = number(f->second.error_rate);
    }
    if (auto o = optimal.per_class.find(c); o != optimal.per_class.end()) {
      row["f1_optimal"] = number(o->second.f1);
      row["er_optimal"] = number(o->second.error_rate);
      row["optimal_threshold"] = number(o->second.threshold);
    }
    out[c] = std::move(row);
  }
  return out;
}

void add_csv_row(std::string& out, const std::string& dataset,
                 const std::string& cls, const char* metric, double value) {
  out += dataset + ',' + cls + ',' + metric + ',' +
         (std::isfinite(value) ? format_number(value) : std::string("nan")) +
         '\n';
}

void add_segment_rows(std::string& out, const std::string& dataset,
                      const std::vector<std::string>& classes,
                      const SegMpaucResult& auc,
                      const SegmentF1ErResult& fixed,
                      const SegmentF1ErResult& optimal) {
  for (const auto& c : classes) {
    if (auto a = auc.per_class.find(c); a != auc.per_class.end()) {
      add_csv_row(out, dataset, c, "segmpauc", a->second);
    }
    if (auto f = fixed.per_class.find(c); f != fixed.per_class.end()) {
      add_csv_row(out, dataset, c, "segment_f1_fixed", f->second.f1);
      add_csv_row(out, dataset, c, "segment_er_fixed", f->second.error_rate);
    }
    if (auto o = optimal.per_class.find(c); o != optimal.per_class.end()) {
      add_csv_row(out, dataset, c, "segment_f1_optimal", o->second.f1);
      add_csv_row(out, dataset, c, "segment_er_optimal",
                  o->second.error_rate);
      add_csv_row(out, dataset, c, "optimal_threshold", o->second.threshold);
    }
  }
}

}  // namespace

std::string report_to_json(const Report& report, bool with_timestamp) {
  const MetricReport& m = report.metrics;
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["toolkit"] = {{"name", "sedeval"}, {"version", toolkit_version()}};
  if (with_timestamp) j["generated_at"] = report.generated_at;

  ordered_json metrics = ordered_json::object();
  for (const auto& [name, st] : m.metrics) {
    ordered_json results = ordered_json::array();
    for (double r : st.results) results.push_back(number(r));
    metrics[name] = {{"mean", number(st.mean)},
                     {"std", number(st.std)},
                     {"results", std::move(results)}};
  }
  j["metrics"] = std::move(metrics);
  j["ranking"] = m.ranking ? number(*m.ranking) : ordered_json(nullptr);
  j["seed"] = m.seed;
  j["n_samples"] = m.n_samples;
  j["n_runs"] = m.n_runs;
  j["generator_id"] = m.generator_id;
  j["std_convention"] = "population";
  j["results_order"] = "run-major, then bootstrap sample";

  ordered_json config =
      report.config_json.empty() ? ordered_json(nullptr)
                                 : ordered_json::parse(report.config_json);
  j["parameters"] = config;

  std::vector<std::string> strong_classes, soft_classes;
  if (config.is_object()) {
    for (const auto& d : config["datasets"]) {
      auto& dst = d["primary_metric"] == metric_names::kPsds1 ? strong_classes
                                                              : soft_classes;
      dst = d["classes"].get<std::vector<std::string>>();
    }
  }

  ordered_json runs = ordered_json::array();
  for (const auto& r : report.runs) {
    ordered_json rj;
    if (r.psd_roc) {
      rj["psds1"] = number(r.psds1);
      rj["psds_audio_hours"] = number(r.psd_roc->audio_hours);
      rj["excluded_classes"] = r.psd_roc->excluded;
      ordered_json collar = ordered_json::object();
      for (const auto& [c, counts] : r.collar.per_class) {
        collar[c] = {{"tp", counts.tp},
                     {"fp", counts.fp},
                     {"fn", counts.fn},
                     {"f1", number(counts.f1())}};
      }
      rj["collar_f1"] = {{"macro", number(r.collar.macro_f1)},
                         {"per_class", std::move(collar)}};
      rj["strong_segment"] = {
          {"segmpauc", number(r.strong_auc.value)},
          {"skipped_classes", r.strong_auc.skipped},
          {"per_class", segment_table(r.strong_auc, r.strong_fixed,
                                      r.strong_optimal, strong_classes)}};
    }
    if (!r.soft_auc.per_class.empty() || !r.soft_auc.skipped.empty()) {
      rj["soft_segment"] = {
          {"segmpauc", number(r.soft_auc.value)},
          {"skipped_classes", r.soft_auc.skipped},
          {"per_class", segment_table(r.soft_auc, r.soft_fixed,
                                      r.soft_optimal, soft_classes)}};
    }
    runs.push_back(std::move(rj));
  }
  j["runs"] = std::move(runs);
  j["energy_normalization"] = {
      {"formula",
       "system_kwh * baseline_reference_kwh / baseline_measured_kwh"},
      {"note", "linear ratio scaling; no official formula is published"}};
  return j.dump(2) + "\n";
}

std::string per_class_csv(const RunDetails& details,
                          const EvaluationBundle& bundle) {
  std::string out = "dataset,class,metric,value\n";
  if (bundle.strong && details.psd_roc) {
    const auto& ds = *bundle.strong;
    for (const auto& roc : details.psd_roc->classes) {
      // Area under the class curve up to e_max, normalized.
      double area = 0.0;
      const double e_max = details.psd_roc->params.e_max;
      for (std::size_t i = 0; i < roc.step_fp_rates.size(); ++i) {
        const double lo = roc.step_fp_rates[i];
        if (lo >= e_max) break;
        const double hi = i + 1 < roc.step_fp_rates.size()
                              ? std::min(roc.step_fp_rates[i + 1], e_max)
                              : e_max;
        area += roc.step_tp_rates[i] * (hi - lo);
      }
      add_csv_row(out, ds.name, roc.label, "psd_roc_area", area / e_max);
    }
    for (const auto& [c, counts] : details.collar.per_class) {
      add_csv_row(out, ds.name, c, "collar_f1", counts.f1());
    }
    add_segment_rows(out, ds.name, ds.classes, details.strong_auc,
                     details.strong_fixed, details.strong_optimal);
  }
  if (bundle.soft) {
    const auto& ds = *bundle.soft;
    add_segment_rows(out, ds.name, ds.classes, details.soft_auc,
                     details.soft_fixed, details.soft_optimal);
  }
  return out;
}

void write_report(const Report& report, const EvaluationBundle& bundle,
                  const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + dir.string() +
                  "': " + ec.message());
  }
  write_text_file(dir / "report.json", report_to_json(report));
  for (std::size_t k = 0; k < report.runs.size(); ++k) {
    const auto& r = report.runs[k];
    const std::string suffix = "_run" + std::to_string(k) + ".csv";
    write_text_file(dir / ("per_class" + suffix), per_class_csv(r, bundle));
    if (r.psd_roc) {
      write_text_file(dir / ("psd_roc" + suffix), format_roc_csv(*r.psd_roc));
    }
  }
}

}  // namespace sedeval
