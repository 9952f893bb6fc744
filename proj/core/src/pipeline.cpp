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

#include "sedeval/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <set>

#include "json.hpp"
#include "sedeval/errors.hpp"
#include "sedeval/harmonization.hpp"
#include "sedeval/io.hpp"

namespace sedeval {

#ifndef SEDEVAL_VERSION
#define SEDEVAL_VERSION "0.0.0"
#endif

std::string_view toolkit_version() { return SEDEVAL_VERSION; }

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

void check_keys(const ordered_json& obj, std::string_view where,
                std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw ValidationError(std::string(where) + " must be a JSON object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError("unknown key '" + key + "' in " +
                            std::string(where));
    }
  }
}

template <typename T>
void read_opt(const ordered_json& obj, const char* key, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("bad value for '") + key + "'");
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string primary_name(PrimaryMetric m) {
  return m == PrimaryMetric::kPsds1 ? metric_names::kPsds1
                                    : metric_names::kSegMpauc;
}

// "<audio_id>" + the window suffix.
std::string clip_file_stem(const std::string& recording,
                           const ClipWindow& window) {
  const std::string name = window.clip_name();
  return audio_id(recording) + name.substr(recording.size());
}

ScoreTimeline read_scores(const fs::path& file,
                          const std::vector<std::string>& classes,
                          const std::string& clip_id) {
  const std::string text = read_text_file(file);
  try {
    return parse_scores(text, classes, clip_id);
  } catch (const SchemaError& e) {
    throw SchemaError(file.string() + ": " + e.what());
  } catch (const TilingError& e) {
    throw TilingError(file.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(file.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(file.string() + ": " + e.what(), 0);
  }
}

}  // namespace

EvalConfig parse_eval_config(std::string_view json_text,
                             const fs::path& base_dir) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("invalid configuration JSON: ") +
                          e.what());
  }
  check_keys(j, "configuration",
             {"datasets", "runs", "score_classes", "psds", "segmpauc",
              "collar", "detection_threshold", "auxiliary_metrics", "filter",
              "longform", "bootstrap", "output", "jobs"});

  EvalConfig cfg;
  if (!j.contains("datasets") || !j["datasets"].is_array() ||
      j["datasets"].empty()) {
    throw ValidationError("configuration needs a non-empty 'datasets' list");
  }
  std::set<std::string> names;
  bool have_psds = false;
  bool have_auc = false;
  for (const auto& d : j["datasets"]) {
    check_keys(d, "dataset", {"name", "primary_metric", "ground_truth",
                              "soft_labels", "durations", "classes"});
    DatasetSpec entry;
    read_opt(d, "name", entry.name);
    if (entry.name.empty()) throw ValidationError("dataset without a name");
    if (!names.insert(entry.name).second) {
      throw ValidationError("duplicate dataset '" + entry.name + "'");
    }
    std::string metric;
    read_opt(d, "primary_metric", metric);
    if (metric == metric_names::kPsds1) {
      entry.primary = PrimaryMetric::kPsds1;
    } else if (metric == metric_names::kSegMpauc) {
      entry.primary = PrimaryMetric::kSegMpauc;
    } else {
      throw ValidationError("dataset '" + entry.name +
                            "': primary_metric must be psds1 or segmpauc");
    }
    std::string gt, soft, dur;
    read_opt(d, "ground_truth", gt);
    read_opt(d, "soft_labels", soft);
    read_opt(d, "durations", dur);
    if (dur.empty()) {
      throw ValidationError("dataset '" + entry.name + "' needs 'durations'");
    }
    entry.durations = resolve(base_dir, dur);
    if (entry.primary == PrimaryMetric::kPsds1) {
      if (have_psds) {
        throw ValidationError("only one dataset may be evaluated with psds1");
      }
      have_psds = true;
      if (gt.empty() || !soft.empty()) {
        throw ValidationError("dataset '" + entry.name +
                              "': psds1 needs 'ground_truth' and is not "
                              "evaluated on soft labels");
      }
      entry.ground_truth = resolve(base_dir, gt);
      entry.classes = desed_classes();
    } else {
      if (have_auc) {
        throw ValidationError(
            "only one dataset may be evaluated with segmpauc");
      }
      have_auc = true;
      if (soft.empty() || !gt.empty()) {
        throw ValidationError("dataset '" + entry.name +
                              "': segmpauc needs 'soft_labels' and is not "
                              "evaluated on strong labels");
      }
      entry.soft_labels = resolve(base_dir, soft);
      entry.classes = maestro_eval_classes();
    }
    read_opt(d, "classes", entry.classes);
    if (entry.classes.empty()) {
      throw ValidationError("dataset '" + entry.name + "' has no classes");
    }
    cfg.datasets.push_back(std::move(entry));
  }
  // Strong family first, whatever the file order.
  std::stable_sort(cfg.datasets.begin(), cfg.datasets.end(),
                   [](const DatasetSpec& a, const DatasetSpec& b) {
                     return a.primary == PrimaryMetric::kPsds1 &&
                            b.primary != PrimaryMetric::kPsds1;
                   });

  std::vector<std::string> runs;
  read_opt(j, "runs", runs);
  if (runs.empty()) throw ValidationError("configuration needs 'runs'");
  for (const auto& r : runs) cfg.runs.push_back(resolve(base_dir, r));

  read_opt(j, "score_classes", cfg.score_classes);
  if (cfg.score_classes.empty()) {
    for (const auto& d : cfg.datasets) {
      for (const auto& c : d.classes) {
        if (std::find(cfg.score_classes.begin(), cfg.score_classes.end(),
                      c) == cfg.score_classes.end()) {
          cfg.score_classes.push_back(c);
        }
      }
    }
  }
  for (const auto& d : cfg.datasets) {
    for (const auto& c : d.classes) {
      if (std::find(cfg.score_classes.begin(), cfg.score_classes.end(), c) ==
          cfg.score_classes.end()) {
        throw SchemaError("class '" + c + "' of dataset '" + d.name +
                          "' is missing from score_classes");
      }
    }
  }

  if (auto it = j.find("psds"); it != j.end()) {
    check_keys(*it, "psds",
               {"dtc_threshold", "gtc_threshold", "alpha_st", "max_efpr"});
    read_opt(*it, "dtc_threshold", cfg.params.psds.rho_dtc);
    read_opt(*it, "gtc_threshold", cfg.params.psds.rho_gtc);
    read_opt(*it, "alpha_st", cfg.params.psds.alpha_st);
    read_opt(*it, "max_efpr", cfg.params.psds.e_max);
  }
  cfg.params.psds.validate();
  if (auto it = j.find("segmpauc"); it != j.end()) {
    check_keys(*it, "segmpauc",
               {"max_fpr", "segment_length", "binarization_threshold"});
    read_opt(*it, "max_fpr", cfg.params.segment.max_fpr);
    read_opt(*it, "segment_length", cfg.params.segment.segment_length);
    read_opt(*it, "binarization_threshold",
             cfg.params.segment.binarization_threshold);
  }
  cfg.params.segment.validate();
  if (auto it = j.find("collar"); it != j.end()) {
    check_keys(*it, "collar", {"onset_collar", "offset_collar_rate"});
    read_opt(*it, "onset_collar", cfg.params.collar.onset_collar);
    read_opt(*it, "offset_collar_rate", cfg.params.collar.offset_collar_rate);
  }
  if (!(cfg.params.collar.onset_collar >= 0.0) ||
      !(cfg.params.collar.offset_collar_rate >= 0.0)) {
    throw ValidationError("collars must be >= 0");
  }
  read_opt(j, "detection_threshold", cfg.params.detection_threshold);
  if (!(cfg.params.detection_threshold >= 0.0 &&
        cfg.params.detection_threshold <= 1.0)) {
    throw ValidationError("detection_threshold must be in [0, 1]");
  }
  read_opt(j, "auxiliary_metrics", cfg.params.auxiliary);

  std::string filter;
  read_opt(j, "filter", filter);
  if (!filter.empty()) cfg.filter_config = resolve(base_dir, filter);

  if (auto it = j.find("longform"); it != j.end()) {
    check_keys(*it, "longform", {"clip_length", "overlap_fraction"});
    read_opt(*it, "clip_length", cfg.clip_length);
    read_opt(*it, "overlap_fraction", cfg.overlap_fraction);
  }
  if (!(cfg.clip_length > 0.0)) {
    throw ValidationError("clip_length must be positive");
  }
  if (!(cfg.overlap_fraction >= 0.0 && cfg.overlap_fraction < 1.0)) {
    throw ValidationError("overlap_fraction must be in [0, 1)");
  }

  if (auto it = j.find("bootstrap"); it != j.end()) {
    check_keys(*it, "bootstrap", {"n_samples", "seed", "shared_plan"});
    read_opt(*it, "n_samples", cfg.bootstrap.n_samples);
    read_opt(*it, "seed", cfg.bootstrap.seed);
    read_opt(*it, "shared_plan", cfg.bootstrap.shared_plan);
  }
  if (cfg.bootstrap.n_samples == 0) {
    throw ValidationError("bootstrap.n_samples must be >= 1");
  }

  std::string output;
  read_opt(j, "output", output);
  if (!output.empty()) cfg.output = resolve(base_dir, output);
  read_opt(j, "jobs", cfg.jobs);
  if (cfg.jobs == 0) cfg.jobs = 1;
  return cfg;
}

std::string format_eval_config(const EvalConfig& c) {
  ordered_json j;
  j["datasets"] = ordered_json::array();
  for (const auto& d : c.datasets) {
    ordered_json dj;
    dj["name"] = d.name;
    dj["primary_metric"] = primary_name(d.primary);
    if (d.primary == PrimaryMetric::kPsds1) {
      dj["ground_truth"] = d.ground_truth.generic_string();
    } else {
      dj["soft_labels"] = d.soft_labels.generic_string();
    }
    dj["durations"] = d.durations.generic_string();
    dj["classes"] = d.classes;
    j["datasets"].push_back(std::move(dj));
  }
  j["runs"] = ordered_json::array();
  for (const auto& r : c.runs) j["runs"].push_back(r.generic_string());
  j["score_classes"] = c.score_classes;
  j["psds"] = {{"dtc_threshold", c.params.psds.rho_dtc},
               {"gtc_threshold", c.params.psds.rho_gtc},
               {"alpha_st", c.params.psds.alpha_st},
               {"max_efpr", c.params.psds.e_max}};
  j["segmpauc"] = {
      {"max_fpr", c.params.segment.max_fpr},
      {"segment_length", c.params.segment.segment_length},
      {"binarization_threshold", c.params.segment.binarization_threshold}};
  j["collar"] = {{"onset_collar", c.params.collar.onset_collar},
                 {"offset_collar_rate", c.params.collar.offset_collar_rate}};
  j["detection_threshold"] = c.params.detection_threshold;
  j["auxiliary_metrics"] = c.params.auxiliary;
  if (c.filter_config) {
    j["filter"] = c.filter_config->generic_string();
  } else {
    j["filter"] = nullptr;
  }
  j["longform"] = {{"clip_length", c.clip_length},
                   {"overlap_fraction", c.overlap_fraction}};
  j["bootstrap"] = {{"n_samples", c.bootstrap.n_samples},
                    {"seed", c.bootstrap.seed},
                    {"shared_plan", c.bootstrap.shared_plan}};
  j["output"] = c.output.generic_string();
  return j.dump(2);
}

RawRunScores load_run_scores(const fs::path& dir,
                             const EvaluationBundle& bundle,
                             const std::vector<std::string>& score_classes,
                             double clip_length, double overlap_fraction) {
  if (!fs::is_directory(dir)) {
    throw IoError("score directory '" + dir.string() + "' does not exist");
  }
  RawRunScores raw;
  std::vector<std::string> missing;
  if (bundle.strong) {
    for (const auto& [clip, duration] : bundle.strong->durations) {
      const fs::path file = dir / (audio_id(clip) + ".tsv");
      if (!fs::exists(file)) {
        missing.push_back(clip);
        continue;
      }
      raw.strong.emplace(clip, read_scores(file, score_classes, clip));
    }
  }
  if (bundle.soft) {
    for (const auto& [rec, duration] : bundle.soft->durations) {
      auto& clips = raw.soft[rec];
      for (const auto& w :
           split_recording(rec, duration, clip_length, overlap_fraction)) {
        const std::string stem = clip_file_stem(rec, w);
        const fs::path file = dir / (stem + ".tsv");
        if (!fs::exists(file)) {
          missing.push_back(stem);
          continue;
        }
        clips.emplace_back(w, read_scores(file, score_classes, stem));
      }
    }
  }
  if (!missing.empty()) {
    std::string msg = "no score file in '" + dir.string() + "' for:";
    for (const auto& m : missing) msg += " " + m;
    throw CoverageError(msg);
  }
  return raw;
}

LoadedInputs load_inputs(const EvalConfig& config) {
  LoadedInputs in;
  for (const auto& d : config.datasets) {
    DurationMap durations = parse_durations(read_text_file(d.durations));
    if (d.primary == PrimaryMetric::kPsds1) {
      StrongDataset ds;
      ds.name = d.name;
      ds.classes = d.classes;
      ds.durations = std::move(durations);
      ds.references = parse_ground_truth(read_text_file(d.ground_truth));
      for (const auto& [clip, events] : ds.references) {
        if (!ds.durations.count(clip)) {
          throw SchemaError("ground-truth clip '" + clip +
                            "' is not listed in the durations file");
        }
      }
      in.bundle.strong = std::move(ds);
    } else {
      SoftDataset ds;
      ds.name = d.name;
      ds.classes = d.classes;
      ds.durations = std::move(durations);
      for (auto& l : parse_soft_labels(read_text_file(d.soft_labels))) {
        if (!ds.durations.count(l.clip_id)) {
          throw SchemaError("soft-label recording '" + l.clip_id +
                            "' is not listed in the durations file");
        }
        ds.labels[l.clip_id].push_back(std::move(l));
      }
      in.bundle.soft = std::move(ds);
    }
  }
  if (config.filter_config) {
    in.filter = parse_filter_config(read_text_file(*config.filter_config));
  }
  for (const auto& dir : config.runs) {
    in.runs.push_back(load_run_scores(dir, in.bundle, config.score_classes,
                                      config.clip_length,
                                      config.overlap_fraction));
  }
  return in;
}

Report run_evaluate(const EvalConfig& config) {
  LoadedInputs in = load_inputs(config);

  std::vector<RunScores> prepared;
  prepared.reserve(in.runs.size());
  for (const auto& raw : in.runs) {
    prepared.push_back(prepare_run(raw, in.bundle, in.filter,
                                   config.params.segment.segment_length));
  }
  std::vector<RunEvaluator> evaluators;
  evaluators.reserve(prepared.size());
  for (const auto& run : prepared) {
    evaluators.emplace_back(in.bundle, run, config.params, config.jobs);
  }

  std::vector<RunPlans> plans;
  if (config.bootstrap.shared_plan) {
    plans.push_back(make_run_plans(in.bundle, config.bootstrap.n_samples,
                                   config.bootstrap.seed));
  } else {
    for (std::size_t k = 0; k < evaluators.size(); ++k) {
      plans.push_back(make_run_plans(in.bundle, config.bootstrap.n_samples,
                                     config.bootstrap.seed + k));
    }
  }

  Report report;
  report.metrics = evaluate_bootstrapped(evaluators, plans, config.jobs);
  report.metrics.seed = config.bootstrap.seed;
  for (const auto& e : evaluators) report.runs.push_back(e.details());
  report.config_json = format_eval_config(config);

  const auto now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  report.generated_at = buf;

  if (!config.output.empty()) write_report(report, in.bundle, config.output);
  return report;
}

}  // namespace sedeval
