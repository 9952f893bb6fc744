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

// sedeval command-line tool. Exit codes: 0 success, 2 invalid input,
// 3 I/O failure, 1 anything else.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sedeval/bootstrap.hpp"
#include "sedeval/energy.hpp"
#include "sedeval/errors.hpp"
#include "sedeval/evaluation.hpp"
#include "sedeval/event_metrics.hpp"
#include "sedeval/harmonization.hpp"
#include "sedeval/io.hpp"
#include "sedeval/longform.hpp"
#include "sedeval/pipeline.hpp"
#include "sedeval/postprocess.hpp"
#include "sedeval/segment_metrics.hpp"

namespace fs = std::filesystem;
using namespace sedeval;

namespace {

struct Globals {
  std::string config;
  std::uint64_t seed = 0;
  bool seed_set = false;
  unsigned jobs = 1;
  std::string output;
};

void emit(const Globals& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
  } else {
    write_text_file(g.output, text);
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& f : split_list(s)) {
    auto v = parse_number(f);
    if (!v || *v != static_cast<int>(*v)) {
      throw ValidationError("'" + f + "' is not an integer");
    }
    out.push_back(static_cast<int>(*v));
  }
  return out;
}

// Class columns named in the header of a score file.
std::vector<std::string> header_classes(std::string_view text) {
  for (auto line : split_lines(text)) {
    auto fields = split_fields(line);
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() < 3) break;
    return {fields.begin() + 2, fields.end()};
  }
  throw ParseError("score file needs an 'onset\\toffset\\t<class>...' header",
                   1);
}

// Options shared by the single-dataset metric commands.
struct DataOptions {
  std::string ground_truth;
  std::string soft_labels;
  std::string durations;
  std::string scores;
  std::string classes;
  std::string score_classes;
  std::string filter;
  double clip_length = 10.0;
  double overlap = 0.5;
  double segment_length = 1.0;
  double label_threshold = 0.5;

  void add_to(CLI::App* cmd, bool strong, bool soft) {
    if (strong) {
      cmd->add_option("--ground-truth", ground_truth,
                      "Event annotations (filename, onset, offset, label)");
    }
    if (soft) {
      cmd->add_option("--soft-labels", soft_labels,
                      "Soft segment labels of long-form recordings");
      cmd->add_option("--clip-length", clip_length, "Clip length in seconds")
          ->capture_default_str();
      cmd->add_option("--overlap", overlap, "Clip overlap fraction")
          ->capture_default_str();
    }
    cmd->add_option("--durations", durations, "filename\\tduration file")
        ->required();
    cmd->add_option("--scores", scores, "Directory of score files")
        ->required();
    cmd->add_option("--classes", classes,
                    "Comma-separated evaluated classes");
    cmd->add_option("--score-classes", score_classes,
                    "Comma-separated columns of the score files "
                    "(default: the evaluated classes)");
    cmd->add_option("--filter", filter, "Median filter configuration");
  }
};

struct LoadedData {
  EvaluationBundle bundle;
  RunScores run;
  std::vector<std::string> classes;
};

LoadedData load_data(const DataOptions& o, double segment_length) {
  const bool strong = !o.ground_truth.empty();
  const bool soft = !o.soft_labels.empty();
  if (strong == soft) {
    throw ValidationError("give exactly one of --ground-truth, --soft-labels");
  }
  LoadedData d;
  auto classes = split_list(o.classes);
  DurationMap durations = parse_durations(read_text_file(o.durations));
  if (strong) {
    StrongDataset ds;
    ds.classes = classes.empty() ? desed_classes() : classes;
    ds.references = parse_ground_truth(read_text_file(o.ground_truth));
    ds.durations = std::move(durations);
    d.classes = ds.classes;
    d.bundle.strong = std::move(ds);
  } else {
    SoftDataset ds;
    ds.classes = classes.empty() ? maestro_eval_classes() : classes;
    for (auto& l : parse_soft_labels(read_text_file(o.soft_labels))) {
      ds.labels[l.clip_id].push_back(std::move(l));
    }
    ds.durations = std::move(durations);
    d.classes = ds.classes;
    d.bundle.soft = std::move(ds);
  }
  auto score_classes = split_list(o.score_classes);
  if (score_classes.empty()) score_classes = d.classes;
  std::optional<FilterConfig> filter;
  if (!o.filter.empty()) {
    filter = parse_filter_config(read_text_file(o.filter));
  }
  auto raw = load_run_scores(o.scores, d.bundle, score_classes, o.clip_length,
                             o.overlap);
  d.run = prepare_run(raw, d.bundle, filter, segment_length);
  return d;
}

// Segment score and label matrices of whichever family was loaded.
void segment_matrices(const LoadedData& d, double segment_length,
                      double label_threshold,
                      std::vector<SegmentScoreMatrix>& scores,
                      std::vector<SegmentLabelMatrix>& labels) {
  if (d.bundle.strong) {
    const auto& ds = *d.bundle.strong;
    for (const auto& [clip, timeline] : d.run.strong) {
      auto m = segment_scores(timeline, segment_length);
      m.recording_id = clip;
      scores.push_back(std::move(m));
      auto it = ds.references.find(clip);
      std::span<const Event> events;
      if (it != ds.references.end()) events = it->second;
      labels.push_back(segment_labels_from_events(
          clip, events, ds.classes, ds.durations.at(clip), segment_length));
    }
  } else {
    const auto& ds = *d.bundle.soft;
    for (const auto& [rec, matrix] : d.run.soft) {
      scores.push_back(matrix);
      auto it = ds.labels.find(rec);
      std::span<const SoftSegmentLabel> ls;
      if (it != ds.labels.end()) ls = it->second;
      labels.push_back(segment_labels_from_soft(rec, ls, ds.classes,
                                                ds.durations.at(rec),
                                                segment_length,
                                                label_threshold));
    }
  }
}

std::string fmt(double v) {
  return std::isfinite(v) ? format_number(v) : std::string("nan");
}

int cmd_evaluate(const Globals& g, std::optional<std::size_t> n_samples) {
  if (g.config.empty()) throw ValidationError("evaluate needs --config");
  const fs::path path(g.config);
  EvalConfig cfg = parse_eval_config(read_text_file(path),
                                     fs::absolute(path).parent_path());
  if (g.seed_set) cfg.bootstrap.seed = g.seed;
  if (n_samples) cfg.bootstrap.n_samples = *n_samples;
  cfg.jobs = g.jobs;
  if (!g.output.empty()) cfg.output = g.output;
  Report report = run_evaluate(cfg);
  if (cfg.output.empty()) {
    std::cout << report_to_json(report);
  } else {
    for (const auto& [name, st] : report.metrics.metrics) {
      std::cout << name << '\t' << fmt(st.mean) << '\t' << fmt(st.std)
                << '\n';
    }
    if (report.metrics.ranking) {
      std::cout << "ranking\t" << fmt(*report.metrics.ranking) << '\n';
    }
  }
  return 0;
}

int cmd_psds(const Globals& g, const DataOptions& o, PsdsParams params,
             const std::string& roc_csv) {
  params.validate();
  LoadedData d = load_data(o, 1.0);
  if (!d.bundle.strong) throw ValidationError("psds needs --ground-truth");
  const auto& ds = *d.bundle.strong;
  auto evidence = PsdEvidence::build(d.run.strong, ds.references,
                                     ds.durations, ds.classes, params, g.jobs);
  PsdRoc roc = evidence.roc();
  std::string out = "psds\t" + fmt(psds(roc)) + '\n';
  for (const auto& c : roc.excluded) out += "excluded\t" + c + '\n';
  emit(g, out);
  if (!roc_csv.empty()) write_text_file(roc_csv, format_roc_csv(roc));
  return 0;
}

int cmd_segmpauc(const Globals& g, const DataOptions& o,
                 SegMpaucParams params) {
  params.validate();
  LoadedData d = load_data(o, params.segment_length);
  std::vector<SegmentScoreMatrix> scores;
  std::vector<SegmentLabelMatrix> labels;
  segment_matrices(d, params.segment_length,
                   params.binarization_threshold, scores, labels);
  auto r = seg_mpauc(scores, labels, d.classes, params);
  std::string out = "segmpauc\t" + fmt(r.value) + '\n';
  for (const auto& [c, v] : r.per_class) out += c + '\t' + fmt(v) + '\n';
  for (const auto& c : r.skipped) out += c + "\tundefined\n";
  emit(g, out);
  return 0;
}

int cmd_segment_f1(const Globals& g, const DataOptions& o,
                   double segment_length, double label_threshold,
                   double threshold, bool optimal) {
  LoadedData d = load_data(o, segment_length);
  std::vector<SegmentScoreMatrix> scores;
  std::vector<SegmentLabelMatrix> labels;
  segment_matrices(d, segment_length, label_threshold, scores, labels);
  auto mode =
      optimal ? ThresholdMode::optimal() : ThresholdMode::fixed(threshold);
  auto r = segment_f1_er(scores, labels, d.classes, mode);
  std::string out = "macro_f1\t" + fmt(r.macro_f1) + "\nmacro_er\t" +
                    fmt(r.macro_er) + "\nclass\tthreshold\ttp\tfp\tfn\tf1\ter\n";
  for (const auto& [c, s] : r.per_class) {
    out += c + '\t' + fmt(s.threshold) + '\t' + std::to_string(s.tp) + '\t' +
           std::to_string(s.fp) + '\t' + std::to_string(s.fn) + '\t' +
           fmt(s.f1) + '\t' + fmt(s.error_rate) + '\n';
  }
  emit(g, out);
  return 0;
}

int cmd_collar_f1(const Globals& g, const DataOptions& o,
                  CollarParams params, double threshold) {
  LoadedData d = load_data(o, 1.0);
  if (!d.bundle.strong) throw ValidationError("collar-f1 needs --ground-truth");
  std::vector<Event> detections;
  for (const auto& [clip, timeline] : d.run.strong) {
    auto ev = extract_events(timeline, threshold);
    detections.insert(detections.end(), ev.begin(), ev.end());
  }
  auto refs = flatten(d.bundle.strong->references);
  auto r = collar_f1(detections, refs, d.classes, params);
  std::string out =
      "macro_f1\t" + fmt(r.macro_f1) + "\nclass\ttp\tfp\tfn\tf1\n";
  for (const auto& [c, s] : r.per_class) {
    out += c + '\t' + std::to_string(s.tp) + '\t' + std::to_string(s.fp) +
           '\t' + std::to_string(s.fn) + '\t' + fmt(s.f1()) + '\n';
  }
  emit(g, out);
  return 0;
}

int cmd_filter(const Globals& g, const std::string& input,
               const std::string& filter_path,
               std::optional<double> events_threshold) {
  const std::string text = read_text_file(input);
  auto classes = header_classes(text);
  auto timeline =
      parse_scores(text, classes, audio_id(fs::path(input).filename().string()));
  auto cfg = parse_filter_config(read_text_file(filter_path));
  auto filtered = median_filter(timeline, cfg);
  if (events_threshold) {
    emit(g, format_ground_truth(extract_events(filtered, *events_threshold)));
  } else {
    emit(g, format_scores(filtered));
  }
  return 0;
}

int cmd_tune_filter(const Globals& g, const std::string& scores,
                    const std::string& candidates, int budget,
                    double frame_length) {
  if (g.config.empty()) throw ValidationError("tune-filter needs --config");
  const fs::path path(g.config);
  EvalConfig cfg = parse_eval_config(read_text_file(path),
                                     fs::absolute(path).parent_path());
  cfg.filter_config.reset();
  if (!scores.empty()) cfg.runs = {fs::path(scores)};
  cfg.runs.resize(1);
  LoadedInputs in = load_inputs(cfg);
  auto cand = parse_ints(candidates);
  auto result = tune_filter_lengths(in.bundle, in.runs[0], cfg.params, cand,
                                    budget, g.seed_set ? g.seed : 0,
                                    frame_length, g.jobs);
  std::cerr << "best trial " << result.best_index << " objective "
            << fmt(result.best_objective) << '\n';
  emit(g, format_filter_config(result.best));
  return 0;
}

int cmd_reconstruct(const Globals& g, const DataOptions& o) {
  LoadedData d;
  SoftDataset ds;
  auto classes = split_list(o.classes);
  ds.classes = classes.empty() ? maestro_eval_classes() : classes;
  ds.durations = parse_durations(read_text_file(o.durations));
  d.bundle.soft = ds;
  auto score_classes = split_list(o.score_classes);
  if (score_classes.empty()) score_classes = ds.classes;
  auto raw = load_run_scores(o.scores, d.bundle, score_classes, o.clip_length,
                             o.overlap);
  auto run = prepare_run(raw, d.bundle, std::nullopt, o.segment_length);
  std::string out = "recording\tonset\toffset";
  for (const auto& c : ds.classes) out += '\t' + c;
  out += '\n';
  for (const auto& [rec, m] : run.soft) {
    for (std::size_t s = 0; s < m.num_segments; ++s) {
      out += rec + '\t' + format_number(m.segment_onset(s)) + '\t' +
             format_number(m.segment_offset(s));
      for (std::size_t c = 0; c < m.num_classes(); ++c) {
        out += '\t' + format_number(m.at(s, c));
      }
      out += '\n';
    }
  }
  emit(g, out);
  return 0;
}

int cmd_split(const Globals& g, const std::string& durations,
              double clip_length, double overlap) {
  auto recs = parse_durations(read_text_file(durations));
  std::string out = "recording\tstart\tend\tclip\n";
  for (const auto& [rec, dur] : recs) {
    for (const auto& w : split_recording(rec, dur, clip_length, overlap)) {
      out += rec + '\t' + format_number(w.start) + '\t' +
             format_number(w.end) + '\t' + audio_id(rec) +
             w.clip_name().substr(rec.size()) + '\n';
    }
  }
  emit(g, out);
  return 0;
}

int cmd_map_labels(const Globals& g, const std::string& input,
                   const std::string& map_path, const std::string& mask_tag) {
  ClassMap map = map_path.empty() ? default_class_map()
                                  : parse_class_map(read_text_file(map_path));
  if (!mask_tag.empty()) {
    std::vector<std::string> combined = desed_classes();
    for (const auto& c : maestro_training_classes()) {
      if (std::find(combined.begin(), combined.end(), c) == combined.end()) {
        combined.push_back(c);
      }
    }
    std::map<std::string, std::vector<std::string>> per_dataset{
        {"desed", desed_classes()}, {"maestro", maestro_training_classes()}};
    auto mask = build_class_mask(DatasetTag{mask_tag}, combined, per_dataset,
                                 map);
    std::string out = "class\tsupervised\n";
    for (std::size_t i = 0; i < combined.size(); ++i) {
      out += combined[i] + '\t' + (mask.supervised[i] ? "1" : "0") + '\n';
    }
    emit(g, out);
    return 0;
  }
  if (input.empty()) {
    emit(g, format_class_map(map));
    return 0;
  }
  auto labels = parse_soft_labels(read_text_file(input));
  emit(g, format_soft_labels(expand_targets(labels, map)));
  return 0;
}

int cmd_bootstrap_plan(const Globals& g, const std::string& durations,
                       std::size_t n_samples) {
  auto d = parse_durations(read_text_file(durations));
  std::vector<std::string> ids;
  for (const auto& [id, dur] : d) ids.push_back(id);
  auto plan = balanced_bootstrap(ids, n_samples, g.seed_set ? g.seed : 0);
  std::string out = "# generator_id=" + plan.generator_id +
                    " seed=" + std::to_string(plan.seed) +
                    " n_samples=" + std::to_string(plan.n_samples()) +
                    "\nsample\tfilename\n";
  for (std::size_t k = 0; k < plan.samples.size(); ++k) {
    for (const auto& id : plan.samples[k]) {
      out += std::to_string(k) + '\t' + id + '\n';
    }
  }
  emit(g, out);
  return 0;
}

int cmd_energy(const Globals& g, double system, double measured,
               std::optional<double> reference, const std::string& preset) {
  double ref = 0.0;
  if (reference) {
    ref = *reference;
  } else {
    auto p = baseline_reference_kwh(preset);
    if (!p) throw ValidationError("unknown preset '" + preset + "'");
    ref = *p;
  }
  emit(g, format_number(energy_normalize(system, measured, ref)) + '\n');
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sound event detection evaluation toolkit"};
  app.set_version_flag("--version", std::string(toolkit_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "JSON evaluation configuration");
  app.add_option("--seed", g.seed, "Random seed")
      ->each([&g](const std::string&) { g.seed_set = true; });
  app.add_option("--jobs", g.jobs, "Worker threads")->capture_default_str();
  app.add_option("--output", g.output,
                 "Output file (evaluate: output directory)");

  std::optional<std::size_t> n_samples;
  auto* evaluate = app.add_subcommand("evaluate", "Full bootstrapped evaluation");
  evaluate->add_option("--n-samples", n_samples, "Override bootstrap samples");

  DataOptions psds_opts;
  PsdsParams psds_params;
  std::string roc_csv;
  auto* psds_cmd = app.add_subcommand("psds", "PSDS of one run");
  psds_opts.add_to(psds_cmd, true, false);
  psds_cmd->add_option("--dtc", psds_params.rho_dtc)->capture_default_str();
  psds_cmd->add_option("--gtc", psds_params.rho_gtc)->capture_default_str();
  psds_cmd->add_option("--alpha-st", psds_params.alpha_st)
      ->capture_default_str();
  psds_cmd->add_option("--max-efpr", psds_params.e_max)->capture_default_str();
  psds_cmd->add_option("--roc-csv", roc_csv, "Write the PSD-ROC as CSV");

  DataOptions auc_opts;
  SegMpaucParams auc_params;
  auto* auc_cmd = app.add_subcommand("segmpauc", "Segment-based mean pAUC");
  auc_opts.add_to(auc_cmd, true, true);
  auc_cmd->add_option("--max-fpr", auc_params.max_fpr)->capture_default_str();
  auc_cmd->add_option("--segment-length", auc_params.segment_length)
      ->capture_default_str();
  auc_cmd->add_option("--label-threshold", auc_params.binarization_threshold,
                      "Soft label binarization threshold")
      ->capture_default_str();

  DataOptions collar_opts;
  CollarParams collar_params;
  double collar_threshold = 0.5;
  auto* collar_cmd = app.add_subcommand("collar-f1", "Collar-based event F1");
  collar_opts.add_to(collar_cmd, true, false);
  collar_cmd->add_option("--threshold", collar_threshold)
      ->capture_default_str();
  collar_cmd->add_option("--onset-collar", collar_params.onset_collar)
      ->capture_default_str();
  collar_cmd->add_option("--offset-collar-rate",
                         collar_params.offset_collar_rate)
      ->capture_default_str();

  DataOptions seg_opts;
  double seg_length = 1.0, seg_label_threshold = 0.5, seg_threshold = 0.5;
  bool seg_optimal = false;
  auto* seg_cmd = app.add_subcommand("segment-f1", "Segment-based F1 and ER");
  seg_opts.add_to(seg_cmd, true, true);
  seg_cmd->add_option("--segment-length", seg_length)->capture_default_str();
  seg_cmd->add_option("--label-threshold", seg_label_threshold)
      ->capture_default_str();
  seg_cmd->add_option("--threshold", seg_threshold)->capture_default_str();
  seg_cmd->add_flag("--optimal", seg_optimal,
                    "Per-class F1-optimal thresholds");

  std::string filter_input, filter_cfg;
  std::optional<double> filter_events;
  auto* filter_cmd = app.add_subcommand("filter", "Median-filter a score file");
  filter_cmd->add_option("--input", filter_input)->required();
  filter_cmd->add_option("--filter", filter_cfg)->required();
  filter_cmd->add_option("--events", filter_events,
                         "Print events at this threshold instead of scores");

  std::string tune_scores, tune_candidates = "1,3,5,7,9,11,13,15,17,19,21";
  int tune_budget = 200;
  double tune_frame = kDefaultFrameLength;
  auto* tune_cmd =
      app.add_subcommand("tune-filter", "Random search of filter lengths");
  tune_cmd->add_option("--scores", tune_scores,
                       "Development scores (default: first configured run)");
  tune_cmd->add_option("--candidates", tune_candidates)->capture_default_str();
  tune_cmd->add_option("--budget", tune_budget)->capture_default_str();
  tune_cmd->add_option("--frame-length", tune_frame)->capture_default_str();

  DataOptions rec_opts;
  auto* rec_cmd = app.add_subcommand(
      "reconstruct", "Segment scores of long-form recordings from clips");
  rec_cmd->add_option("--durations", rec_opts.durations)->required();
  rec_cmd->add_option("--scores", rec_opts.scores)->required();
  rec_cmd->add_option("--classes", rec_opts.classes);
  rec_cmd->add_option("--score-classes", rec_opts.score_classes);
  rec_cmd->add_option("--clip-length", rec_opts.clip_length)
      ->capture_default_str();
  rec_cmd->add_option("--overlap", rec_opts.overlap)->capture_default_str();
  rec_cmd->add_option("--segment-length", rec_opts.segment_length)
      ->capture_default_str();

  std::string split_durations;
  double split_clip = 10.0, split_overlap = 0.5;
  auto* split_cmd =
      app.add_subcommand("split", "Clip windows of long-form recordings");
  split_cmd->add_option("--durations", split_durations)->required();
  split_cmd->add_option("--clip-length", split_clip)->capture_default_str();
  split_cmd->add_option("--overlap", split_overlap)->capture_default_str();

  std::string map_input, map_file, map_mask;
  auto* map_cmd = app.add_subcommand(
      "map-labels", "Add parent-class labels, or print the map or a mask");
  map_cmd->add_option("--input", map_input, "Soft labels to expand");
  map_cmd->add_option("--class-map", map_file, "child\\tparent TSV");
  map_cmd->add_option("--mask", map_mask,
                      "Print the class mask of this dataset tag");

  std::string plan_durations;
  std::size_t plan_samples = 20;
  auto* plan_cmd =
      app.add_subcommand("bootstrap-plan", "Balanced bootstrap samples");
  plan_cmd->add_option("--durations", plan_durations)->required();
  plan_cmd->add_option("--n-samples", plan_samples)->capture_default_str();

  double e_system = 0.0, e_measured = 0.0;
  std::optional<double> e_reference;
  std::string e_preset = "train";
  auto* energy_cmd = app.add_subcommand(
      "energy-normalize", "Scale energy onto the reference hardware");
  energy_cmd->add_option("--system-kwh", e_system)->required();
  energy_cmd->add_option("--baseline-measured-kwh", e_measured)->required();
  energy_cmd->add_option("--baseline-reference-kwh", e_reference);
  energy_cmd->add_option("--preset", e_preset,
                         "train, devtest, train-gpu or devtest-gpu")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*evaluate) return cmd_evaluate(g, n_samples);
    if (*psds_cmd) return cmd_psds(g, psds_opts, psds_params, roc_csv);
    if (*auc_cmd) return cmd_segmpauc(g, auc_opts, auc_params);
    if (*collar_cmd) {
      return cmd_collar_f1(g, collar_opts, collar_params, collar_threshold);
    }
    if (*seg_cmd) {
      return cmd_segment_f1(g, seg_opts, seg_length, seg_label_threshold,
                            seg_threshold, seg_optimal);
    }
    if (*filter_cmd) return cmd_filter(g, filter_input, filter_cfg, filter_events);
    if (*tune_cmd) {
      return cmd_tune_filter(g, tune_scores, tune_candidates, tune_budget,
                             tune_frame);
    }
    if (*rec_cmd) return cmd_reconstruct(g, rec_opts);
    if (*split_cmd) {
      return cmd_split(g, split_durations, split_clip, split_overlap);
    }
    if (*map_cmd) return cmd_map_labels(g, map_input, map_file, map_mask);
    if (*plan_cmd) return cmd_bootstrap_plan(g, plan_durations, plan_samples);
    if (*energy_cmd) {
      return cmd_energy(g, e_system, e_measured, e_reference, e_preset);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
