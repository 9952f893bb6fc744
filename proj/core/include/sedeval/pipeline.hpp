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

// End-to-end evaluation driven by a JSON configuration file.
//
// Directory conventions:
//   * strong dataset: one score file "<audio_id>.tsv" per clip listed in the
//     durations file;
//   * soft dataset: one score file "<audio_id>@<start_ms>-<end_ms>.tsv" per
//     window obtained by splitting each listed recording with the configured
//     clip length and overlap.
// audio_id is the file name without its audio extension.

#ifndef SEDEVAL_PIPELINE_HPP_
#define SEDEVAL_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sedeval/bootstrap.hpp"
#include "sedeval/evaluation.hpp"
#include "sedeval/postprocess.hpp"

namespace sedeval {

inline constexpr int kReportSchemaVersion = 1;

// Toolkit version string compiled into the library.
std::string_view toolkit_version();

enum class PrimaryMetric { kPsds1, kSegMpauc };

struct DatasetSpec {
  std::string name;
  PrimaryMetric primary = PrimaryMetric::kPsds1;
  std::filesystem::path ground_truth;  // kPsds1
  std::filesystem::path soft_labels;   // kSegMpauc
  std::filesystem::path durations;
  std::vector<std::string> classes;
};

struct BootstrapSettings {
  std::size_t n_samples = 20;
  std::uint64_t seed = 0;
  // false: run k uses its own plans drawn with seed + k.
  bool shared_plan = true;
};

struct EvalConfig {
  std::vector<DatasetSpec> datasets;
  std::vector<std::filesystem::path> runs;  // one score directory per run
  std::vector<std::string> score_classes;   // columns of every score file
  EvalParams params;
  std::optional<std::filesystem::path> filter_config;
  double clip_length = 10.0;
  double overlap_fraction = 0.5;
  BootstrapSettings bootstrap;
  std::filesystem::path output;
  unsigned jobs = 1;
};

// Relative paths are resolved against `base_dir`. Throws ValidationError for
// an invalid configuration (including any Table-1 cross cell: a dataset may
// only request the primary metric matching its annotation type).
EvalConfig parse_eval_config(std::string_view json_text,
                             const std::filesystem::path& base_dir);
// JSON echo of the configuration, as embedded in reports.
std::string format_eval_config(const EvalConfig& config);

struct LoadedInputs {
  EvaluationBundle bundle;
  std::vector<RawRunScores> runs;
  std::optional<FilterConfig> filter;
};

// Reads every annotation and score file named by the configuration.
LoadedInputs load_inputs(const EvalConfig& config);

// Reads one run directory for `bundle`.
RawRunScores load_run_scores(const std::filesystem::path& dir,
                             const EvaluationBundle& bundle,
                             const std::vector<std::string>& score_classes,
                             double clip_length, double overlap_fraction);

struct Report {
  MetricReport metrics;
  std::vector<RunDetails> runs;
  std::string config_json;
  std::string generated_at;  // excluded from reproducibility comparisons
};

// Parses, post-processes, evaluates and aggregates. When config.output is
// non-empty, writes report.json, per_class_run<k>.csv and psd_roc_run<k>.csv
// there.
Report run_evaluate(const EvalConfig& config);

// Stable, versioned JSON. The timestamp is written only when requested.
std::string report_to_json(const Report& report, bool with_timestamp = true);
std::string per_class_csv(const RunDetails& details,
                          const EvaluationBundle& bundle);
void write_report(const Report& report, const EvaluationBundle& bundle,
                  const std::filesystem::path& dir);

}  // namespace sedeval

#endif  // SEDEVAL_PIPELINE_HPP_
