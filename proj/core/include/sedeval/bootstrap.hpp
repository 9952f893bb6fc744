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

// Balanced bootstrap over evaluation units and aggregation of run x sample
// results.

#ifndef SEDEVAL_BOOTSTRAP_HPP_
#define SEDEVAL_BOOTSTRAP_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sedeval/evaluation.hpp"
#include "sedeval/types.hpp"

namespace sedeval {

struct BootstrapPlan {
  std::vector<std::vector<std::string>> samples;
  std::uint64_t seed = 0;
  std::string generator_id;

  std::size_t n_samples() const { return samples.size(); }
  SampleWeights weights(std::size_t sample) const {
    return SampleWeights::from_multiset(samples[sample]);
  }
  // Id -> multiplicity summed over all samples.
  std::map<std::string, std::uint64_t> total_multiplicity() const;
};

// n_samples copies of every id, shuffled with DeterministicRng(seed) and cut
// into n_samples consecutive blocks of |ids|. Each id therefore appears
// exactly n_samples times overall. Throws ValidationError on an empty id list
// or n_samples == 0.
BootstrapPlan balanced_bootstrap(std::span<const std::string> ids,
                                 std::size_t n_samples, std::uint64_t seed);

// Single sample holding every id once.
BootstrapPlan identity_plan(std::span<const std::string> ids);

struct MetricStats {
  double mean = 0.0;
  double std = 0.0;  // population
  std::vector<double> results;
};

// Mean and population standard deviation, summed in result order.
MetricStats summarize(std::vector<double> results);

struct MetricReport {
  std::map<std::string, MetricStats> metrics;
  std::optional<double> ranking;
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  std::size_t n_runs = 0;
  std::string generator_id;
};

// mean(PSDS1) + mean(segMPAUC). Throws ValidationError when either is
// missing from the report.
double ranking_metric(const MetricReport& report);

// Plans for one run; either family may be absent when the bundle lacks it.
struct RunPlans {
  std::optional<BootstrapPlan> strong;
  std::optional<BootstrapPlan> soft;
};

// One plan over strong clip ids and one over soft recording ids, both with
// `seed`.
RunPlans make_run_plans(const EvaluationBundle& bundle, std::size_t n_samples,
                        std::uint64_t seed);

// Evaluates every run on every sample. `plans` holds one entry shared by all
// runs or one entry per run. Results are ordered by (run, sample) before
// aggregation, so the report does not depend on `jobs`.
MetricReport evaluate_bootstrapped(std::span<const RunEvaluator> runs,
                                   std::span<const RunPlans> plans,
                                   unsigned jobs = 1);

MetricReport evaluate_bootstrapped(std::span<const RunScores> runs,
                                   const EvaluationBundle& bundle,
                                   const EvalParams& params,
                                   std::span<const RunPlans> plans,
                                   unsigned jobs = 1);

}  // namespace sedeval

#endif  // SEDEVAL_BOOTSTRAP_HPP_
