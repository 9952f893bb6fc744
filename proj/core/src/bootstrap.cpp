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

#include "sedeval/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sedeval/errors.hpp"
#include "sedeval/parallel.hpp"
#include "sedeval/random.hpp"

namespace sedeval {

std::map<std::string, std::uint64_t> BootstrapPlan::total_multiplicity() const {
  std::map<std::string, std::uint64_t> out;
  for (const auto& s : samples) {
    for (const auto& id : s) ++out[id];
  }
  return out;
}

BootstrapPlan balanced_bootstrap(std::span<const std::string> ids,
                                 std::size_t n_samples, std::uint64_t seed) {
  if (ids.empty()) throw ValidationError("cannot bootstrap an empty clip list");
  if (n_samples == 0) throw ValidationError("n_samples must be >= 1");

  std::vector<std::string> pool;
  pool.reserve(ids.size() * n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    pool.insert(pool.end(), ids.begin(), ids.end());
  }
  DeterministicRng rng(seed);
  rng.shuffle(std::span<std::string>(pool));

  BootstrapPlan plan;
  plan.seed = seed;
  plan.generator_id = std::string(kGeneratorId);
  plan.samples.resize(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    auto first = pool.begin() + static_cast<std::ptrdiff_t>(k * ids.size());
    plan.samples[k].assign(std::make_move_iterator(first),
                           std::make_move_iterator(
                               first + static_cast<std::ptrdiff_t>(ids.size())));
  }
  return plan;
}

BootstrapPlan identity_plan(std::span<const std::string> ids) {
  BootstrapPlan plan;
  plan.generator_id = "identity";
  plan.samples.emplace_back(ids.begin(), ids.end());
  return plan;
}

MetricStats summarize(std::vector<double> results) {
  MetricStats st;
  st.results = std::move(results);
  if (st.results.empty()) return st;
  // Accumulate in sorted order so the statistics do not depend on the
  // order in which results arrive.
  std::vector<double> sorted = st.results;
  if (std::any_of(sorted.begin(), sorted.end(),
                  [](double r) { return std::isnan(r); })) {
    st.mean = st.std = std::numeric_limits<double>::quiet_NaN();
    return st;
  }
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sum = 0.0;
  for (double r : sorted) sum += r;
  st.mean = sum / n;
  double var = 0.0;
  for (double r : sorted) var += (r - st.mean) * (r - st.mean);
  st.std = std::sqrt(var / n);
  return st;
}

double ranking_metric(const MetricReport& report) {
  auto psds = report.metrics.find(metric_names::kPsds1);
  auto auc = report.metrics.find(metric_names::kSegMpauc);
  if (psds == report.metrics.end() || auc == report.metrics.end()) {
    throw ValidationError(
        "ranking needs both psds1 and segmpauc in the report");
  }
  return psds->second.mean + auc->second.mean;
}

RunPlans make_run_plans(const EvaluationBundle& bundle, std::size_t n_samples,
                        std::uint64_t seed) {
  auto keys = [](const DurationMap& d) {
    std::vector<std::string> ids;
    for (const auto& [id, dur] : d) ids.push_back(id);
    return ids;
  };
  RunPlans plans;
  if (bundle.strong) {
    plans.strong =
        balanced_bootstrap(keys(bundle.strong->durations), n_samples, seed);
  }
  if (bundle.soft) {
    plans.soft =
        balanced_bootstrap(keys(bundle.soft->durations), n_samples, seed);
  }
  return plans;
}

MetricReport evaluate_bootstrapped(std::span<const RunEvaluator> runs,
                                   std::span<const RunPlans> plans,
                                   unsigned jobs) {
  if (runs.empty()) throw ValidationError("no runs to evaluate");
  if (plans.size() != 1 && plans.size() != runs.size()) {
    throw ValidationError("expected one shared plan or one plan per run");
  }
  std::size_t n_samples = 0;
  for (const auto& p : plans) {
    for (const auto* plan : {&p.strong, &p.soft}) {
      if (!*plan) continue;
      if (n_samples == 0) n_samples = (*plan)->n_samples();
      if ((*plan)->n_samples() != n_samples) {
        throw ValidationError("bootstrap plans differ in sample count");
      }
    }
  }
  if (n_samples == 0) throw ValidationError("bootstrap plans are empty");

  const std::size_t total = runs.size() * n_samples;
  std::vector<std::map<std::string, double>> results(total);
  parallel_for(total, jobs, [&](std::size_t i) {
    const std::size_t run = i / n_samples;
    const std::size_t sample = i % n_samples;
    const RunPlans& p = plans.size() == 1 ? plans[0] : plans[run];
    const SampleWeights strong =
        p.strong ? p.strong->weights(sample) : SampleWeights();
    const SampleWeights soft =
        p.soft ? p.soft->weights(sample) : SampleWeights();
    results[i] = runs[run].evaluate(strong, soft);
  });

  MetricReport report;
  report.n_samples = n_samples;
  report.n_runs = runs.size();
  const RunPlans& first = plans[0];
  const BootstrapPlan& any = first.strong ? *first.strong : *first.soft;
  report.seed = any.seed;
  report.generator_id = any.generator_id;

  std::map<std::string, std::vector<double>> by_metric;
  for (const auto& r : results) {
    for (const auto& [name, value] : r) by_metric[name].push_back(value);
  }
  for (auto& [name, values] : by_metric) {
    if (values.size() != total) {
      throw Error("metric '" + name + "' missing from some results");
    }
    report.metrics[name] = summarize(std::move(values));
  }
  if (report.metrics.count(metric_names::kPsds1) &&
      report.metrics.count(metric_names::kSegMpauc)) {
    report.ranking = ranking_metric(report);
  }
  return report;
}

MetricReport evaluate_bootstrapped(std::span<const RunScores> runs,
                                   const EvaluationBundle& bundle,
                                   const EvalParams& params,
                                   std::span<const RunPlans> plans,
                                   unsigned jobs) {
  std::vector<RunEvaluator> evaluators;
  evaluators.reserve(runs.size());
  for (const auto& r : runs) evaluators.emplace_back(bundle, r, params, jobs);
  return evaluate_bootstrapped(evaluators, plans, jobs);
}

}  // namespace sedeval
