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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "sedeval/bootstrap.hpp"
#include "sedeval/errors.hpp"
#include "sedeval/random.hpp"
#include "synthetic.hpp"

namespace sedeval {
namespace {

TEST(Rng, BelowStaysInRange) {
  DeterministicRng rng(1);
  for (std::uint64_t bound : {1ull, 2ull, 3ull, 7ull, 1000ull}) {
    for (int i = 0; i < 200; ++i) EXPECT_LT(rng.below(bound), bound);
  }
}

TEST(Rng, FixedStream) {
  // The engine output is fixed by the standard; pins the draw sequence.
  DeterministicRng a(5), b(5);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(a.below(97), b.below(97));
}

TEST(BalancedBootstrap, EveryClipAppearsNTimes) {
  const std::vector<std::string> ids{"a", "b", "c"};
  auto plan = balanced_bootstrap(ids, 20, 0);
  ASSERT_EQ(plan.n_samples(), 20u);
  for (const auto& s : plan.samples) EXPECT_EQ(s.size(), ids.size());
  for (const auto& [id, n] : plan.total_multiplicity()) EXPECT_EQ(n, 20u) << id;
  EXPECT_EQ(plan.generator_id, kGeneratorId);
}

TEST(BalancedBootstrap, PropertyOverSizes) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::string> ids;
    const int n = static_cast<int>(rng() % 30) + 1;
    for (int i = 0; i < n; ++i) ids.push_back("clip" + std::to_string(i));
    const std::size_t samples = rng() % 25 + 1;
    auto plan = balanced_bootstrap(ids, samples, rng());
    auto mult = plan.total_multiplicity();
    ASSERT_EQ(mult.size(), ids.size());
    for (const auto& [id, m] : mult) EXPECT_EQ(m, samples);
  }
}

TEST(BalancedBootstrap, Deterministic) {
  const std::vector<std::string> ids{"a", "b", "c", "d", "e"};
  EXPECT_EQ(balanced_bootstrap(ids, 20, 9).samples, balanced_bootstrap(ids, 20, 9).samples);
  EXPECT_NE(balanced_bootstrap(ids, 20, 9).samples, balanced_bootstrap(ids, 20, 10).samples);
}

TEST(BalancedBootstrap, Errors) {
  EXPECT_THROW(balanced_bootstrap({}, 20, 0), ValidationError);
  const std::vector<std::string> ids{"a"};
  EXPECT_THROW(balanced_bootstrap(ids, 0, 0), ValidationError);
}

TEST(Summarize, MeanAndPopulationStd) {
  auto st = summarize({0.4, 0.6});
  EXPECT_NEAR(st.mean, 0.5, 1e-15);
  EXPECT_NEAR(st.std, 0.1, 1e-15);
  auto same = summarize({0.3, 0.3, 0.3});
  EXPECT_NEAR(same.mean, 0.3, 1e-15);
  EXPECT_EQ(same.std, 0.0);
}

TEST(Summarize, OrderInvariant) {
  std::mt19937_64 rng(1);
  std::vector<double> v;
  for (int i = 0; i < 60; ++i) v.push_back(static_cast<double>(rng() % 1000) / 1000.0);
  auto a = summarize(v);
  std::shuffle(v.begin(), v.end(), rng);
  auto b = summarize(v);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std, b.std);
}

TEST(Ranking, SumOfMeans) {
  MetricReport r;
  r.metrics[metric_names::kPsds1].mean = 0.491;
  r.metrics[metric_names::kSegMpauc].mean = 0.731;
  EXPECT_NEAR(ranking_metric(r), 1.222, 1e-12);
  r.metrics[metric_names::kPsds1].mean = 0.0;
  r.metrics[metric_names::kSegMpauc].mean = 0.0;
  EXPECT_EQ(ranking_metric(r), 0.0);
  r.metrics[metric_names::kSegMpauc].mean = 0.02;
  EXPECT_NEAR(ranking_metric(r), 0.02, 1e-15);
}

TEST(Ranking, MissingMetric) {
  MetricReport r;
  r.metrics[metric_names::kPsds1].mean = 0.5;
  EXPECT_THROW(ranking_metric(r), ValidationError);
}

TEST(EvaluateBootstrapped, SixtyResults) {
  auto bundle = oracle::small_bundle();
  std::vector<RunScores> runs;
  for (std::uint64_t k = 0; k < 3; ++k) runs.push_back(oracle::noisy_run(bundle, k, 0.3));
  std::vector<RunPlans> plans{make_run_plans(bundle, 20, 0)};
  auto rep = evaluate_bootstrapped(runs, bundle, EvalParams{}, plans);
  EXPECT_EQ(rep.n_runs, 3u);
  EXPECT_EQ(rep.n_samples, 20u);
  for (const auto& [name, st] : rep.metrics) EXPECT_EQ(st.results.size(), 60u) << name;
  ASSERT_TRUE(rep.ranking);
  EXPECT_NEAR(*rep.ranking,
              rep.metrics.at("psds1").mean + rep.metrics.at("segmpauc").mean, 1e-15);
}

TEST(EvaluateBootstrapped, IdentityPlanEqualsUnresampled) {
  auto bundle = oracle::small_bundle();
  auto run = oracle::noisy_run(bundle, 4, 0.4);
  RunPlans plan;
  std::vector<std::string> strong_ids, soft_ids;
  for (const auto& [id, d] : bundle.strong->durations) strong_ids.push_back(id);
  for (const auto& [id, d] : bundle.soft->durations) soft_ids.push_back(id);
  plan.strong = identity_plan(strong_ids);
  plan.soft = identity_plan(soft_ids);
  std::vector<RunScores> runs{run};
  std::vector<RunPlans> plans{plan};
  auto rep = evaluate_bootstrapped(runs, bundle, EvalParams{}, plans);
  auto direct = RunEvaluator(bundle, run, EvalParams{}).evaluate();
  for (const auto& [name, v] : direct) {
    ASSERT_EQ(rep.metrics.at(name).results.size(), 1u);
    EXPECT_NEAR(rep.metrics.at(name).results[0], v, 1e-12) << name;
  }
}

TEST(EvaluateBootstrapped, JobsInvariant) {
  auto bundle = oracle::small_bundle();
  std::vector<RunScores> runs{oracle::noisy_run(bundle, 1, 0.5), oracle::noisy_run(bundle, 2, 0.5)};
  std::vector<RunPlans> plans{make_run_plans(bundle, 5, 3)};
  auto a = evaluate_bootstrapped(runs, bundle, EvalParams{}, plans, 1);
  auto b = evaluate_bootstrapped(runs, bundle, EvalParams{}, plans, 4);
  for (const auto& [name, st] : a.metrics) EXPECT_EQ(st.results, b.metrics.at(name).results);
}

TEST(EvaluateBootstrapped, OracleScoresAreOne) {
  auto bundle = oracle::small_bundle();
  std::vector<RunScores> runs{oracle::oracle_run(bundle)};
  std::vector<RunPlans> plans{make_run_plans(bundle, 4, 0)};
  auto rep = evaluate_bootstrapped(runs, bundle, EvalParams{}, plans);
  for (double v : rep.metrics.at("psds1").results) EXPECT_NEAR(v, 1.0, 1e-12);
  for (double v : rep.metrics.at("segmpauc").results) EXPECT_NEAR(v, 1.0, 1e-12);
}

}  // namespace
}  // namespace sedeval
