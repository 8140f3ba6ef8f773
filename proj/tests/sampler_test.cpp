#include "tuttemc/sampler.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "support/brute.hpp"
#include "support/corpus.hpp"
#include "tuttemc/generators.hpp"

namespace tuttemc {
namespace {

SamplerConfig fixed_t(std::uint64_t t, std::uint64_t seed = 42) {
  SamplerConfig cfg;
  cfg.t_override = t;
  cfg.seed = seed;
  return cfg;
}

// Relative second moment E(Q^{2k}) / E(Q^k)^2 from the exact oracle.
double exact_relative_second_moment(const Graph& g, const Rational& p, const Rational& q) {
  const Rational first = z_exact(g, RCConfig<Rational>{p, q});
  const Rational second = z_exact(g, RCConfig<Rational>{p, q * q});
  return to_double(second / (first * first));
}

TEST(SampleGp, ExtremeProbabilities) {
  const Graph g = complete_graph(6);
  SplitMix64 rng(7);
  for (int i = 0; i < 20; ++i) {
    EXPECT_TRUE(sample_gp(g, 0.0, rng).empty());
    EXPECT_EQ(sample_gp(g, 1.0, rng).count(), g.num_edges());
  }
}

TEST(SampleGp, ConsumesOneDrawPerEdge) {
  const Graph g = complete_graph(7);
  SplitMix64 rng(11);
  SplitMix64 shadow(11);
  sample_gp(g, 0.3, rng);
  for (std::size_t i = 0; i < g.num_edges(); ++i) shadow();
  EXPECT_EQ(rng(), shadow());
}

TEST(SampleGp, TriangleComponentDistribution) {
  const Graph k3 = complete_graph(3);
  const auto exact = testing::kappa_distribution(k3, Rational(1, 2));
  ASSERT_EQ(exact[1], Rational(1, 2));
  ASSERT_EQ(exact[2], Rational(3, 8));
  ASSERT_EQ(exact[3], Rational(1, 8));

  constexpr int draws = 100000;
  std::vector<int> hits(4, 0);
  SplitMix64 rng(2024);
  for (int i = 0; i < draws; ++i) ++hits[components(k3, sample_gp(k3, 0.5, rng)).kappa];
  for (std::size_t k = 1; k <= 3; ++k) {
    const double pk = to_double(exact[k]);
    const double sigma = std::sqrt(pk * (1 - pk) / draws);
    EXPECT_NEAR(hits[k] / double(draws), pk, 3 * sigma) << "kappa=" << k;
  }
}

TEST(Estimator, ComponentCountsMatchIndependentDraws) {
  // The estimator stops a draw early once connected; counts must still agree
  // with full draws from the same per-sample streams.
  const Graph g = Graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {0, 3}, {2, 2}, {1, 2}});
  const std::uint64_t t = 2000;
  const auto run = estimate_q_kappa_mean(g, 0.6, 2.0, fixed_t(t, 99));
  std::vector<std::uint64_t> expected(g.num_vertices() + 1, 0);
  for (std::uint64_t i = 0; i < t; ++i) {
    SplitMix64 rng(derive_seed(99, i));
    ++expected[components(g, sample_gp(g, 0.6, rng)).kappa];
  }
  EXPECT_EQ(run.kappa_counts, expected);
}

TEST(Estimator, UnitWeightIsExact) {
  const auto run = estimate_q_kappa_mean(complete_graph(5), 0.3, 1.0, fixed_t(500));
  EXPECT_EQ(run.mean, 1.0);
  EXPECT_EQ(run.variance(), 0.0);
}

TEST(Estimator, TriangleMean) {
  const Graph k3 = complete_graph(3);
  const Rational exact = testing::brute_z(k3, Rational(1, 2), Rational(2));
  ASSERT_EQ(exact, Rational(7, 2));
  const auto run = estimate_q_kappa_mean(k3, 0.5, 2.0, fixed_t(100000));
  EXPECT_NEAR(run.mean, 3.5, 3 * run.standard_error());
}

TEST(Estimator, PerfectMatchingMean) {
  const Graph g = perfect_matching(6);
  ASSERT_EQ(testing::brute_z(g, Rational(1, 2), Rational(2)), Rational(27));
  const auto run = estimate_q_kappa_mean(g, 0.5, 2.0, fixed_t(100000));
  EXPECT_NEAR(run.mean, 27.0, 3 * run.standard_error());
}

TEST(Estimator, DistributionLevelUnbiasedness) {
  // sum_k Pr(k(G_p) = k) Q^k is the partition function.
  const Rational p(3, 7);
  const Rational q(5, 2);
  for (const auto& [name, g] : testing::random_multigraphs(30, 6, 12, 3)) {
    const auto dist = testing::kappa_distribution(g, p);
    Rational total = 0;
    for (std::size_t k = 0; k < dist.size(); ++k) total += dist[k] * ipow(q, k);
    EXPECT_EQ(total, z_exact(g, RCConfig<Rational>{p, q})) << name;
  }
}

TEST(Estimator, LogSpaceWhenPowersOverflow) {
  const Graph g(200);  // every draw has 200 components
  const auto run = estimate_q_kappa_mean(g, 0.5, 100.0, fixed_t(10));
  EXPECT_TRUE(std::isinf(run.mean));
  EXPECT_NEAR(run.log_mean, 200 * std::log(100.0), 1e-9);
  EXPECT_EQ(run.kappa_counts[200], 10u);
}

TEST(Estimator, DeterministicAcrossThreadCounts) {
  const Graph g = complete_graph(12);
  auto cfg = fixed_t(20001, 5);
  const auto single = estimate_q_kappa_mean(g, 0.2, 3.0, cfg);
  cfg.threads = 4;
  const auto parallel = estimate_q_kappa_mean(g, 0.2, 3.0, cfg);
  EXPECT_EQ(single.kappa_counts, parallel.kappa_counts);
  EXPECT_EQ(single.mean, parallel.mean);
  EXPECT_EQ(single.m2, parallel.m2);
  EXPECT_EQ(to_json(single).dump(), to_json(parallel).dump());
}

TEST(Estimator, SeedChangesResult) {
  const Graph g = complete_graph(8);
  const auto a = estimate_q_kappa_mean(g, 0.2, 3.0, fixed_t(1000, 1));
  const auto b = estimate_q_kappa_mean(g, 0.2, 3.0, fixed_t(1000, 2));
  EXPECT_NE(a.kappa_counts, b.kappa_counts);
}

TEST(Estimator, MedianOfRepetitions) {
  const Graph g = complete_graph(4);
  auto cfg = fixed_t(3000, 8);
  cfg.repetitions = 5;
  const auto run = estimate_q_kappa_mean(g, 0.5, 2.0, cfg);
  EXPECT_EQ(run.repetitions, 5u);
  // The median is one of the repetitions, each of which is a plain run on
  // its own block of sample indices.
  bool found = false;
  for (std::uint64_t r = 0; r < 5; ++r) {
    std::vector<std::uint64_t> counts(5, 0);
    for (std::uint64_t i = 0; i < 3000; ++i) {
      SplitMix64 rng(derive_seed(8, r * 3000 + i));
      ++counts[components(g, sample_gp(g, 0.5, rng)).kappa];
    }
    found = found || counts == run.kappa_counts;
  }
  EXPECT_TRUE(found);
  cfg.repetitions = 4;
  EXPECT_THROW(estimate_q_kappa_mean(g, 0.5, 2.0, cfg), DomainError);
}

TEST(Estimator, WarnsBelowUnitWeight) {
  const auto run = estimate_q_kappa_mean(complete_graph(4), 0.5, 0.5, fixed_t(100));
  ASSERT_EQ(run.warnings.size(), 1u);
}

TEST(SampleCount, ChebyshevFormula) {
  EXPECT_EQ(chebyshev_sample_count(2.0, 0.5), 16u);
  EXPECT_EQ(chebyshev_sample_count(1.0, 0.1), 200u);
  EXPECT_THROW(chebyshev_sample_count(0.0, 0.1), DomainError);
  EXPECT_THROW(chebyshev_sample_count(1e30, 0.1), DomainError);
}

TEST(SampleCount, DefaultBoundFromComponentBound) {
  const Graph k5 = complete_graph(5);
  // c = 4 sqrt(ln 5) / 5, s = ceil(5/(2c) sqrt(ln 5)) = ceil(3.125) = 4.
  EXPECT_EQ(component_bound(5, subdensity_constant(k5)), 4u);
  const auto bound = default_variance_bound(k5, 2.0, std::nullopt);
  ASSERT_TRUE(bound.has_value());
  EXPECT_DOUBLE_EQ(*bound, 2.0 * 256.0);
  SamplerConfig cfg;
  cfg.epsilon = 0.1;
  EXPECT_EQ(resolve_sample_count(k5, 2.0, cfg), 102400u);
}

TEST(SampleCount, NoDefaultBoundWithoutAssumptions) {
  SamplerConfig cfg;
  EXPECT_THROW(resolve_sample_count(complete_graph(5), 0.5, cfg), DomainError);
  EXPECT_THROW(resolve_sample_count(Graph(3, {{0, 1}}), 2.0, cfg), DomainError);
  cfg.density_c = 5.0;
  EXPECT_THROW(resolve_sample_count(complete_graph(5), 2.0, cfg), DomainError);
  cfg.t_override = 0;
  EXPECT_THROW(resolve_sample_count(complete_graph(5), 2.0, cfg), DomainError);
}

TEST(EstimateTutte, UnitHyperbolaIsExact) {
  for (const auto& [name, g] : testing::oracle_corpus()) {
    const auto run = estimate_tutte(g, 2.0, 2.0, fixed_t(50));
    EXPECT_EQ(run.estimate, std::ldexp(1.0, static_cast<int>(g.num_edges()))) << name;
    EXPECT_EQ(run.variance(), 0.0) << name;
  }
}

TEST(EstimateTutte, OtherPointOnUnitHyperbola) {
  // (x-1)(y-1) = 1 at (3, 1.5): every sample is 1, the estimate is zeta.
  const Graph g = complete_graph(4);
  const auto run = estimate_tutte(g, 3.0, 1.5, fixed_t(100));
  const double zeta = std::pow(1.5, 6) / (2.0 * std::pow(0.5, 4));
  EXPECT_DOUBLE_EQ(run.estimate, zeta);
  EXPECT_EQ(run.variance(), 0.0);
  EXPECT_DOUBLE_EQ(run.estimate, to_double(tutte_statesum(g, Rational(3), Rational(3, 2))));
}

TEST(EstimateTutte, TriangleAtThreeThreeMostlyWithinFivePercent) {
  const Graph k3 = complete_graph(3);
  const double exact = to_double(tutte_statesum(k3, Rational(3), Rational(3)));
  SamplerConfig cfg;
  cfg.epsilon = 0.05;
  cfg.variance_bound = exact_relative_second_moment(k3, Rational(2, 3), Rational(4));
  int good = 0;
  constexpr int runs = 40;
  for (int r = 0; r < runs; ++r) {
    cfg.seed = 1000 + r;
    const auto run = estimate_tutte(k3, 3.0, 3.0, cfg);
    if (std::abs(run.estimate - exact) <= 0.05 * exact) ++good;
  }
  EXPECT_GE(good * 4, runs * 3);
}

TEST(EstimateTutte, K5WithDefaultSampleCount) {
  const Graph k5 = complete_graph(5);
  const double exact = to_double(tutte_statesum(k5, Rational(2), Rational(3)));
  SamplerConfig cfg;
  cfg.epsilon = 0.1;
  cfg.seed = 77;
  const auto run = estimate_tutte(k5, 2.0, 3.0, cfg);
  EXPECT_EQ(run.t, 102400u);
  EXPECT_NEAR(run.estimate, exact, 0.1 * exact);
}

TEST(EstimateTutte, RejectsPointsOutsideSamplerDomain) {
  const Graph g = complete_graph(3);
  EXPECT_THROW(estimate_tutte(g, 2.0, 0.5, fixed_t(10)), DomainError);
  EXPECT_THROW(estimate_tutte(g, 1.0, 2.0, fixed_t(10)), DomainError);
}

TEST(EstimateTutte, WarnsOutsideGuaranteeFamily) {
  auto cfg = fixed_t(10);
  cfg.guarantee = Subdense{1.0};
  const auto run = estimate_tutte(path_graph(10), 2.0, 3.0, cfg);
  ASSERT_EQ(run.warnings.size(), 1u);
  cfg.guarantee = EpsDense{0.5};
  EXPECT_TRUE(estimate_tutte(complete_graph(10), 2.0, 3.0, cfg).warnings.empty());
}

TEST(EstimateZ, UnitWeight) {
  EXPECT_EQ(estimate_z(complete_graph(6), {0.4, 1.0}, fixed_t(100)).estimate, 1.0);
}

TEST(EstimateZ, MatchingClosedForm) {
  const Graph g = perfect_matching(10);
  const double expected = std::pow(0.3 * 2 + 0.7 * 4, 5);
  ASSERT_NEAR(expected, 454.35424, 1e-9);
  const auto run = estimate_z(g, {0.3, 2.0}, fixed_t(200000));
  EXPECT_NEAR(run.estimate, expected, 4 * run.standard_error());
}

TEST(EstimateZ, K4AgainstOracle) {
  const Graph k4 = complete_graph(4);
  const double exact = to_double(z_exact(k4, RCConfig<Rational>{Rational(1, 2), Rational(3)}));
  const auto run = estimate_z(k4, {0.5, 3.0}, fixed_t(200000));
  EXPECT_NEAR(run.estimate, exact, 4 * run.standard_error());
}

TEST(EstimateZ, CompleteGraphRecursionAgreesWithOracle) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const Graph g = complete_graph(n);
    EXPECT_EQ(testing::complete_graph_z(n, Rational(2, 3), Rational(5, 2)),
              z_exact(g, RCConfig<Rational>{Rational(2, 3), Rational(5, 2)}))
        << n;
  }
}

TEST(EstimateLambda, EmptySetNearOne) {
  SamplerConfig cfg = fixed_t(50000, 3);
  const auto est = estimate_lambda(complete_graph(4), {0.5, 2.0}, EdgeSubset(6), cfg);
  EXPECT_NEAR(est.value, 1.0, 0.05);
}

TEST(EstimateLambda, TriangleSingleEdge) {
  const Graph k3 = complete_graph(3);
  const auto a = EdgeSubset::from_mask(3, 0b001);
  const double exact = to_double(lambda_exact(k3, RCConfig<Rational>{Rational(1, 2), Rational(2)}, a));
  SamplerConfig cfg;
  cfg.epsilon = 0.1;
  cfg.seed = 5;
  const auto est = estimate_lambda(k3, {0.5, 2.0}, a, cfg);
  EXPECT_NEAR(est.sub_epsilon, std::sqrt(1.1) - 1.0, 1e-15);
  EXPECT_LE(std::abs(est.value - exact) / exact, 0.1);
}

TEST(EstimateLambda, FullSetMatchesMu) {
  const Graph k3 = complete_graph(3);
  const auto all = EdgeSubset::full(3);
  const RCConfig<Rational> exact_cfg{Rational(1, 2), Rational(2)};
  const double mu = to_double(mu_exact(k3, exact_cfg, all));
  // p^3 Q / Z with Z = 7/2
  ASSERT_DOUBLE_EQ(mu, 0.125 * 2 / 3.5);
  SamplerConfig cfg = fixed_t(200000, 9);
  const auto est = estimate_lambda(k3, {0.5, 2.0}, all, cfg);
  EXPECT_EQ(est.contracted.estimate, 2.0);  // single vertex, Z = Q
  EXPECT_NEAR(est.value, mu, 0.02 * mu);
}

TEST(Json, RunRecordFields) {
  const auto run = estimate_tutte(complete_graph(3), 2.0, 2.0, fixed_t(10, 123));
  const auto j = to_json(run);
  for (const char* key : {"estimate", "mean", "variance", "t", "seed", "epsilon", "mode"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["estimate"], 8.0);
  EXPECT_EQ(j["seed"], 123u);
  EXPECT_EQ(j["mode"], "tutte");
}

}  // namespace
}  // namespace tuttemc
