#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <numbers>
#include <numeric>

#include "maxdecouple/constructions.hpp"
#include "maxdecouple/joint.hpp"
#include "oracle/enumeration_oracle.hpp"
#include "random_instances.hpp"

using namespace maxdecouple;

namespace {

JointBernoulli comonotone_pair(double eps) { return JointBernoulli(2, {{0, 1.0 - eps}, {3, eps}}); }

}  // namespace

TEST(JointBernoulli, RejectsInvalidTables) {
  EXPECT_THROW(JointBernoulli(0, {{0, 1.0}}), InvalidDistribution);
  EXPECT_THROW(JointBernoulli(2, {}), InvalidDistribution);
  EXPECT_THROW(JointBernoulli(2, {{4, 1.0}}), InvalidDistribution);
  EXPECT_THROW(JointBernoulli(2, {{1, 0.5}, {1, 0.5}}), InvalidDistribution);
  EXPECT_THROW(JointBernoulli(2, {{1, 1.5}, {2, -0.5}}), InvalidDistribution);
  EXPECT_THROW(JointBernoulli(2, {{1, 0.5}, {2, 0.4}}), InvalidDistribution);
  EXPECT_NO_THROW(JointBernoulli(64, {{~Mask{0}, 1.0}}));
}

TEST(JointBernoulli, NormalizationMessageNamesDeviation) {
  try {
    JointBernoulli(2, {{1, 0.5}, {2, 0.4}});
    FAIL() << "expected InvalidDistribution";
  } catch (const InvalidDistribution& e) {
    EXPECT_NE(std::string(e.what()).find("deviation 0.1"), std::string::npos) << e.what();
  }
}

TEST(JointBernoulli, AtomsSortedAndAggregated) {
  const auto j = JointBernoulli::aggregate(2, {{3, 0.25}, {0, 0.25}, {3, 0.5}});
  ASSERT_EQ(j.atoms().size(), 2u);
  EXPECT_EQ(j.atoms()[0].mask, 0u);
  EXPECT_DOUBLE_EQ(j.probability(3), 0.75);
  EXPECT_DOUBLE_EQ(j.probability(1), 0.0);
}

TEST(Marginals, Examples) {
  const auto deterministic = marginals(JointBernoulli(2, {{3, 1.0}}));
  EXPECT_EQ(deterministic[0], 1.0);
  EXPECT_EQ(deterministic[1], 1.0);
  EXPECT_EQ(deterministic.sum(), 2.0);

  const auto split = marginals(JointBernoulli(2, {{1, 0.5}, {2, 0.5}}));
  EXPECT_EQ(split[0], 0.5);
  EXPECT_EQ(split[1], 0.5);

  const auto ext = marginals(conjectured_extremal(3));
  for (double v : ext.values()) EXPECT_NEAR(v, 0.5, 1e-15);
}

TEST(MarginalVector, RejectsOutOfRange) {
  EXPECT_THROW(MarginalVector({0.2, 1.1}), InvalidDistribution);
  EXPECT_THROW(MarginalVector({-0.1}), InvalidDistribution);
  EXPECT_THROW(MarginalVector({std::nan("")}), InvalidDistribution);
}

TEST(SecondMoments, Examples) {
  EXPECT_DOUBLE_EQ(second_moments(comonotone_pair(0.1))(0, 1), 0.1);
  const auto prod = JointBernoulli(2, {{0, 0.25}, {1, 0.25}, {2, 0.25}, {3, 0.25}});
  EXPECT_DOUBLE_EQ(second_moments(prod)(0, 1), 0.25);
  const auto m = second_moments(conjectured_extremal(3));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(m(i, i), 0.5, 1e-15);
    for (std::size_t k = 0; k < 3; ++k) {
      if (i != k) EXPECT_NEAR(m(i, k), 0.25, 1e-15);
    }
  }
}

TEST(ProbHit, Examples) {
  EXPECT_EQ(prob_hit(JointBernoulli(3, {{0, 1.0}})), 0.0);
  for (unsigned n : {1u, 2u, 7u, 24u}) EXPECT_NEAR(prob_hit(one_hot_uniform(n)), 1.0, 1e-15);
  EXPECT_NEAR(prob_hit(conjectured_extremal(3)), 0.75, 1e-15);
}

TEST(ProbHitIndependent, Examples) {
  EXPECT_NEAR(prob_hit_independent(MarginalVector({0.5, 0.5})), 0.75, 1e-15);
  EXPECT_NEAR(prob_hit_independent(MarginalVector({0.5, 0.5, 0.5})), 0.875, 1e-15);
  const std::size_t n = 1'000'000;
  const double mt = prob_hit_independent(MarginalVector::uniform(n, 1.0 / n));
  EXPECT_NEAR(mt, 1.0 - 1.0 / std::numbers::e, 1e-6);
  // 1 - (1 - 1e-6)^1e6, 30-digit reference.
  EXPECT_NEAR(mt, 0.63212074276835490571, 1e-13);
  EXPECT_EQ(prob_hit_independent(MarginalVector({0.3, 1.0})), 1.0);
}

TEST(MomentsOfZ, Examples) {
  const auto d = moments_of_Z(JointBernoulli(2, {{3, 1.0}}));
  EXPECT_EQ(d.EZ, 2.0);
  EXPECT_EQ(d.EZ2, 4.0);
  const auto ext = moments_of_Z(conjectured_extremal(3));
  EXPECT_NEAR(ext.EZ, 1.5, 1e-15);
  EXPECT_NEAR(ext.EZ2, 3.0, 1e-15);
  const auto co = moments_of_Z(comonotone(8, 0.1));
  EXPECT_NEAR(co.EZ, 0.8, 1e-15);
  EXPECT_NEAR(co.EZ2, 6.4, 1e-14);
}

TEST(PairwiseIndependence, Examples) {
  const auto prod = product(MarginalVector({0.3, 0.7}));
  EXPECT_TRUE(is_pairwise_independent(prod, 1e-12));
  EXPECT_FALSE(is_pairwise_independent(comonotone_pair(0.1), 1e-12));
  EXPECT_TRUE(is_pairwise_independent(conjectured_extremal(5), 1e-12));
  // Tolerance is honored.
  EXPECT_TRUE(is_pairwise_independent(comonotone_pair(0.1), 0.1));
}

TEST(EtaMatrix, Examples) {
  const auto zero = eta_matrix(conjectured_extremal(4));
  EXPECT_LE(zero.H, 1e-15);

  const auto co = eta_matrix(comonotone_pair(0.1));
  EXPECT_NEAR(co(0, 1), 0.09, 1e-15);
  EXPECT_NEAR(co(1, 0), 0.09, 1e-15);
  EXPECT_EQ(co(0, 0), 0.0);
  EXPECT_NEAR(co.H, 0.18, 1e-15);

  const auto neg = eta_matrix(one_hot_uniform(2));
  EXPECT_EQ(neg.H, 0.0);
}

TEST(Sample, PointMassAndDeterminism) {
  const auto point = JointBernoulli(1, {{1, 1.0}});
  EXPECT_EQ(sample(point, 17, 5), std::vector<Mask>(5, 1));
  EXPECT_THROW(sample(point, 0, 0), std::invalid_argument);

  const auto j = conjectured_extremal(4);
  EXPECT_EQ(sample(j, 42, 1000), sample(j, 42, 1000));
  EXPECT_NE(sample(j, 42, 1000), sample(j, 43, 1000));
}

TEST(Sample, FairCoinHitRate) {
  const auto coins = product(MarginalVector({0.5, 0.5}));
  const auto draws = sample(coins, 7, 1'000'000);
  EXPECT_NEAR(empirical_hit_rate(draws), 0.75, 3.0 * std::sqrt(0.75 * 0.25 / 1e6));
}

TEST(Sample, SkipsZeroProbabilityAtoms) {
  const auto j = JointBernoulli(2, {{0, 0.0}, {1, 0.5}, {2, 0.0}, {3, 0.5}});
  for (Mask m : sample(j, 3, 10'000)) EXPECT_TRUE(m == 1 || m == 3);
}

TEST(DistCoreProperties, AgreesWithEnumerationOracle) {
  random::Engine rng(20240611);
  for (int t = 0; t < 1000; ++t) {
    const auto j = random::sparse_joint(rng, 10);
    const auto ref = oracle::enumerate(j);
    const auto p = marginals(j);
    const auto m = second_moments(j);
    const auto z = moments_of_Z(j);
    ASSERT_NEAR(prob_hit(j), ref.M, 1e-12);
    ASSERT_NEAR(prob_hit_independent(p), ref.Mtilde, 1e-12);
    ASSERT_NEAR(z.EZ, ref.EZ, 1e-12);
    ASSERT_NEAR(z.EZ2, ref.EZ2, 1e-10);
    for (std::size_t i = 0; i < p.size(); ++i) {
      ASSERT_NEAR(p[i], ref.p[i], 1e-12);
      for (std::size_t k = 0; k < p.size(); ++k) ASSERT_NEAR(m(i, k), ref.pair[i][k], 1e-12);
    }
  }
}

TEST(DistCoreProperties, UnionBoundAndSecondMomentIdentity) {
  random::Engine rng(5);
  for (int t = 0; t < 1000; ++t) {
    const auto j = random::sparse_joint(rng, 10);
    const double hit = prob_hit(j);
    const auto z = moments_of_Z(j);
    ASSERT_GE(hit, 0.0);
    ASSERT_LE(hit, 1.0);
    ASSERT_LE(hit, z.EZ + 1e-12);

    const auto p = marginals(j);
    const auto m = second_moments(j);
    double rhs = p.sum();
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t k = i + 1; k < p.size(); ++k) rhs += 2.0 * m(i, k);
    }
    ASSERT_NEAR(z.EZ2, rhs, 1e-10);
  }
}

TEST(DistCoreProperties, PairwiseVerdictInvariantUnderRelabeling) {
  random::Engine rng(11);
  for (int t = 0; t < 500; ++t) {
    const auto j = t % 2 ? random::pairwise_independent_joint(rng) : random::sparse_joint(rng);
    std::vector<unsigned> perm(j.n());
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto k = permute_variables(j, perm);
    ASSERT_EQ(is_pairwise_independent(j, 1e-12), is_pairwise_independent(k, 1e-12));
    ASSERT_NEAR(prob_hit(j), prob_hit(k), 1e-14);
  }
}

TEST(PermuteVariables, RejectsNonPermutations) {
  const auto j = one_hot_uniform(3);
  const std::vector<unsigned> dup{0, 0, 1};
  const std::vector<unsigned> short_perm{0, 1};
  EXPECT_THROW(permute_variables(j, dup), std::invalid_argument);
  EXPECT_THROW(permute_variables(j, short_perm), std::invalid_argument);
}
