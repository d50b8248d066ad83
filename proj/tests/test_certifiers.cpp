#include <gtest/gtest.h>

#include <random>

#include "altprod/certifiers.hpp"
#include "altprod/errors.hpp"
#include "altprod/stanford.hpp"
#include "support.hpp"

using namespace altprod;
using namespace testing_support;
using Result = ContractivityVerdict::Result;

namespace {

bool has_contracting_prefix(const AlternatingSystem& sys, const IndexSequence& path) {
  for (std::size_t k = 1; k <= path.size(); ++k) {
    const std::span<const std::size_t> prefix(path.data(), k);
    if (min_product_norm(sys, prefix) < 1.0 - kContractionMargin) return true;
  }
  return false;
}

}  // namespace

TEST(Contractivity, HalfIdentityResolvesImmediately) {
  const auto v = certify_contractivity(make_system({0.5 * eye()}, {eye()}), 1);
  EXPECT_EQ(v.result, Result::CertifiedYes);
  EXPECT_EQ(v.depth_used, 1u);
}

TEST(Contractivity, UnitDeterminantPairNeverContracts) {
  for (NormKind norm : {NormKind::MaxRow, NormKind::Euclidean}) {
    const auto sys = make_system({eye()}, {h1(), h2()}, norm);
    const auto v = certify_contractivity(sys, 8);
    ASSERT_EQ(v.result, Result::NoWithinHorizon);
    ASSERT_EQ(v.witness, IndexSequence(8, 0));
    for (std::size_t k = 1; k <= 8; ++k) {
      const std::span<const std::size_t> prefix(v.witness.data(), k);
      EXPECT_GE(min_product_norm(sys, prefix), 1.0 - 1e-12);
    }
  }
}

TEST(Contractivity, DoublingWitnessIsTheUniquePath) {
  const auto v = certify_contractivity(make_system({2.0 * eye()}, {eye()}), 5);
  EXPECT_EQ(v.result, Result::NoWithinHorizon);
  EXPECT_EQ(v.witness, IndexSequence(5, 0));
}

TEST(Contractivity, DeeperResolution) {
  // The swap-and-halve factor needs two rounds before it contracts.
  const auto sys = make_system({Matrix{{0.0, 1.0}, {0.5, 0.0}}, 0.9 * eye()}, {eye()});
  const auto v = certify_contractivity(sys, 4);
  EXPECT_EQ(v.result, Result::CertifiedYes);
  EXPECT_EQ(v.depth_used, 2u);
  EXPECT_EQ(certify_contractivity(sys, 1).result, Result::NoWithinHorizon);
}

TEST(Contractivity, BudgetExhaustionIsInconclusive) {
  const auto sys = make_system({eye(), 1.5 * eye()}, {eye(), h1(), h2()});
  const auto v = certify_contractivity(sys, 10, SearchBudget{1000});
  EXPECT_EQ(v.result, Result::Inconclusive);
}

TEST(Contractivity, ZeroHorizonRejected) {
  EXPECT_THROW(certify_contractivity(make_system({eye()}, {eye()}), 0), Error);
}

TEST(Contractivity, RandomSystemsSoundAndMonotone) {
  RandomSystems gen(83);
  std::mt19937_64 rng(89);
  int yes = 0;
  int no = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto sys = gen.system();
    const std::size_t k = 4;
    const auto v = certify_contractivity(sys, k);
    ASSERT_NE(v.result, Result::Inconclusive);
    if (v.result == Result::CertifiedYes) {
      ++yes;
      std::uniform_int_distribution<std::size_t> pick(0, sys.a_set().size() - 1);
      for (int sample = 0; sample < 100; ++sample) {
        IndexSequence path(k);
        for (auto& i : path) i = pick(rng);
        EXPECT_TRUE(has_contracting_prefix(sys, path));
      }
      EXPECT_EQ(certify_contractivity(sys, k + 2).result, Result::CertifiedYes);
    } else {
      ++no;
      ASSERT_EQ(v.witness.size(), k);
      EXPECT_FALSE(has_contracting_prefix(sys, v.witness));
    }
  }
  EXPECT_GT(yes, 0);
  EXPECT_GT(no, 0);
}

TEST(MinProductNorm, RejectsBadIndex) {
  const IndexSequence bad{3};
  EXPECT_THROW(min_product_norm(make_system({eye()}, {eye()}), bad), Error);
}

TEST(Probe, DoublingExceedsCapAtStepFour) {
  const auto p = pointwise_probe(make_system({2.0 * eye()}, {eye()}), Vector{1.0, 0.0}, 50, 10.0);
  EXPECT_TRUE(p.exceeded);
  EXPECT_EQ(p.exceeded_at, 4u);
  EXPECT_EQ(p.norms, (std::vector<double>{2.0, 4.0, 8.0, 16.0}));
}

TEST(Probe, IdentityStaysFlat) {
  const auto p = pointwise_probe(make_system({eye()}, {eye()}), Vector{0.3, -0.4}, 20, 10.0);
  EXPECT_FALSE(p.exceeded);
  ASSERT_EQ(p.norms.size(), 20u);
  for (double n : p.norms) EXPECT_DOUBLE_EQ(n, 0.4);
}

TEST(Probe, LookaheadRecoversSectorStrategy) {
  const auto ce = build_counterexample({eye()}, 1.02);
  const auto p = pointwise_probe(ce.system, Vector{1.0, 0.0}, 200, 10.0, 7);
  EXPECT_FALSE(p.exceeded);
  EXPECT_EQ(p.norms.size(), 200u);
}

TEST(Probe, Deterministic) {
  const auto sys = make_system({eye(), shear()}, {h1(), h2()});
  const auto a = pointwise_probe(sys, Vector{0.6, 0.8}, 30, 100.0, 4);
  const auto b = pointwise_probe(sys, Vector{0.6, 0.8}, 30, 100.0, 4);
  EXPECT_EQ(a.a_indices, b.a_indices);
  EXPECT_EQ(a.b_indices, b.b_indices);
  EXPECT_EQ(a.norms, b.norms);
}

TEST(Probe, Errors) {
  const auto sys = make_system({eye()}, {eye()});
  EXPECT_THROW(pointwise_probe(sys, Vector{0.0, 0.0}, 5, 10.0), Error);
  EXPECT_THROW(pointwise_probe(sys, Vector{1.0}, 5, 10.0), Error);
}
