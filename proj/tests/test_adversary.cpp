#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "altprod/adversary.hpp"
#include "altprod/errors.hpp"
#include "altprod/minimax.hpp"
#include "support.hpp"

using namespace altprod;
using namespace testing_support;

namespace {

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

bool next_sequence(IndexSequence& seq, std::size_t base) {
  for (std::size_t i = seq.size(); i-- > 0;) {
    if (++seq[i] < base) return true;
    seq[i] = 0;
  }
  return false;
}

AlternatingSystem growing_invertible() {
  return make_system({h1(1.02), h2(1.02)}, {eye()});
}

}  // namespace

TEST(EtaBound, Examples) {
  const auto sys = make_system({h1(), eye()}, {eye()});
  EXPECT_DOUBLE_EQ(eta_bound(sys, IndexSequence{0}), 2.0);
  EXPECT_DOUBLE_EQ(eta_bound(sys, IndexSequence{1}), 1.0);
  EXPECT_DOUBLE_EQ(eta_bound(sys, IndexSequence{0, 0}), 4.0);
}

TEST(EtaBound, RequiresInvertibleHypothesis) {
  const auto sys = make_system({Matrix{{1, 1}, {1, 1}}}, {eye()});
  EXPECT_EQ(error_of([&] { eta_bound(sys, IndexSequence{0}); }), ErrorCode::HypothesisViolated);
}

TEST(OmegaBound, Examples) {
  const auto ones = make_system({Matrix{{1, 1}, {1, 1}}, eye()}, {eye()});
  EXPECT_DOUBLE_EQ(omega_bound(ones, IndexSequence{0}), 2.0);
  EXPECT_DOUBLE_EQ(omega_bound(ones, IndexSequence{1}), 1.0);
  const auto two_b = make_system({eye()}, {eye(), Matrix{{0.5, 0.5}, {0.5, 0.5}}});
  EXPECT_DOUBLE_EQ(omega_bound(two_b, IndexSequence{0}), 1.0);
}

TEST(OmegaBound, RequiresNonnegativeNonzeroRows) {
  const auto sys = make_system({Matrix{{1, 0}, {0, 0}}}, {eye()});
  EXPECT_EQ(error_of([&] { omega_bound(sys, IndexSequence{0}); }), ErrorCode::HypothesisViolated);
  const auto neg = make_system({h2()}, {eye()});
  EXPECT_EQ(error_of([&] { omega_bound(neg, IndexSequence{0}); }), ErrorCode::HypothesisViolated);
}

TEST(FindBlock, Examples) {
  const auto first = find_block(make_system({eye()}, {h1(1.02), h2(1.02)}), 1.0, 8);
  EXPECT_EQ(first.length, 1u);
  EXPECT_NEAR(first.mu, 1.02 * (std::sqrt(3.0) + 1.0) / 2.0, 1e-12);

  const auto doubling = find_block(make_system({2.0 * eye(), eye()}, {eye()}), 4.0, 8);
  EXPECT_EQ(doubling.length, 2u);
  EXPECT_EQ(doubling.a_block, (IndexSequence{0, 0}));
}

TEST(FindBlock, IdentityNeverReachesTwo) {
  const auto sys = make_system({eye()}, {eye()});
  EXPECT_EQ(error_of([&] { find_block(sys, 2.0, 8); }), ErrorCode::NotFoundWithinCap);
}

TEST(BuildAdversary, InvertibleTwoBlocks) {
  const auto sys = growing_invertible();
  const auto cert = build_adversary(sys, 2, 8, AdversaryMode::Invertible);
  ASSERT_EQ(cert.blocks.size(), 2u);
  ASSERT_EQ(cert.verified_lower_bounds.size(), 2u);
  EXPECT_GE(cert.verified_lower_bounds[0], 1.0 - 1e-9);
  EXPECT_GE(cert.verified_lower_bounds[1], 2.0 - 1e-9);
  EXPECT_TRUE(verify_certificate(sys, cert));
}

TEST(BuildAdversary, IdentityFailsAtFirstBlock) {
  const auto sys = make_system({eye()}, {eye()});
  EXPECT_EQ(error_of([&] { build_adversary(sys, 2); }), ErrorCode::NotFoundWithinCap);
}

TEST(BuildAdversary, NonnegativeOutcomeMatchesMuTable) {
  const auto sys = make_system({Matrix{{1, 1}, {1, 1}}}, {eye(), 0.5 * eye()});
  const auto table = mu_table(sys, 8);
  bool built = false;
  try {
    const auto cert = build_adversary(sys, 2, 8, AdversaryMode::Nonnegative);
    built = true;
    EXPECT_TRUE(verify_certificate(sys, cert));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFoundWithinCap);
  }
  EXPECT_EQ(built, table.verdict.kind == GrowthVerdict::Kind::Growing);
}

TEST(BuildAdversary, ThresholdLaw) {
  const auto inv = build_adversary(growing_invertible(), 3, 8, AdversaryMode::Invertible);
  for (std::size_t m = 1; m < inv.blocks.size(); ++m) {
    EXPECT_GE(inv.blocks[m].kappa / inv.blocks[m - 1].bound_const,
              static_cast<double>(m + 1) - 1e-12);
  }
  const auto nonneg = build_adversary(make_system({Matrix{{1, 1}, {1, 1}}}, {eye()}), 3, 8,
                                      AdversaryMode::Nonnegative);
  for (std::size_t m = 1; m < nonneg.blocks.size(); ++m) {
    EXPECT_GE(nonneg.blocks[m].kappa * nonneg.blocks[m - 1].bound_const,
              static_cast<double>(m + 1) - 1e-12);
  }
  EXPECT_DOUBLE_EQ(inv.blocks[0].kappa, 1.0);
}

TEST(BuildAdversary, EveryCompletedBuildVerifies) {
  RandomSystems gen(71);
  int built = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto sys = make_system({1.5 * gen.gaussian(2), 1.5 * gen.gaussian(2)},
                                 {gen.gaussian(2), gen.gaussian(2)});
    try {
      const auto cert = build_adversary(sys, 2, 5);
      ++built;
      EXPECT_TRUE(verify_certificate(sys, cert));
      for (std::size_t m = 0; m < cert.verified_lower_bounds.size(); ++m) {
        EXPECT_GE(cert.verified_lower_bounds[m], static_cast<double>(m + 1) - 1e-9);
      }
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::NotFoundWithinCap ||
                  e.code() == ErrorCode::HypothesisViolated)
          << to_string(e.code());
    }
  }
  EXPECT_GT(built, 0);
}

TEST(VerifyCertificate, TamperedBlockIsRejected) {
  const auto sys = make_system({2.0 * eye(), eye()}, {eye()});
  auto cert = build_adversary(sys, 2, 8, AdversaryMode::Invertible);
  ASSERT_TRUE(verify_certificate(sys, cert));
  for (auto& block : cert.blocks) std::fill(block.a_block.begin(), block.a_block.end(), 1);
  EXPECT_FALSE(verify_certificate(sys, cert));
}

TEST(VerifyCertificate, SingleBlockCertificate) {
  const auto sys = growing_invertible();
  const auto cert = build_adversary(sys, 1);
  EXPECT_EQ(cert.blocks.size(), 1u);
  EXPECT_TRUE(verify_certificate(sys, cert));
}

TEST(ProofStep, InvertibleChainOverEveryBSequence) {
  // Two blocks over a system with two B choices; for every B-sequence the
  // realized Q (first block) and P_k (second-block prefix) obey
  // ||P_k Q|| >= ||P_k|| / ||Q^{-1}||.
  const auto sys = make_system({h1(1.02), h2(1.02)}, {eye(), Matrix{{0, 1}, {-1, 0}}});
  const auto cert = build_adversary(sys, 2, 8, AdversaryMode::Invertible);
  const IndexSequence a = cert.a_sequence();
  const std::size_t split = cert.blocks[0].length;
  IndexSequence b(a.size(), 0);
  do {
    Matrix q = eye();
    for (std::size_t k = 0; k < split; ++k) q = sys.step(a[k], b[k]) * q;
    const double q_inv = op_norm(inverse(q), sys.norm());
    Matrix p = eye();
    for (std::size_t k = split; k < a.size(); ++k) {
      p = sys.step(a[k], b[k]) * p;
      EXPECT_GE(op_norm(p * q, sys.norm()), op_norm(p, sys.norm()) / q_inv - 1e-9);
    }
    EXPECT_LE(q_inv, cert.blocks[0].bound_const + 1e-12);
  } while (next_sequence(b, sys.b_set().size()));
}

TEST(ProofStep, NonnegativePrefixDominatesOmega) {
  const auto sys = make_system({Matrix{{1, 1}, {1, 1}}, Matrix{{1, 0.5}, {0.5, 1}}},
                               {eye(), Matrix{{0.5, 0.5}, {0.5, 0.5}}});
  const auto cert = build_adversary(sys, 2, 8, AdversaryMode::Nonnegative);
  const IndexSequence a = cert.a_sequence();
  const auto ends = cert.block_ends();
  IndexSequence b(a.size(), 0);
  do {
    Matrix p = eye();
    std::size_t block = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      p = sys.step(a[k], b[k]) * p;
      if (k + 1 == ends[block]) {
        const Vector pe = apply_to_ones(p);
        EXPECT_GE(*std::min_element(pe.begin(), pe.end()), cert.blocks[block].bound_const - 1e-12);
        ++block;
      }
    }
  } while (next_sequence(b, sys.b_set().size()));
}

TEST(BuildAdversary, NonnegativeModeNeedsMaxRow) {
  const auto sys = make_system({Matrix{{1, 1}, {1, 1}}}, {eye()}, NormKind::Euclidean);
  EXPECT_EQ(error_of([&] { build_adversary(sys, 2, 8, AdversaryMode::Nonnegative); }),
            ErrorCode::HypothesisViolated);
}
