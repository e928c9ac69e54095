/*
Copyright 2026 The mpkex Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "mpkex/solver.h"

#include <gtest/gtest.h>

#include "mpkex/errors.h"
#include "mpkex/protocol.h"
#include "test_util.h"

namespace mpkex {
namespace {

TEST(PreimageSearchTest, ToyUnivariate) {
  const PrimeField f5(5);
  const MonomialOrder order(1, 2);
  TriangularMap psi;
  psi.psis.emplace_back(order);
  psi.psis[0].coeffs = {Fe{4}, Fe{1}, Fe{3}};
  ASSERT_TRUE(psi.IsTriangular());
  const std::vector<Fe> u = {Fe{4}};
  const CandidateSet set = PreimageSearch(f5, psi, u, 5);
  EXPECT_EQ(set.solutions, (std::vector<KeyVector>{{0}, {3}}));
  const std::vector<Fe> u0 = {Fe{0}};
  EXPECT_TRUE(PreimageSearch(f5, psi, u0, 5).solutions.empty());
}

TEST(PreimageSearchTest, ToyTripleContainsOrigin) {
  const PrimeField f5(5);
  const MonomialOrder order(3, 2);
  TriangularMap psi;
  psi.psis.assign(3, Poly(order));
  using E = std::vector<int>;
  psi.psis[0].SetCoeff(E{2, 0, 0}, Fe{3});
  psi.psis[0].SetCoeff(E{1, 0, 0}, Fe{1});
  psi.psis[0].SetCoeff(E{0, 0, 0}, Fe{4});
  psi.psis[1].SetCoeff(E{0, 2, 0}, Fe{1});
  psi.psis[1].SetCoeff(E{1, 1, 0}, Fe{2});
  psi.psis[1].SetCoeff(E{1, 0, 0}, Fe{4});
  psi.psis[1].SetCoeff(E{0, 1, 0}, Fe{1});
  psi.psis[1].SetCoeff(E{0, 0, 0}, Fe{3});
  psi.psis[2].SetCoeff(E{2, 0, 0}, Fe{4});
  psi.psis[2].SetCoeff(E{0, 0, 2}, Fe{2});
  psi.psis[2].SetCoeff(E{1, 0, 1}, Fe{1});
  psi.psis[2].SetCoeff(E{0, 1, 1}, Fe{3});
  psi.psis[2].SetCoeff(E{0, 0, 0}, Fe{1});
  ASSERT_TRUE(psi.IsTriangular());
  const std::vector<Fe> origin(3, Fe{0});
  const std::vector<Fe> u = Evaluate(f5, psi.psis, origin);
  const PolyMap no_filter;
  const auto oracle = BruteForceOracle(f5, psi.psis, no_filter, u, 2);
  EXPECT_NE(std::find(oracle.begin(), oracle.end(), KeyVector{0, 0, 0}),
            oracle.end());
  EXPECT_EQ(PreimageSearch(f5, psi, u, 2).solutions, oracle);
  EXPECT_EQ(PreimageSearch(f5, psi, u, 4).solutions,
            BruteForceOracle(f5, psi.psis, no_filter, u, 4));
}

TEST(PreimageSearchTest, MatchesOracleOnSeededInstance) {
  const Context ctx(Params{13, 3, 4, 2, 1, 2});
  BobState bob;
  const Transcript t = RunAttempt(ctx, 42, 0, DefaultBobLimits(), &bob);
  const CandidateSet raw =
      PreimageSearch(ctx.field(), bob.psi, t.u_msg, ctx.params().p);
  const CandidateSet filtered = FilterCandidates(ctx.field(), raw, t.f_msg);
  EXPECT_EQ(filtered.solutions,
            BruteForceOracle(ctx.field(), bob.psi.psis, t.f_msg, t.u_msg, 3));
  EXPECT_NE(std::find(filtered.solutions.begin(), filtered.solutions.end(),
                      t.alice_key),
            filtered.solutions.end());
  // Every raw member really is a preimage inside Z_p^n.
  for (const KeyVector& s : raw.solutions) {
    for (uint64_t x : s) EXPECT_LT(x, 3u);
    EXPECT_EQ(Evaluate(ctx.field(), bob.psi.psis, ToField(s)), t.u_msg);
  }
}

TEST(PreimageSearchTest, RootStrategiesAgree) {
  const Context ctx(Params{53, 19, 4, 2, 1, 1});
  for (uint64_t seed = 0; seed < 50; ++seed) {
    BobState bob;
    const Transcript t = RunAttempt(ctx, seed, 0, DefaultBobLimits(), &bob);
    SearchLimits quad;
    quad.roots = RootStrategy::kQuadratic;
    EXPECT_EQ(PreimageSearch(ctx.field(), bob.psi, t.u_msg, 19).solutions,
              PreimageSearch(ctx.field(), bob.psi, t.u_msg, 19, quad).solutions);
  }
}

TEST(PreimageSearchTest, NodeCountWithinBranchingBound) {
  const Context ctx(Params{13, 3, 4, 2, 1, 1});
  for (uint64_t seed = 0; seed < 100; ++seed) {
    BobState bob;
    const Transcript t = RunAttempt(ctx, seed, 0, DefaultBobLimits(), &bob);
    const CandidateSet set = PreimageSearch(ctx.field(), bob.psi, t.u_msg, 3);
    // 1 + m + m^2 + ... + m^n with m = 2, n = 4.
    EXPECT_LE(set.nodes_visited, 31u);
    EXPECT_LE(set.solutions.size(), 16u);
  }
}

TEST(PreimageSearchTest, LimitsAreEnforced) {
  const PrimeField f5(5);
  const MonomialOrder order(2, 2);
  TriangularMap psi;
  psi.psis.assign(2, Poly(order));  // zero map: every point is a preimage
  const std::vector<Fe> u(2, Fe{0});
  EXPECT_EQ(PreimageSearch(f5, psi, u, 4).solutions.size(), 16u);
  SearchLimits tight;
  tight.max_nodes = 5;
  try {
    PreimageSearch(f5, psi, u, 4, tight);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSearchLimitExceeded);
  }
  SearchLimits capped;
  capped.max_candidates = 3;
  const CandidateSet truncated = PreimageSearch(f5, psi, u, 4, capped);
  EXPECT_TRUE(truncated.truncated);
}

TEST(OracleTest, RejectsLargeInstances) {
  const PrimeField field(53);
  const MonomialOrder order(8, 2);
  const PolyMap psi(8, Poly(order));
  const std::vector<Fe> u(8, Fe{0});
  try {
    BruteForceOracle(field, psi, {}, u, 19);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInstanceTooLarge);
  }
  EXPECT_EQ(SaturatingPower(19, 8, kOracleMaxPoints), kOracleMaxPoints + 1);
  EXPECT_EQ(SaturatingPower(2, 8, kOracleMaxPoints), 256u);
}

}  // namespace
}  // namespace mpkex
