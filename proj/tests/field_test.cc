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

#include "mpkex/field.h"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mpkex/errors.h"
#include "mpkex/rng.h"
#include "test_util.h"

namespace mpkex {
namespace {

using testing::Big;
using testing::FromBig;

std::set<u128> Values(const std::vector<Fe>& xs) {
  std::set<u128> out;
  for (Fe x : xs) out.insert(x.v);
  return out;
}

TEST(FieldTest, MultiplicationExamples) {
  const PrimeField f53(53);
  EXPECT_EQ(f53.Mul(Fe{20}, Fe{30}), Fe{17});
  const PrimeField big(ParseU128(testing::kProposedQ));
  const Fe a{ParseU128("31415926535897932384")};
  EXPECT_EQ(big.Mul(a, big.One()), a);
  EXPECT_EQ(big.Mul(a, big.Zero()), Fe{0});
}

TEST(FieldTest, InverseExamples) {
  const PrimeField f5(5);
  EXPECT_EQ(f5.Inv(Fe{3}), Fe{2});
  for (u128 q : {u128{5}, u128{53}, ParseU128(testing::kProposedQ)}) {
    const PrimeField f(q);
    EXPECT_EQ(f.Inv(Fe{1}), Fe{1});
    EXPECT_EQ(f.Inv(Fe{q - 1}), Fe{q - 1});
  }
}

TEST(FieldTest, InverseOfZeroThrows) {
  const PrimeField f(53);
  try {
    f.Inv(Fe{0});
    FAIL() << "expected ZeroInverse";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroInverse);
  }
}

TEST(FieldTest, InverseProperty) {
  for (u128 q : {u128{2}, u128{3}, u128{53}, u128{97},
                 ParseU128(testing::kProposedQ)}) {
    const PrimeField f(q);
    Rng rng(7, "inverse");
    for (int i = 0; i < 500; ++i) {
      const Fe a = rng.UniformNonzeroFe(f);
      EXPECT_EQ(f.Mul(a, f.Inv(a)), Fe{1});
    }
  }
}

TEST(FieldTest, SqrtExamples) {
  const PrimeField f53(53);
  auto r = f53.Sqrt(Fe{47});
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->first, Fe{10});
  EXPECT_EQ(r->second, Fe{43});
  const auto zero = f53.Sqrt(Fe{0});
  ASSERT_TRUE(zero.has_value());
  EXPECT_EQ(zero->first, Fe{0});
  EXPECT_EQ(zero->second, Fe{0});
  EXPECT_FALSE(PrimeField(7).Sqrt(Fe{6}).has_value());
}

TEST(FieldTest, SqrtMatchesEulerCriterionExhaustively) {
  // q = 97 has q - 1 = 2^5 * 3, exercising the full Tonelli-Shanks loop.
  for (u128 q : {u128{3}, u128{7}, u128{13}, u128{53}, u128{97}, u128{257}}) {
    const PrimeField f(q);
    std::set<u128> squares;
    for (u128 x = 0; x < q; ++x) squares.insert(x * x % q);
    for (u128 a = 0; a < q; ++a) {
      const auto r = f.Sqrt(Fe{a});
      EXPECT_EQ(r.has_value(), squares.count(a) == 1) << "q=" << U128ToString(q);
      if (r) {
        EXPECT_EQ(f.Mul(r->first, r->first), Fe{a});
        EXPECT_EQ(f.Mul(r->second, r->second), Fe{a});
        EXPECT_EQ(f.Add(r->first, r->second), Fe{0});
      }
    }
  }
}

TEST(FieldTest, SqrtLargeModulus) {
  const PrimeField f(ParseU128(testing::kProposedQ));
  Rng rng(11, "sqrt");
  for (int i = 0; i < 300; ++i) {
    const Fe a = rng.UniformFe(f);
    const bool residue = f.Pow(a, (f.modulus() - 1) / 2).v <= 1;
    const auto r = f.Sqrt(a);
    ASSERT_EQ(r.has_value(), residue);
    if (r) EXPECT_EQ(f.Mul(r->first, r->first), a);
    const Fe sq = f.Mul(a, a);
    const auto back = f.Sqrt(sq);
    ASSERT_TRUE(back.has_value());
    EXPECT_TRUE(back->first == a || back->second == a);
  }
}

TEST(FieldTest, WideIntegerOracleAgreesOnProposedModulus) {
  const u128 q = ParseU128(testing::kProposedQ);
  const PrimeField f(q);
  const auto big_q = Big(q);
  Rng rng(2024, "wide-oracle");
  for (int i = 0; i < 10000; ++i) {
    const Fe a = rng.UniformFe(f);
    const Fe b = rng.UniformFe(f);
    ASSERT_EQ(f.Mul(a, b).v, FromBig(Big(a.v) * Big(b.v) % big_q));
    ASSERT_EQ(f.Add(a, b).v, FromBig((Big(a.v) + Big(b.v)) % big_q));
    ASSERT_EQ(f.Sub(a, b).v, FromBig((Big(a.v) + big_q - Big(b.v)) % big_q));
  }
  // Extremes.
  const Fe top{q - 1};
  EXPECT_EQ(f.Mul(top, top), Fe{1});
}

TEST(FieldTest, WideIntegerOracleAt80Bits) {
  // Largest prime below 2^80.
  const u128 q = (u128{1} << 80) - 65;
  const PrimeField f(q);
  const auto big_q = Big(q);
  Rng rng(5, "80-bit");
  for (int i = 0; i < 2000; ++i) {
    const Fe a = rng.UniformFe(f);
    const Fe b = rng.UniformFe(f);
    ASSERT_EQ(f.Mul(a, b).v, FromBig(Big(a.v) * Big(b.v) % big_q));
  }
}

TEST(FieldTest, PrimalityAgreesWithTrialDivision) {
  for (u128 n = 0; n < 5000; ++n) {
    bool prime = n >= 2;
    for (u128 d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
    EXPECT_EQ(IsPrime(n), prime) << U128ToString(n);
  }
  EXPECT_TRUE(IsPrime(ParseU128(testing::kProposedQ)));
  // Strong pseudoprime to bases 2..37 (needs the base 41).
  EXPECT_FALSE(IsPrime(ParseU128("3825123056546413051")));
  EXPECT_FALSE(IsPrime(ParseU128(testing::kProposedQ) + 2));
}

TEST(FieldTest, RejectsCompositeOrOversizedModulus) {
  for (u128 q : {u128{1}, u128{4}, u128{91}, u128{1} << 81}) {
    try {
      PrimeField f(q);
      FAIL() << "accepted " << U128ToString(q);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidParams);
    }
  }
}

TEST(FieldTest, ElementWidth) {
  EXPECT_EQ(PrimeField(ParseU128(testing::kProposedQ)).element_bytes(), 9u);
  EXPECT_EQ(PrimeField(53).element_bytes(), 1u);
  EXPECT_EQ(PrimeField(257).element_bytes(), 2u);
}

TEST(FieldTest, EncodeDecode) {
  const PrimeField f(ParseU128(testing::kProposedQ));
  std::vector<uint8_t> buf(f.element_bytes());
  f.Encode(Fe{0x0102030405060708ull}, buf);
  EXPECT_EQ(buf, (std::vector<uint8_t>{0, 1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(f.Decode(buf), Fe{0x0102030405060708ull});
  f.Encode(Fe{f.modulus() - 1}, buf);
  EXPECT_TRUE(f.Decode(buf).has_value());
  std::vector<uint8_t> too_big(9, 0xff);
  EXPECT_FALSE(f.Decode(too_big).has_value());
}

TEST(FieldTest, ParseU128) {
  EXPECT_EQ(U128ToString(ParseU128(testing::kProposedQ)), testing::kProposedQ);
  EXPECT_THROW(ParseU128("12a"), Error);
  EXPECT_THROW(ParseU128(""), Error);
  EXPECT_THROW(ParseU128("999999999999999999999999999999999999999999"), Error);
}

TEST(RootsTest, ToyExamples) {
  const PrimeField f5(5);
  // 3x^2 + x + 4 - 4.
  UniPoly shifted{{Fe{0}, Fe{1}, Fe{3}}};
  EXPECT_EQ(Values(RootsInSubrange(f5, shifted, 5)), (std::set<u128>{0, 3}));
  UniPoly toy{{Fe{4}, Fe{1}, Fe{3}}};
  EXPECT_TRUE(RootsInSubrange(f5, toy, 5).empty());
  EXPECT_TRUE(RootsInSubrange(f5, toy, 5, RootStrategy::kQuadratic).empty());
  EXPECT_EQ(Values(RootsInSubrange(f5, shifted, 5, RootStrategy::kQuadratic)),
            (std::set<u128>{0, 3}));
}

TEST(RootsTest, ZeroPolynomialYieldsWholeSubrange) {
  const PrimeField f(97);
  UniPoly zero{{Fe{0}, Fe{0}, Fe{0}}};
  EXPECT_EQ(RootsInSubrange(f, zero, 19).size(), 19u);
  EXPECT_EQ(RootsInSubrange(f, zero, 19, RootStrategy::kQuadratic).size(), 19u);
}

TEST(RootsTest, InvalidSubrange) {
  const PrimeField f(53);
  UniPoly poly{{Fe{1}, Fe{1}}};
  for (uint64_t p : {0ull, 1ull, 54ull, 100ull}) {
    try {
      RootsInSubrange(f, poly, p);
      FAIL() << "accepted p=" << p;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidSubrange);
    }
  }
}

TEST(RootsTest, ClosedFormMatchesEnumeration) {
  for (u128 q : {u128{53}, u128{97}, ParseU128(testing::kProposedQ)}) {
    const PrimeField f(q);
    for (uint64_t p : {2ull, 19ull}) {
      Rng rng(static_cast<uint64_t>(q % 1000) * 100 + p, "quadratics");
      for (int i = 0; i < 1000; ++i) {
        UniPoly poly{{rng.UniformFe(f), rng.UniformFe(f), rng.UniformNonzeroFe(f)}};
        // Plant a root in range half of the time so the large field still
        // exercises the non-empty path.
        if (i % 2 == 0) {
          const Fe r{static_cast<uint64_t>(rng.Below(p))};
          const Fe value = poly.Evaluate(f, r);
          poly.coeffs[0] = f.Sub(poly.coeffs[0], value);
        }
        const auto slow = RootsInSubrange(f, poly, p);
        const auto fast = RootsInSubrange(f, poly, p, RootStrategy::kQuadratic);
        ASSERT_EQ(slow, fast);
        for (Fe r : slow) EXPECT_EQ(poly.Evaluate(f, r), Fe{0});
      }
    }
  }
}

TEST(RootsTest, DegenerateDegrees) {
  const PrimeField f(53);
  UniPoly linear{{Fe{50}, Fe{1}, Fe{0}}};  // x - 3
  EXPECT_EQ(Values(RootsInSubrange(f, linear, 19, RootStrategy::kQuadratic)),
            (std::set<u128>{3}));
  UniPoly constant{{Fe{4}, Fe{0}, Fe{0}}};
  EXPECT_TRUE(RootsInSubrange(f, constant, 19, RootStrategy::kQuadratic).empty());
  UniPoly double_root{{Fe{4}, Fe{49}, Fe{1}}};  // (x - 2)^2
  EXPECT_EQ(Values(RootsInSubrange(f, double_root, 19, RootStrategy::kQuadratic)),
            (std::set<u128>{2}));
}

}  // namespace
}  // namespace mpkex
