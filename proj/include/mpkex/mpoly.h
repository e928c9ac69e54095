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

#ifndef MPKEX_MPOLY_H_
#define MPKEX_MPOLY_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mpkex/field.h"
#include "mpkex/rng.h"

namespace mpkex {

// Exact binomial coefficient; throws Error(kInvalidParams) on 64-bit overflow.
uint64_t Binomial(uint64_t n, uint64_t k);

// Graded-lexicographic order on monomials of total degree <= D in n variables:
// lower total degree first, then lexicographic with x_1 > x_2 > ... > x_n.
// Ranks run over [0, C(n+D, D)). Variables are 0-based in the API.
class MonomialOrder {
 public:
  MonomialOrder(int num_vars, int max_degree);

  int num_vars() const { return n_; }
  int max_degree() const { return d_; }
  size_t size() const;

  // Throws Error(kDegreeOverflow) if the total degree exceeds D and
  // Error(kDimensionMismatch) if the vector length is not n.
  size_t Rank(std::span<const int> exponents) const;
  std::vector<int> Unrank(size_t rank) const;

  int Degree(size_t rank) const;
  int Exponent(size_t rank, int var) const;
  // Highest variable index present in the monomial, or -1 for the constant.
  int MaxVar(size_t rank) const;
  // The monomial equals Parent(rank) * x_{StepVar(rank)}; rank > 0.
  size_t Parent(size_t rank) const;
  int StepVar(size_t rank) const;
  // Rank of x_var^power.
  size_t PurePowerRank(int var, int power) const;

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }

  struct Tables;

 private:
  int n_;
  int d_;
  std::shared_ptr<const Tables> tables_;
};

struct Poly {
  MonomialOrder order;
  std::vector<Fe> coeffs;  // indexed by rank, length C(n+D, D)

  explicit Poly(const MonomialOrder& o) : order(o), coeffs(o.size()) {}

  int num_vars() const { return order.num_vars(); }
  // -1 for the zero polynomial.
  int degree() const;
  bool IsZero() const { return degree() < 0; }
  // Highest variable index with a nonzero coefficient, or -1 if constant.
  int MaxVar() const;
  Fe Coeff(std::span<const int> exponents) const {
    return coeffs[order.Rank(exponents)];
  }
  void SetCoeff(std::span<const int> exponents, Fe value) {
    coeffs[order.Rank(exponents)] = value;
  }

  friend bool operator==(const Poly& a, const Poly& b) = default;
};

using PolyMap = std::vector<Poly>;

// Throws Error(kDimensionMismatch) when point.size() != n.
Fe Evaluate(const PrimeField& field, const Poly& f, std::span<const Fe> point);
std::vector<Fe> Evaluate(const PrimeField& field, const PolyMap& map,
                         std::span<const Fe> point);

Poly Add(const PrimeField& field, const Poly& a, const Poly& b);
Poly Sub(const PrimeField& field, const Poly& a, const Poly& b);
// Product in the given order. Throws Error(kDegreeOverflow) if
// deg a + deg b > out.max_degree().
Poly Mul(const PrimeField& field, const Poly& a, const Poly& b,
         const MonomialOrder& out);
// Re-indexes f into another order with the same variable count.
Poly Embed(const Poly& f, const MonomialOrder& target);

struct RandomConstraint {
  enum class Kind {
    kAny,
    // Some coefficient of degree >= 1 is nonzero.
    kNonconstant,
    // The homogeneous part of the requested degree is nonzero.
    kExactDegree,
    // The coefficient of x_var^degree is nonzero.
    kTopCoeffNonzero,
  };
  Kind kind = Kind::kAny;
  int var = 0;

  static RandomConstraint Any() { return {}; }
  static RandomConstraint Nonconstant() { return {Kind::kNonconstant, 0}; }
  static RandomConstraint ExactDegree() { return {Kind::kExactDegree, 0}; }
  static RandomConstraint TopCoeffNonzero(int var) {
    return {Kind::kTopCoeffNonzero, var};
  }
};

// Coefficients i.i.d. uniform over F_q for every monomial of total degree
// <= degree supported on x_0..x_{support-1} (support < 0 means all
// variables); zero elsewhere. Constraints are enforced by resampling only the
// coefficients they concern.
Poly RandomPoly(const PrimeField& field, const MonomialOrder& order, int degree,
                Rng& rng, RandomConstraint constraint = {}, int support = -1);

// Substitutes x_0..x_{k-1} = values into f, which must only involve
// x_0..x_k, and returns the univariate polynomial in x_k (length D + 1).
UniPoly SubstitutePrefix(const PrimeField& field, const Poly& f,
                         std::span<const Fe> values, int k);

// Standalone encoding: n (u16 BE), D (u8), then every coefficient in rank
// order as a W-byte big-endian integer.
std::vector<uint8_t> SerializePoly(const PrimeField& field, const Poly& f);
Poly DeserializePoly(const PrimeField& field, std::span<const uint8_t> bytes);

// Raw coefficient block without the header (used inside wire frames).
void AppendCoefficients(const PrimeField& field, const Poly& f,
                        std::vector<uint8_t>& out);
// Reads order.size() coefficients; throws Error(kElementOutOfRange) on any
// encoded value >= q. bytes must hold exactly order.size() * W bytes.
Poly ReadCoefficients(const PrimeField& field, const MonomialOrder& order,
                      std::span<const uint8_t> bytes);

}  // namespace mpkex

#endif  // MPKEX_MPOLY_H_
