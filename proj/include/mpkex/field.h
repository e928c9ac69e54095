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

#ifndef MPKEX_FIELD_H_
#define MPKEX_FIELD_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mpkex {

using u128 = unsigned __int128;

// Largest supported modulus bit length. Multiplication splits one operand into
// 40-bit limbs, so every intermediate stays below 2^121.
inline constexpr int kMaxModulusBits = 80;

// A canonical residue in [0, q). The modulus lives in the PrimeField context.
struct Fe {
  u128 v = 0;

  friend constexpr bool operator==(Fe a, Fe b) = default;
  friend constexpr auto operator<=>(Fe a, Fe b) = default;
};

std::string U128ToString(u128 x);
// Parses a non-negative decimal integer. Throws Error(kInvalidParams).
u128 ParseU128(std::string_view text);
int BitLength(u128 x);

// Deterministic Miller-Rabin with the first 13 prime bases, exact for every
// n < 3.3e24. Inputs wider than kMaxModulusBits are reported as not prime.
bool IsPrime(u128 n);

class PrimeField {
 public:
  // Throws Error(kInvalidParams) unless q is a prime below 2^kMaxModulusBits.
  explicit PrimeField(u128 q);

  u128 modulus() const { return q_; }
  int bit_length() const { return bits_; }
  // Serialized width W = ceil(bitlength(q) / 8).
  size_t element_bytes() const { return static_cast<size_t>((bits_ + 7) / 8); }

  Fe FromUint(u128 x) const { return Fe{x % q_}; }
  Fe Zero() const { return Fe{0}; }
  Fe One() const { return Fe{1}; }

  Fe Add(Fe a, Fe b) const {
    u128 s = a.v + b.v;
    return Fe{s >= q_ ? s - q_ : s};
  }
  Fe Sub(Fe a, Fe b) const { return Fe{a.v >= b.v ? a.v - b.v : a.v + q_ - b.v}; }
  Fe Neg(Fe a) const { return Fe{a.v == 0 ? 0 : q_ - a.v}; }
  Fe Mul(Fe a, Fe b) const;
  Fe Pow(Fe a, u128 e) const;
  // Throws Error(kZeroInverse) for a = 0.
  Fe Inv(Fe a) const;
  // Both square roots {r, q - r}, or nullopt for a non-residue.
  std::optional<std::pair<Fe, Fe>> Sqrt(Fe a) const;

  // Fixed-width big-endian encoding (W bytes).
  void Encode(Fe a, std::span<uint8_t> out) const;
  // Returns nullopt when the encoded integer is >= q.
  std::optional<Fe> Decode(std::span<const uint8_t> in) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.q_ == b.q_;
  }

 private:
  u128 q_;
  int bits_;
};

// Univariate polynomial, coeffs[i] is the coefficient of x^i.
struct UniPoly {
  std::vector<Fe> coeffs;

  // Largest index with a nonzero coefficient, or -1 for the zero polynomial.
  int degree() const;
  Fe Evaluate(const PrimeField& field, Fe x) const;
};

enum class RootStrategy {
  kEnumerate,
  // Closed form for degree <= 2 at odd q; falls back to enumeration otherwise.
  kQuadratic,
};

// Exactly {x in {0..p-1} : poly(x) = 0}, ascending. An identically zero poly
// yields all of {0..p-1}. Throws Error(kInvalidSubrange) unless 1 < p <= q;
// p = q scans the whole field.
std::vector<Fe> RootsInSubrange(const PrimeField& field, const UniPoly& poly,
                                uint64_t p,
                                RootStrategy strategy = RootStrategy::kEnumerate);

}  // namespace mpkex

#endif  // MPKEX_FIELD_H_
