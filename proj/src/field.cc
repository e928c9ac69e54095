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

#include <algorithm>
#include <array>

#include "mpkex/errors.h"

namespace mpkex {

std::string U128ToString(u128 x) {
  if (x == 0) return "0";
  std::string out;
  while (x > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

u128 ParseU128(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::kInvalidParams, "empty integer");
  constexpr u128 kMax = ~u128{0};
  u128 x = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') {
      throw Error(ErrorCode::kInvalidParams,
                  "not a decimal integer: " + std::string(text));
    }
    const unsigned digit = static_cast<unsigned>(ch - '0');
    if (x > (kMax - digit) / 10) {
      throw Error(ErrorCode::kInvalidParams,
                  "integer too large: " + std::string(text));
    }
    x = x * 10 + digit;
  }
  return x;
}

int BitLength(u128 x) {
  int bits = 0;
  while (x != 0) {
    ++bits;
    x >>= 1;
  }
  return bits;
}

namespace {

// Modular multiplication valid for any modulus below 2^80.
u128 MulMod(u128 a, u128 b, u128 q) {
  if (q <= (u128{1} << 32)) {
    return static_cast<uint64_t>(a) * static_cast<uint64_t>(b) %
           static_cast<uint64_t>(q);
  }
  if (q <= (u128{1} << 64)) return a * b % q;
  constexpr int kLimb = 40;
  const u128 hi = b >> kLimb;
  const u128 lo = b & ((u128{1} << kLimb) - 1);
  u128 r = a * hi % q;
  return ((r << kLimb) + a * lo) % q;
}

u128 PowMod(u128 base, u128 e, u128 q) {
  u128 result = 1 % q;
  base %= q;
  while (e != 0) {
    if (e & 1) result = MulMod(result, base, q);
    base = MulMod(base, base, q);
    e >>= 1;
  }
  return result;
}

}  // namespace

bool IsPrime(u128 n) {
  constexpr std::array<unsigned, 13> kBases = {2,  3,  5,  7,  11, 13, 17,
                                               19, 23, 29, 31, 37, 41};
  if (n < 2) return false;
  for (unsigned b : kBases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  // The multiplication routine is only exact below 2^80; the base set is a
  // proven witness set below 3.3e24 which is larger than that.
  if (BitLength(n) > kMaxModulusBits) return false;
  u128 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned b : kBases) {
    u128 x = PowMod(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = MulMod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(u128 q) : q_(q), bits_(BitLength(q)) {
  if (bits_ > kMaxModulusBits) {
    throw Error(ErrorCode::kInvalidParams,
                "modulus exceeds " + std::to_string(kMaxModulusBits) + " bits");
  }
  if (!IsPrime(q)) {
    throw Error(ErrorCode::kInvalidParams,
                "modulus is not prime: " + U128ToString(q));
  }
}

Fe PrimeField::Mul(Fe a, Fe b) const { return Fe{MulMod(a.v, b.v, q_)}; }

Fe PrimeField::Pow(Fe a, u128 e) const { return Fe{PowMod(a.v, e, q_)}; }

Fe PrimeField::Inv(Fe a) const {
  if (a.v == 0) throw Error(ErrorCode::kZeroInverse, "inverse of zero");
  return Pow(a, q_ - 2);
}

std::optional<std::pair<Fe, Fe>> PrimeField::Sqrt(Fe a) const {
  if (a.v == 0) return std::pair{a, a};
  if (q_ == 2) return std::pair{a, a};
  if (Pow(a, (q_ - 1) / 2).v != 1) return std::nullopt;

  // Tonelli-Shanks.
  u128 odd = q_ - 1;
  int twos = 0;
  while ((odd & 1) == 0) {
    odd >>= 1;
    ++twos;
  }
  Fe root;
  if (twos == 1) {
    root = Pow(a, (q_ + 1) / 4);
  } else {
    Fe z{2};
    while (Pow(z, (q_ - 1) / 2).v != q_ - 1) z.v += 1;
    int m = twos;
    Fe c = Pow(z, odd);
    Fe t = Pow(a, odd);
    root = Pow(a, (odd + 1) / 2);
    while (t.v != 1) {
      int i = 0;
      Fe t2 = t;
      while (t2.v != 1) {
        t2 = Mul(t2, t2);
        ++i;
      }
      Fe b = c;
      for (int j = 0; j < m - i - 1; ++j) b = Mul(b, b);
      m = i;
      c = Mul(b, b);
      t = Mul(t, c);
      root = Mul(root, b);
    }
  }
  Fe other = Neg(root);
  if (other < root) std::swap(root, other);
  return std::pair{root, other};
}

void PrimeField::Encode(Fe a, std::span<uint8_t> out) const {
  u128 v = a.v;
  for (size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<uint8_t>(v & 0xff);
    v >>= 8;
  }
}

std::optional<Fe> PrimeField::Decode(std::span<const uint8_t> in) const {
  u128 v = 0;
  for (uint8_t byte : in) {
    if (v >> 120) return std::nullopt;
    v = (v << 8) | byte;
  }
  if (v >= q_) return std::nullopt;
  return Fe{v};
}

int UniPoly::degree() const {
  for (size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i].v != 0) return static_cast<int>(i);
  }
  return -1;
}

Fe UniPoly::Evaluate(const PrimeField& field, Fe x) const {
  Fe acc{0};
  for (size_t i = coeffs.size(); i-- > 0;) {
    acc = field.Add(field.Mul(acc, x), coeffs[i]);
  }
  return acc;
}

namespace {

std::vector<Fe> AllOf(uint64_t p) {
  std::vector<Fe> all(p);
  for (uint64_t x = 0; x < p; ++x) all[x] = Fe{x};
  return all;
}

std::vector<Fe> EnumerateRoots(const PrimeField& field, const UniPoly& poly,
                               uint64_t p) {
  std::vector<Fe> roots;
  for (uint64_t x = 0; x < p; ++x) {
    if (poly.Evaluate(field, Fe{x}).v == 0) roots.push_back(Fe{x});
  }
  return roots;
}

}  // namespace

std::vector<Fe> RootsInSubrange(const PrimeField& field, const UniPoly& poly,
                                uint64_t p, RootStrategy strategy) {
  if (p <= 1 || u128{p} > field.modulus()) {
    throw Error(ErrorCode::kInvalidSubrange,
                "need 1 < p <= q, got p = " + std::to_string(p));
  }
  const int deg = poly.degree();
  if (deg < 0) return AllOf(p);
  if (strategy == RootStrategy::kEnumerate || deg > 2 ||
      field.modulus() == 2) {
    return EnumerateRoots(field, poly, p);
  }

  const Fe c = poly.coeffs[0];
  if (deg == 0) return {};
  std::vector<Fe> roots;
  auto keep = [&](Fe x) {
    if (x.v < p) roots.push_back(x);
  };
  if (deg == 1) {
    keep(field.Mul(field.Neg(c), field.Inv(poly.coeffs[1])));
    return roots;
  }
  const Fe b = poly.coeffs[1];
  const Fe a = poly.coeffs[2];
  const Fe disc =
      field.Sub(field.Mul(b, b), field.Mul(Fe{4 % field.modulus()},
                                           field.Mul(a, c)));
  const auto sq = field.Sqrt(disc);
  if (!sq) return {};
  const Fe inv_2a = field.Inv(field.Add(a, a));
  const Fe x1 = field.Mul(field.Sub(sq->first, b), inv_2a);
  const Fe x2 = field.Mul(field.Sub(sq->second, b), inv_2a);
  keep(x1);
  if (x2 != x1) keep(x2);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace mpkex
