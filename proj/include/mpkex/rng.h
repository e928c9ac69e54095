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

#ifndef MPKEX_RNG_H_
#define MPKEX_RNG_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>

#include "mpkex/field.h"

namespace mpkex {

// Deterministic random stream: the ChaCha20 keystream under a key derived as
// SHA-256("mpkex/rng" || seed (8 bytes BE) || label). Streams with distinct
// labels are independent, which is how sessions split one root seed into
// per-party, per-round streams.
class Rng {
 public:
  Rng(uint64_t seed, std::string_view label);
  explicit Rng(uint64_t seed) : Rng(seed, "") {}
  ~Rng();

  Rng(Rng&&) noexcept;
  Rng& operator=(Rng&&) noexcept;
  Rng(const Rng&) = delete;
  Rng& operator=(const Rng&) = delete;

  uint64_t NextU64();
  // Uniform in [0, bound) by masked rejection sampling. bound must be >= 1.
  u128 Below(u128 bound);
  Fe UniformFe(const PrimeField& field) { return Fe{Below(field.modulus())}; }
  Fe UniformNonzeroFe(const PrimeField& field) {
    return Fe{1 + Below(field.modulus() - 1)};
  }

 private:
  void Refill();

  struct Cipher;
  std::unique_ptr<Cipher> cipher_;
  std::array<uint8_t, 4096> buffer_{};
  size_t pos_ = 0;
};

// Seed of the index-th child of a root seed (Monte Carlo trials).
uint64_t DeriveSeed(uint64_t root, uint64_t index);

}  // namespace mpkex

#endif  // MPKEX_RNG_H_
