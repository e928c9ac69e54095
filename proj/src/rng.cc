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

#include "mpkex/rng.h"

#include <openssl/evp.h>
#include <openssl/sha.h>

#include <cstring>
#include <string>
#include <vector>

#include "mpkex/errors.h"

namespace mpkex {

struct Rng::Cipher {
  struct Free {
    void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
  };
  std::unique_ptr<EVP_CIPHER_CTX, Free> ctx;
};

Rng::Rng(uint64_t seed, std::string_view label)
    : cipher_(std::make_unique<Cipher>()) {
  std::vector<uint8_t> material;
  constexpr std::string_view kDomain = "mpkex/rng";
  material.insert(material.end(), kDomain.begin(), kDomain.end());
  for (int i = 7; i >= 0; --i) {
    material.push_back(static_cast<uint8_t>(seed >> (8 * i)));
  }
  material.insert(material.end(), label.begin(), label.end());
  std::array<uint8_t, SHA256_DIGEST_LENGTH> key{};
  SHA256(material.data(), material.size(), key.data());

  const std::array<uint8_t, 16> iv{};  // counter 0, nonce 0
  cipher_->ctx.reset(EVP_CIPHER_CTX_new());
  if (!cipher_->ctx ||
      EVP_EncryptInit_ex(cipher_->ctx.get(), EVP_chacha20(), nullptr,
                         key.data(), iv.data()) != 1) {
    throw Error(ErrorCode::kInvalidParams, "ChaCha20 initialisation failed");
  }
  Refill();
}

Rng::~Rng() = default;
Rng::Rng(Rng&&) noexcept = default;
Rng& Rng::operator=(Rng&&) noexcept = default;

void Rng::Refill() {
  static const std::array<uint8_t, 4096> kZeros{};
  int written = 0;
  EVP_EncryptUpdate(cipher_->ctx.get(), buffer_.data(), &written,
                    kZeros.data(), static_cast<int>(kZeros.size()));
  pos_ = 0;
}

uint64_t Rng::NextU64() {
  if (pos_ + 8 > buffer_.size()) Refill();
  uint64_t x = 0;
  for (int i = 0; i < 8; ++i) x = (x << 8) | buffer_[pos_ + i];
  pos_ += 8;
  return x;
}

u128 Rng::Below(u128 bound) {
  if (bound <= 1) return 0;
  const int bits = BitLength(bound - 1);
  const u128 mask = bits >= 128 ? ~u128{0} : (u128{1} << bits) - 1;
  while (true) {
    u128 x = NextU64();
    if (bits > 64) x = (x << 64) | NextU64();
    x &= mask;
    if (x < bound) return x;
  }
}

uint64_t DeriveSeed(uint64_t root, uint64_t index) {
  std::array<uint8_t, 16> material{};
  for (int i = 0; i < 8; ++i) {
    material[i] = static_cast<uint8_t>(root >> (56 - 8 * i));
    material[8 + i] = static_cast<uint8_t>(index >> (56 - 8 * i));
  }
  std::array<uint8_t, SHA256_DIGEST_LENGTH> digest{};
  SHA256(material.data(), material.size(), digest.data());
  uint64_t out = 0;
  for (int i = 0; i < 8; ++i) out = (out << 8) | digest[i];
  return out;
}

}  // namespace mpkex
