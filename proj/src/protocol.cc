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

#include "mpkex/protocol.h"

#include <openssl/sha.h>

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "mpkex/errors.h"

namespace mpkex {

namespace mp = boost::multiprecision;

namespace {

mp::cpp_int ToBig(u128 x) {
  mp::cpp_int v = static_cast<uint64_t>(x >> 64);
  v <<= 64;
  v += static_cast<uint64_t>(x);
  return v;
}

void PutBigEndian(std::vector<uint8_t>& out, u128 v, int bytes) {
  for (int i = bytes - 1; i >= 0; --i) {
    out.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
}

}  // namespace

Params Params::Proposed() {
  Params params;
  params.q = ParseU128("46116646144580573897");
  params.p = 19;
  params.n = 32;
  params.m = 2;
  params.d = 1;
  params.l = 1;
  return params;
}

void Params::Validate() const {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::kInvalidParams, why);
  };
  if (BitLength(q) > kMaxModulusBits) {
    fail("q exceeds " + std::to_string(kMaxModulusBits) + " bits");
  }
  if (!IsPrime(q)) fail("q = " + U128ToString(q) + " is not prime");
  if (p <= 1 || u128{p} >= q) fail("need 1 < p < q");
  if (n < 1 || n > 0xffff) fail("need 1 <= n <= 65535");
  if (d < 1 || d >= m) fail("need 1 <= d < m");
  if (m > 0xff) fail("need m <= 255");
  if (l < 1 || l > 0xffff) fail("need 1 <= l <= 65535");
}

bool Params::InBoundRegime() const {
  const mp::cpp_int big_q = ToBig(q);
  const mp::cpp_int big_p = p;
  return 2 * big_p * big_q + big_p * big_p < big_q * big_q;
}

std::vector<uint8_t> Params::Canonical() const {
  std::vector<uint8_t> out;
  PutBigEndian(out, q, 16);
  PutBigEndian(out, p, 8);
  PutBigEndian(out, static_cast<u128>(n), 2);
  PutBigEndian(out, static_cast<u128>(m), 1);
  PutBigEndian(out, static_cast<u128>(d), 1);
  PutBigEndian(out, static_cast<u128>(l), 2);
  return out;
}

std::string Params::ToString() const {
  std::ostringstream os;
  os << "(q=" << U128ToString(q) << ", p=" << p << ", n=" << n << ", m=" << m
     << ", d=" << d << ", l=" << l << ")";
  return os.str();
}

namespace {

Params Validated(const Params& params) {
  params.Validate();
  return params;
}

}  // namespace

Context::Context(const Params& params)
    : params_(Validated(params)),
      field_(params.q),
      f_order_(params.n, params.d),
      c_order_(params.n, params.m),
      r_order_(params.n, params.m - params.d) {}

std::pair<AliceState, PolyMap> AliceInit(const Context& ctx, Rng& rng) {
  const Params& params = ctx.params();
  const PrimeField& field = ctx.field();
  AliceState alice;
  alice.s.resize(params.n);
  for (uint64_t& si : alice.s) si = static_cast<uint64_t>(rng.Below(params.p));
  const std::vector<Fe> point = ToField(alice.s);
  for (int i = 0; i < params.l; ++i) {
    Poly f_tilde = RandomPoly(field, ctx.f_order(), params.d, rng,
                              RandomConstraint::ExactDegree());
    Poly f = f_tilde;
    f.coeffs[0] = field.Sub(f.coeffs[0], Evaluate(field, f_tilde, point));
    alice.f_tilde.push_back(std::move(f_tilde));
    alice.f.push_back(std::move(f));
  }
  PolyMap f_msg = alice.f;
  return {std::move(alice), std::move(f_msg)};
}

namespace {

void CheckMap(const PolyMap& map, size_t count, int n, int max_degree,
              bool require_nonconstant, const char* what) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kMalformedMessage, std::string(what) + ": " + why);
  };
  if (map.size() != count) {
    fail("expected " + std::to_string(count) + " polynomials, got " +
         std::to_string(map.size()));
  }
  for (const Poly& f : map) {
    if (f.num_vars() != n) fail("wrong variable count");
    const int deg = f.degree();
    if (deg > max_degree) fail("degree " + std::to_string(deg) + " too large");
    if (require_nonconstant && deg < 1) fail("constant polynomial");
  }
}

PolyMap EmbedAll(const PolyMap& map, const MonomialOrder& order) {
  PolyMap out;
  out.reserve(map.size());
  for (const Poly& f : map) {
    out.push_back(f.order == order ? f : Embed(f, order));
  }
  return out;
}

}  // namespace

std::pair<BobState, PolyMap> BobRespond(const Context& ctx,
                                        const PolyMap& f_msg, Rng& rng) {
  const Params& params = ctx.params();
  const PrimeField& field = ctx.field();
  CheckMap(f_msg, params.l, params.n, params.d, true, "f message");
  const PolyMap f = EmbedAll(f_msg, ctx.f_order());

  BobState bob;
  for (int j = 0; j < params.n; ++j) {
    bob.psi.psis.push_back(RandomPoly(field, ctx.c_order(), params.m, rng,
                                      RandomConstraint::TopCoeffNonzero(j),
                                      j + 1));
  }
  for (int i = 0; i < params.n; ++i) {
    bob.r.push_back(RandomPoly(field, ctx.r_order(), params.m - params.d, rng,
                               RandomConstraint::ExactDegree()));
  }
  for (int i = 0; i < params.n; ++i) {
    bob.t.push_back(1 + static_cast<int>(rng.Below(params.l)));
  }
  for (int i = 0; i < params.n; ++i) {
    const Poly mask = Mul(field, f[bob.t[i] - 1], bob.r[i], ctx.c_order());
    bob.c.push_back(Add(field, bob.psi.psis[i], mask));
  }
  PolyMap c_msg = bob.c;
  return {std::move(bob), std::move(c_msg)};
}

std::vector<Fe> AliceFinalize(const Context& ctx, const AliceState& alice,
                              const PolyMap& c_msg) {
  const Params& params = ctx.params();
  CheckMap(c_msg, params.n, params.n, params.m, false, "c message");
  return Evaluate(ctx.field(), c_msg, ToField(alice.s));
}

SearchLimits DefaultBobLimits() {
  SearchLimits limits;
  limits.max_candidates = kCandidateCap;
  return limits;
}

Recovery BobRecover(const Context& ctx, const BobState& bob,
                    const PolyMap& f_msg, const std::vector<Fe>& u_msg,
                    const SearchLimits& limits) {
  const Params& params = ctx.params();
  if (u_msg.size() != static_cast<size_t>(params.n)) {
    throw Error(ErrorCode::kMalformedMessage,
                "u message has " + std::to_string(u_msg.size()) +
                    " components, expected " + std::to_string(params.n));
  }
  for (Fe x : u_msg) {
    if (x.v >= params.q) {
      throw Error(ErrorCode::kMalformedMessage, "u component not below q");
    }
  }
  Recovery rec;
  CandidateSet candidates;
  try {
    candidates = PreimageSearch(ctx.field(), bob.psi, u_msg, params.p, limits);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSearchLimitExceeded) throw;
    rec.nodes_visited = limits.max_nodes;
    rec.search_aborted = true;
    rec.diagnostic = e.what();
    return rec;
  }
  rec.nodes_visited = candidates.nodes_visited;
  rec.preimage_size = candidates.solutions.size();
  if (candidates.truncated) {
    rec.search_aborted = true;
    rec.diagnostic = "more than " + std::to_string(limits.max_candidates) +
                     " preimage candidates";
    return rec;
  }
  const CandidateSet survivors =
      FilterCandidates(ctx.field(), std::move(candidates), f_msg);
  rec.survivors = survivors.solutions.size();
  if (rec.survivors == 1) {
    rec.success = true;
    rec.key = survivors.solutions.front();
  } else {
    rec.diagnostic = std::to_string(rec.survivors) + " candidates survive";
  }
  return rec;
}

bool VerifyMasking(const Context& ctx, const BobState& bob,
                   const PolyMap& f_msg) {
  const PolyMap f = EmbedAll(f_msg, ctx.f_order());
  for (size_t i = 0; i < bob.c.size(); ++i) {
    const Poly mask = Mul(ctx.field(), f[bob.t[i] - 1], bob.r[i], ctx.c_order());
    if (!(Add(ctx.field(), bob.psi.psis[i], mask) == bob.c[i])) return false;
  }
  return true;
}

Rng AliceRng(uint64_t seed, int round) {
  return Rng(seed, "alice/round_" + std::to_string(round));
}

Rng BobRng(uint64_t seed, int round) {
  return Rng(seed, "bob/round_" + std::to_string(round));
}

Transcript RunAttempt(const Context& ctx, uint64_t seed, int round,
                      const SearchLimits& limits, BobState* bob_out) {
  Rng alice_rng = AliceRng(seed, round);
  Rng bob_rng = BobRng(seed, round);
  Transcript tr;
  auto [alice, f_msg] = AliceInit(ctx, alice_rng);
  auto [bob, c_msg] = BobRespond(ctx, f_msg, bob_rng);
  tr.u_msg = AliceFinalize(ctx, alice, c_msg);
  tr.outcome = BobRecover(ctx, bob, f_msg, tr.u_msg, limits);
  tr.alice_key = alice.s;
  tr.f_msg = std::move(f_msg);
  tr.c_msg = std::move(c_msg);
  if (bob_out != nullptr) *bob_out = std::move(bob);
  return tr;
}

SessionResult RunSession(const Context& ctx, uint64_t seed, int max_attempts,
                         const SearchLimits& limits) {
  if (max_attempts < 1) {
    throw Error(ErrorCode::kInvalidParams, "max_attempts must be >= 1");
  }
  SessionResult result;
  for (int round = 0; round < max_attempts; ++round) {
    result.attempts.push_back(RunAttempt(ctx, seed, round, limits));
    const Transcript& tr = result.attempts.back();
    if (!tr.outcome.success) continue;
    if (tr.outcome.key != tr.alice_key) {
      throw std::logic_error("Bob recovered a key different from Alice's");
    }
    result.key = tr.outcome.key;
    return result;
  }
  throw Error(ErrorCode::kExhaustedRestarts,
              "no agreement after " + std::to_string(max_attempts) +
                  " attempts; last: " +
                  result.attempts.back().outcome.diagnostic);
}

std::vector<uint8_t> KeyToBytes(const KeyVector& key, uint64_t p) {
  mp::cpp_int value = 0;
  mp::cpp_int weight = 1;
  for (uint64_t si : key) {
    value += weight * si;
    weight *= p;
  }
  const mp::cpp_int max_value = weight - 1;
  const size_t bits = max_value == 0 ? 1 : mp::msb(max_value) + 1;
  const size_t width = (bits + 7) / 8;
  std::vector<uint8_t> raw;
  mp::export_bits(value, std::back_inserter(raw), 8);
  if (value == 0) raw.clear();
  std::vector<uint8_t> out(width - raw.size(), 0);
  out.insert(out.end(), raw.begin(), raw.end());
  return out;
}

std::string KeyDigest(const KeyVector& key, uint64_t p) {
  const std::vector<uint8_t> bytes = KeyToBytes(key, p);
  std::array<uint8_t, SHA256_DIGEST_LENGTH> digest{};
  SHA256(bytes.data(), bytes.size(), digest.data());
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (int i = 0; i < 8; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

}  // namespace mpkex
