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

#ifndef MPKEX_PROTOCOL_H_
#define MPKEX_PROTOCOL_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mpkex/field.h"
#include "mpkex/mpoly.h"
#include "mpkex/rng.h"
#include "mpkex/solver.h"

namespace mpkex {

// Protocol parameters. Alice's key lives in Z_p^n inside F_q^n; Bob's central
// map has degree m; Alice publishes l equations of degree d.
struct Params {
  u128 q = 0;
  uint64_t p = 0;
  int n = 0;
  int m = 0;
  int d = 0;
  int l = 0;

  // (46116646144580573897, 19, 32, 2, 1, 1).
  static Params Proposed();

  // Throws Error(kInvalidParams) unless q is prime, 1 < p < q, 1 <= d < m,
  // l >= 1 and the sizes fit the wire format.
  void Validate() const;
  // 2p/q + (p/q)^2 < 1, the regime where the failure bound is meaningful.
  // Outside it the protocol still runs.
  bool InBoundRegime() const;
  // q (16 bytes) | p (8) | n (2) | m (1) | d (1) | l (2), all big-endian.
  std::vector<uint8_t> Canonical() const;
  std::string ToString() const;

  friend bool operator==(const Params&, const Params&) = default;
};

// Validated parameters together with their field and monomial orders.
class Context {
 public:
  explicit Context(const Params& params);

  const Params& params() const { return params_; }
  const PrimeField& field() const { return field_; }
  const MonomialOrder& f_order() const { return f_order_; }
  const MonomialOrder& c_order() const { return c_order_; }
  const MonomialOrder& r_order() const { return r_order_; }

 private:
  Params params_;
  PrimeField field_;
  MonomialOrder f_order_;
  MonomialOrder c_order_;
  MonomialOrder r_order_;
};

struct AliceState {
  KeyVector s;
  PolyMap f_tilde;
  PolyMap f;  // f_tilde - f_tilde(s); f(s) = 0
};

struct BobState {
  TriangularMap psi;
  PolyMap r;
  std::vector<int> t;  // 1-based indices into f
  PolyMap c;           // c_i = psi_i + f_{t_i} r_i
};

struct Recovery {
  bool success = false;
  KeyVector key;              // set on success
  size_t preimage_size = 0;   // candidates in psi^{-1}(u) within Z_p^n
  size_t survivors = 0;       // candidates that also satisfy f = 0
  uint64_t nodes_visited = 0;
  // The node limit or the candidate cap stopped the search.
  bool search_aborted = false;
  std::string diagnostic;     // reason for a failure
};

struct Transcript {
  PolyMap f_msg;
  PolyMap c_msg;
  std::vector<Fe> u_msg;
  Recovery outcome;
  KeyVector alice_key;
};

// Bob refuses a search that produces more raw candidates than this.
inline constexpr size_t kCandidateCap = 64;

std::pair<AliceState, PolyMap> AliceInit(const Context& ctx, Rng& rng);

// Throws Error(kMalformedMessage) if f_msg does not hold l nonconstant
// polynomials in n variables of degree <= d.
std::pair<BobState, PolyMap> BobRespond(const Context& ctx,
                                        const PolyMap& f_msg, Rng& rng);

// Throws Error(kMalformedMessage) unless c_msg holds n polynomials in n
// variables of degree <= m.
std::vector<Fe> AliceFinalize(const Context& ctx, const AliceState& alice,
                              const PolyMap& c_msg);

SearchLimits DefaultBobLimits();

// Succeeds iff exactly one candidate survives the f-filter. Search blowups
// are reported as failures with a diagnostic.
Recovery BobRecover(const Context& ctx, const BobState& bob,
                    const PolyMap& f_msg, const std::vector<Fe>& u_msg,
                    const SearchLimits& limits = DefaultBobLimits());

// Recomputes psi_i + f_{t_i} r_i and compares it with c_i coefficientwise.
bool VerifyMasking(const Context& ctx, const BobState& bob,
                   const PolyMap& f_msg);

// Per-party, per-round random streams of one session seed.
Rng AliceRng(uint64_t seed, int round);
Rng BobRng(uint64_t seed, int round);

// A single protocol execution (both parties in-process). bob_out, when
// given, receives Bob's secret state.
Transcript RunAttempt(const Context& ctx, uint64_t seed, int round,
                      const SearchLimits& limits = DefaultBobLimits(),
                      BobState* bob_out = nullptr);

struct SessionResult {
  std::vector<Transcript> attempts;
  KeyVector key;
  // Each attempt is two message round trips.
  int rounds() const { return 2 * static_cast<int>(attempts.size()); }
};

// Repeats RunAttempt with fresh rounds until Bob succeeds. Checks that Bob's
// key equals Alice's. Throws Error(kExhaustedRestarts) after max_attempts
// failures.
SessionResult RunSession(const Context& ctx, uint64_t seed, int max_attempts,
                         const SearchLimits& limits = DefaultBobLimits());

// Big-endian bytes of sum_i s_i p^i, width ceil(log2(p^n) / 8).
std::vector<uint8_t> KeyToBytes(const KeyVector& key, uint64_t p);
// First 8 bytes of SHA-256 over KeyToBytes, in hex.
std::string KeyDigest(const KeyVector& key, uint64_t p);

}  // namespace mpkex

#endif  // MPKEX_PROTOCOL_H_
