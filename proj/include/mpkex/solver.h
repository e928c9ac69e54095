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

#ifndef MPKEX_SOLVER_H_
#define MPKEX_SOLVER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mpkex/field.h"
#include "mpkex/mpoly.h"

namespace mpkex {

// A point of Z_p^n, coordinates in {0..p-1}.
using KeyVector = std::vector<uint64_t>;

std::vector<Fe> ToField(const KeyVector& key);

// psis[j] involves only x_0..x_j, and (when built by the protocol) carries a
// nonzero x_j^m coefficient so every substituted equation has degree m.
struct TriangularMap {
  PolyMap psis;

  int num_vars() const { return static_cast<int>(psis.size()); }
  // Variable-support triangularity, by scanning coefficient ranks.
  bool IsTriangular() const;
};

struct SearchLimits {
  uint64_t max_nodes = 1'000'000;
  // 0 disables the cap. When the search finds more candidates than this it
  // stops and reports truncated = true.
  size_t max_candidates = 0;
  RootStrategy roots = RootStrategy::kEnumerate;
};

struct CandidateSet {
  std::vector<KeyVector> solutions;  // lexicographically sorted
  uint64_t nodes_visited = 0;
  uint64_t max_frontier = 0;
  bool truncated = false;
};

// Every s in Z_p^n with psi(s) = u, by depth-first search over the triangular
// system: the node (s_0..s_{k-1}) branches on the Z_p roots of
// psi_k(s_0..s_{k-1}, x) - u_k, and dies when there are none. Throws
// Error(kSearchLimitExceeded) once more than limits.max_nodes nodes have been
// visited.
CandidateSet PreimageSearch(const PrimeField& field, const TriangularMap& psi,
                            std::span<const Fe> u, uint64_t p,
                            const SearchLimits& limits = {});

// Keeps the members with f_i(s) = 0 for every component of f.
CandidateSet FilterCandidates(const PrimeField& field, CandidateSet candidates,
                              const PolyMap& f);

inline constexpr uint64_t kOracleMaxPoints = 1'000'000;

// Exhaustive scan of Z_p^n for {s : psi(s) = u and f(s) = 0}. Uses nothing
// but Evaluate. Throws Error(kInstanceTooLarge) when p^n > kOracleMaxPoints.
std::vector<KeyVector> BruteForceOracle(const PrimeField& field,
                                        const PolyMap& psi, const PolyMap& f,
                                        std::span<const Fe> u, uint64_t p);

// p^n if it does not exceed cap, otherwise cap + 1.
uint64_t SaturatingPower(uint64_t p, int n, uint64_t cap);

}  // namespace mpkex

#endif  // MPKEX_SOLVER_H_
