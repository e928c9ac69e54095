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

#include <algorithm>
#include <string>
#include <utility>

#include "mpkex/errors.h"

namespace mpkex {

std::vector<Fe> ToField(const KeyVector& key) {
  std::vector<Fe> out(key.size());
  for (size_t i = 0; i < key.size(); ++i) out[i] = Fe{key[i]};
  return out;
}

bool TriangularMap::IsTriangular() const {
  for (size_t j = 0; j < psis.size(); ++j) {
    if (psis[j].num_vars() != num_vars()) return false;
    if (psis[j].MaxVar() > static_cast<int>(j)) return false;
  }
  return true;
}

CandidateSet PreimageSearch(const PrimeField& field, const TriangularMap& psi,
                            std::span<const Fe> u, uint64_t p,
                            const SearchLimits& limits) {
  const int n = psi.num_vars();
  if (u.size() != static_cast<size_t>(n)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "target has " + std::to_string(u.size()) +
                    " components, map has " + std::to_string(n));
  }
  CandidateSet result;
  if (n == 0) return result;

  // Explicit DFS stack of (depth, value) pairs; `path` holds the assignment of
  // the node being expanded.
  std::vector<std::pair<int, Fe>> stack;
  std::vector<Fe> path;
  path.reserve(n);

  auto expand = [&](int depth) {
    UniPoly eq = SubstitutePrefix(field, psi.psis[depth], path, depth);
    eq.coeffs[0] = field.Sub(eq.coeffs[0], u[depth]);
    const std::vector<Fe> roots = RootsInSubrange(field, eq, p, limits.roots);
    // Push in reverse so the smallest root is explored first.
    for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
      stack.emplace_back(depth, *it);
    }
    result.max_frontier = std::max<uint64_t>(result.max_frontier, stack.size());
  };

  result.nodes_visited = 1;
  expand(0);
  while (!stack.empty()) {
    auto [depth, value] = stack.back();
    stack.pop_back();
    if (++result.nodes_visited > limits.max_nodes) {
      throw Error(ErrorCode::kSearchLimitExceeded,
                  "visited more than " + std::to_string(limits.max_nodes) +
                      " search nodes");
    }
    path.resize(depth);
    path.push_back(value);
    if (depth + 1 == n) {
      KeyVector key(n);
      for (int i = 0; i < n; ++i) key[i] = static_cast<uint64_t>(path[i].v);
      result.solutions.push_back(std::move(key));
      if (limits.max_candidates != 0 &&
          result.solutions.size() > limits.max_candidates) {
        result.truncated = true;
        break;
      }
      continue;
    }
    expand(depth + 1);
  }
  std::sort(result.solutions.begin(), result.solutions.end());
  return result;
}

CandidateSet FilterCandidates(const PrimeField& field, CandidateSet candidates,
                              const PolyMap& f) {
  std::erase_if(candidates.solutions, [&](const KeyVector& s) {
    const std::vector<Fe> point = ToField(s);
    for (const Poly& fi : f) {
      if (Evaluate(field, fi, point).v != 0) return true;
    }
    return false;
  });
  return candidates;
}

uint64_t SaturatingPower(uint64_t p, int n, uint64_t cap) {
  uint64_t acc = 1;
  for (int i = 0; i < n; ++i) {
    if (p != 0 && acc > cap / p) return cap + 1;
    acc *= p;
  }
  return acc > cap ? cap + 1 : acc;
}

std::vector<KeyVector> BruteForceOracle(const PrimeField& field,
                                        const PolyMap& psi, const PolyMap& f,
                                        std::span<const Fe> u, uint64_t p) {
  const int n = static_cast<int>(psi.size());
  if (SaturatingPower(p, n, kOracleMaxPoints) > kOracleMaxPoints) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "p^n exceeds " + std::to_string(kOracleMaxPoints) + " points");
  }
  if (u.size() != psi.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "target length mismatch");
  }
  std::vector<KeyVector> found;
  KeyVector s(n, 0);
  std::vector<Fe> point(n);
  while (true) {
    for (int i = 0; i < n; ++i) point[i] = Fe{s[i]};
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      ok = Evaluate(field, psi[i], point) == u[i];
    }
    for (size_t i = 0; i < f.size() && ok; ++i) {
      ok = Evaluate(field, f[i], point).v == 0;
    }
    if (ok) found.push_back(s);
    // Odometer increment, last coordinate fastest (lexicographic order).
    int pos = n - 1;
    while (pos >= 0 && ++s[pos] == p) s[pos--] = 0;
    if (pos < 0) break;
  }
  return found;
}

}  // namespace mpkex
