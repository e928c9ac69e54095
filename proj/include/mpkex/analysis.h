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

#ifndef MPKEX_ANALYSIS_H_
#define MPKEX_ANALYSIS_H_

#include <cstdint>
#include <map>
#include <string>

#include "mpkex/protocol.h"
#include "mpkex/solver.h"

namespace mpkex {

// Upper bound on the probability that some incorrect key survives Bob's
// search and filter:
//   Pr[X >= 1] <= E[X] <= (p/q) (1 - alpha^n) / (1 - alpha) q^-l,
//   alpha = 2p/q + (p/q)^2.
// Evaluated with 50 significant decimal digits.
struct FailureBoundBreakdown {
  double alpha = 0;
  double expected_incorrect = 0;
  double bound = 0;
  double log10_bound = 0;
  // alpha < 1 and bound <= 1.
  bool valid = false;
};

FailureBoundBreakdown FailureBound(const Params& params);

// Number of coefficients of a dense polynomial of degree <= degree in n
// variables: sum_{k=0}^{degree} C(k+n-1, k).
uint64_t MonomialCount(int n, int degree);

enum class CostVariant {
  kProposed,
  // The earlier construction: one f, plus the affine map g (n^2 + n
  // elements). p and l are ignored.
  kAkiyama,
};

struct CommCost {
  uint64_t elements_f = 0;
  uint64_t elements_g = 0;
  uint64_t elements_c = 0;
  uint64_t elements_u = 0;
  uint64_t total_elements = 0;
  double total_bits = 0;  // total_elements * log2 q
};

// Only (q, n, m, d, l) are read; no primality requirement.
CommCost ComputeCommCost(const Params& params, CostVariant variant);

inline constexpr double kDefaultOmega = 2.3;

struct SecurityEstimate {
  double omega = kDefaultOmega;
  int d_reg = 0;              // n + 1
  double groebner_log2 = 0;   // omega * log2 C(n + d_reg, n)
  uint64_t solution_dim = 0;  // N = sum_{k<=m-d} C(k+n-1, k)
  double linalg_log2 = 0;     // N * log2 q
  double exhaustive_log2 = 0; // (n - 1) * log2 p

  bool AllAbove(double bits) const {
    return groebner_log2 > bits && linalg_log2 > bits &&
           exhaustive_log2 > bits;
  }
};

SecurityEstimate EstimateSecurity(const Params& params,
                                  double omega = kDefaultOmega);

struct MonteCarloOptions {
  uint64_t trials = 1000;
  uint64_t seed = 1;
  // Cross-check each trial against BruteForceOracle (needs p^n <= 10^6).
  bool oracle_check = false;
  // 0 picks std::thread::hardware_concurrency().
  int threads = 0;
  SearchLimits limits = DefaultBobLimits();
};

struct TrialStats {
  uint64_t trials = 0;
  uint64_t successes = 0;
  uint64_t failures = 0;
  uint64_t oracle_mismatches = 0;
  // Successes whose key differs from Alice's; must stay zero.
  uint64_t wrong_keys = 0;
  uint64_t search_aborts = 0;
  // Incorrect candidates surviving the filter (X) -> number of trials.
  std::map<uint64_t, uint64_t> incorrect_candidate_histogram;
  uint64_t total_nodes_visited = 0;
  uint64_t total_preimage_size = 0;

  double failure_ratio() const {
    return trials == 0 ? 0.0 : static_cast<double>(failures) / trials;
  }
  double mean_nodes_visited() const {
    return trials == 0 ? 0.0 : static_cast<double>(total_nodes_visited) / trials;
  }
  double mean_preimage_size() const {
    return trials == 0 ? 0.0 : static_cast<double>(total_preimage_size) / trials;
  }
  void Merge(const TrialStats& other);
};

// Independent single-attempt executions; trial i uses DeriveSeed(seed, i) as
// its session seed, so results do not depend on the thread count. Throws
// Error(kOracleTooLarge) if oracle_check is requested with p^n > 10^6.
TrialStats MonteCarlo(const Params& params, const MonteCarloOptions& options);

struct Interval {
  double lo = 0;
  double hi = 0;
  bool Contains(double x) const { return lo <= x && x <= hi; }
};

// Exact (Clopper-Pearson) interval for a binomial proportion.
Interval ClopperPearson(uint64_t successes, uint64_t trials,
                        double confidence);
// Two-sided exact binomial test: total probability of outcomes no more likely
// than the observed one under rate p0.
double BinomialTestPValue(uint64_t successes, uint64_t trials, double p0);

// Formats x as a mantissa with `digits` significant figures and a decimal
// exponent, e.g. "8.93e-39". Works from log10 so huge values render too.
std::string FormatScientific(double log10_value, int digits);

}  // namespace mpkex

#endif  // MPKEX_ANALYSIS_H_
