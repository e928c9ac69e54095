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

#include "mpkex/analysis.h"

#include <algorithm>
#include <atomic>
#include <boost/math/distributions/binomial.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdio>
#include <thread>
#include <vector>

#include "mpkex/errors.h"

namespace mpkex {

namespace mp = boost::multiprecision;
using BigFloat = mp::cpp_bin_float_50;

namespace {

BigFloat ToBigFloat(u128 x) {
  BigFloat hi = static_cast<uint64_t>(x >> 64);
  return mp::ldexp(hi, 64) + BigFloat(static_cast<uint64_t>(x));
}

mp::cpp_int ToBigInt(u128 x) {
  mp::cpp_int v = static_cast<uint64_t>(x >> 64);
  v <<= 64;
  return v + static_cast<uint64_t>(x);
}

double Log2(u128 x) { return mp::log2(ToBigFloat(x)).convert_to<double>(); }

}  // namespace

FailureBoundBreakdown FailureBound(const Params& params) {
  const BigFloat q = ToBigFloat(params.q);
  const BigFloat ratio = BigFloat(params.p) / q;
  const BigFloat alpha = 2 * ratio + ratio * ratio;
  const BigFloat filter = mp::pow(q, -params.l);

  // alpha = 1 exactly iff q^2 = 2pq + p^2; that has no integer solutions,
  // but the limit is kept for completeness.
  const mp::cpp_int big_q = ToBigInt(params.q);
  const mp::cpp_int big_p = params.p;
  BigFloat expected;
  if (big_q * big_q == 2 * big_p * big_q + big_p * big_p) {
    expected = params.n * ratio * filter;
  } else {
    expected = ratio * (1 - mp::pow(alpha, params.n)) / (1 - alpha) * filter;
  }

  FailureBoundBreakdown out;
  out.alpha = alpha.convert_to<double>();
  out.expected_incorrect = expected.convert_to<double>();
  out.bound = out.expected_incorrect;
  out.log10_bound = mp::log10(expected).convert_to<double>();
  out.valid = alpha < 1 && expected <= 1;
  return out;
}

uint64_t MonomialCount(int n, int degree) {
  uint64_t total = 0;
  for (int k = 0; k <= degree; ++k) total += Binomial(k + n - 1, k);
  return total;
}

CommCost ComputeCommCost(const Params& params, CostVariant variant) {
  CommCost cost;
  const uint64_t n = params.n;
  const uint64_t f_size = MonomialCount(params.n, params.d);
  cost.elements_c = n * MonomialCount(params.n, params.m);
  cost.elements_u = n;
  if (variant == CostVariant::kProposed) {
    cost.elements_f = static_cast<uint64_t>(params.l) * f_size;
    cost.elements_g = 0;
  } else {
    cost.elements_f = f_size;
    cost.elements_g = n * n + n;
  }
  cost.total_elements =
      cost.elements_f + cost.elements_g + cost.elements_c + cost.elements_u;
  cost.total_bits = static_cast<double>(cost.total_elements) * Log2(params.q);
  return cost;
}

SecurityEstimate EstimateSecurity(const Params& params, double omega) {
  SecurityEstimate est;
  est.omega = omega;
  // Degree of regularity observed for these ideals (with the field-restriction
  // equations added): n + 1.
  est.d_reg = params.n + 1;
  mp::cpp_int binom = 1;
  const int top = params.n + est.d_reg;
  for (int i = 1; i <= params.n; ++i) {
    binom *= top - params.n + i;
    binom /= i;
  }
  est.groebner_log2 =
      omega * mp::log2(BigFloat(binom)).convert_to<double>();
  est.solution_dim = MonomialCount(params.n, params.m - params.d);
  est.linalg_log2 = static_cast<double>(est.solution_dim) * Log2(params.q);
  est.exhaustive_log2 =
      (params.n - 1) * std::log2(static_cast<double>(params.p));
  return est;
}

void TrialStats::Merge(const TrialStats& other) {
  trials += other.trials;
  successes += other.successes;
  failures += other.failures;
  oracle_mismatches += other.oracle_mismatches;
  wrong_keys += other.wrong_keys;
  search_aborts += other.search_aborts;
  for (const auto& [x, count] : other.incorrect_candidate_histogram) {
    incorrect_candidate_histogram[x] += count;
  }
  total_nodes_visited += other.total_nodes_visited;
  total_preimage_size += other.total_preimage_size;
}

namespace {

TrialStats RunTrial(const Context& ctx, uint64_t seed,
                    const MonteCarloOptions& options) {
  TrialStats stats;
  stats.trials = 1;
  BobState bob;
  const Transcript tr = RunAttempt(ctx, seed, 0, options.limits, &bob);
  const Recovery& rec = tr.outcome;
  if (rec.success) {
    ++stats.successes;
    if (rec.key != tr.alice_key) ++stats.wrong_keys;
  } else {
    ++stats.failures;
  }
  if (rec.search_aborted) {
    ++stats.search_aborts;
  } else {
    // The correct key always survives, so X = survivors - 1.
    stats.incorrect_candidate_histogram[rec.survivors == 0 ? 0
                                                           : rec.survivors - 1] =
        1;
  }
  stats.total_nodes_visited = rec.nodes_visited;
  stats.total_preimage_size = rec.preimage_size;

  if (options.oracle_check) {
    const PrimeField& field = ctx.field();
    SearchLimits unlimited = options.limits;
    unlimited.max_candidates = 0;
    const CandidateSet found = FilterCandidates(
        field, PreimageSearch(field, bob.psi, tr.u_msg, ctx.params().p, unlimited),
        tr.f_msg);
    const std::vector<KeyVector> expected =
        BruteForceOracle(field, bob.psi.psis, tr.f_msg, tr.u_msg, ctx.params().p);
    if (found.solutions != expected) ++stats.oracle_mismatches;
  }
  return stats;
}

}  // namespace

TrialStats MonteCarlo(const Params& params, const MonteCarloOptions& options) {
  const Context ctx(params);
  if (options.oracle_check &&
      SaturatingPower(params.p, params.n, kOracleMaxPoints) > kOracleMaxPoints) {
    throw Error(ErrorCode::kOracleTooLarge,
                "oracle check needs p^n <= " + std::to_string(kOracleMaxPoints));
  }
  int threads = options.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = static_cast<int>(
      std::min<uint64_t>(threads, std::max<uint64_t>(1, options.trials)));

  std::vector<TrialStats> per_trial(options.trials);
  std::atomic<uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    try {
      for (uint64_t i = next++; i < options.trials && !failed; i = next++) {
        per_trial[i] = RunTrial(ctx, DeriveSeed(options.seed, i), options);
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  TrialStats total;
  for (const TrialStats& s : per_trial) total.Merge(s);
  return total;
}

Interval ClopperPearson(uint64_t successes, uint64_t trials,
                        double confidence) {
  using boost::math::binomial_distribution;
  const double alpha = (1 - confidence) / 2;
  const double n = static_cast<double>(trials);
  const double k = static_cast<double>(successes);
  Interval out;
  out.lo = binomial_distribution<>::find_lower_bound_on_p(
      n, k, alpha, binomial_distribution<>::clopper_pearson_exact_interval);
  out.hi = binomial_distribution<>::find_upper_bound_on_p(
      n, k, alpha, binomial_distribution<>::clopper_pearson_exact_interval);
  return out;
}

double BinomialTestPValue(uint64_t successes, uint64_t trials, double p0) {
  boost::math::binomial_distribution<> dist(static_cast<double>(trials), p0);
  const double observed = boost::math::pdf(dist, static_cast<double>(successes));
  // Relative tolerance as in R's binom.test.
  const double threshold = observed * (1 + 1e-7);
  double total = 0;
  for (uint64_t k = 0; k <= trials; ++k) {
    const double pk = boost::math::pdf(dist, static_cast<double>(k));
    if (pk <= threshold) total += pk;
  }
  return std::min(1.0, total);
}

std::string FormatScientific(double log10_value, int digits) {
  if (!std::isfinite(log10_value)) return "0";
  double exponent = std::floor(log10_value);
  double mantissa = std::pow(10.0, log10_value - exponent);
  const double scale = std::pow(10.0, digits - 1);
  mantissa = std::round(mantissa * scale) / scale;
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    exponent += 1;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*fe%d", digits - 1, mantissa,
                static_cast<int>(exponent));
  return buf;
}

}  // namespace mpkex
