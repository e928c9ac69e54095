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

#include "mpkex/mpoly.h"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "mpkex/errors.h"

namespace mpkex {

uint64_t Binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 result = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > ~uint64_t{0}) {
      throw Error(ErrorCode::kInvalidParams, "binomial coefficient overflow");
    }
  }
  return static_cast<uint64_t>(result);
}

namespace {

// Dense coefficient vectors beyond this many entries are refused.
constexpr uint64_t kMaxMonomials = uint64_t{1} << 24;

}  // namespace

struct MonomialOrder::Tables {
  int n = 0;
  int d = 0;
  std::vector<uint8_t> exps;  // size() x n, row-major
  std::vector<int> degree;
  std::vector<int> max_var;
  std::vector<size_t> parent;
  std::vector<int> step_var;
  std::vector<size_t> degree_start;  // first rank of each total degree

  size_t size() const { return degree.size(); }
  const uint8_t* row(size_t r) const { return exps.data() + r * n; }

  size_t Rank(std::span<const int> e) const {
    int total = 0;
    for (int x : e) total += x;
    size_t rank = degree_start[total];
    int remaining = total;
    for (int i = 0; i + 1 < n; ++i) {
      const int vars_left = n - i - 1;
      for (int v = 0; v < e[i]; ++v) {
        const int deg = remaining - v;
        rank += Binomial(deg + vars_left - 1, vars_left - 1);
      }
      remaining -= e[i];
    }
    return rank;
  }
};

namespace {

void EmitDegree(int n, int var, int remaining, std::vector<uint8_t>& current,
                std::vector<uint8_t>& out) {
  if (var == n - 1) {
    current[var] = static_cast<uint8_t>(remaining);
    out.insert(out.end(), current.begin(), current.end());
    current[var] = 0;
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    current[var] = static_cast<uint8_t>(e);
    EmitDegree(n, var + 1, remaining - e, current, out);
  }
  current[var] = 0;
}

std::shared_ptr<const MonomialOrder::Tables> BuildTables(int n, int d) {
  auto t = std::make_shared<MonomialOrder::Tables>();
  t->n = n;
  t->d = d;
  std::vector<uint8_t> current(n, 0);
  for (int k = 0; k <= d; ++k) {
    t->degree_start.push_back(t->exps.size() / n);
    EmitDegree(n, 0, k, current, t->exps);
  }
  t->degree_start.push_back(t->exps.size() / n);
  const size_t count = t->exps.size() / n;
  t->degree.resize(count);
  t->max_var.resize(count);
  t->parent.resize(count);
  t->step_var.resize(count);
  std::vector<int> e(n);
  for (size_t r = 0; r < count; ++r) {
    const uint8_t* row = t->row(r);
    int total = 0;
    int max_var = -1;
    int first = -1;
    for (int i = 0; i < n; ++i) {
      e[i] = row[i];
      total += row[i];
      if (row[i] != 0) {
        max_var = i;
        if (first < 0) first = i;
      }
    }
    t->degree[r] = total;
    t->max_var[r] = max_var;
    if (first >= 0) {
      e[first] -= 1;
      t->parent[r] = t->Rank(e);
      t->step_var[r] = first;
    } else {
      t->parent[r] = 0;
      t->step_var[r] = -1;
    }
  }
  return t;
}

std::shared_ptr<const MonomialOrder::Tables> CachedTables(int n, int d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialOrder::Tables>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, d}];
  if (!slot) slot = BuildTables(n, d);
  return slot;
}

}  // namespace

MonomialOrder::MonomialOrder(int num_vars, int max_degree)
    : n_(num_vars), d_(max_degree) {
  if (num_vars < 1 || num_vars > 0xffff || max_degree < 0 ||
      max_degree > 0xff) {
    throw Error(ErrorCode::kInvalidParams,
                "monomial order needs 1 <= n <= 65535 and 0 <= D <= 255");
  }
  if (Binomial(static_cast<uint64_t>(n_) + d_, d_) > kMaxMonomials) {
    throw Error(ErrorCode::kInvalidParams,
                "too many monomials for a dense polynomial");
  }
  tables_ = CachedTables(n_, d_);
}

size_t MonomialOrder::size() const { return tables_->size(); }

size_t MonomialOrder::Rank(std::span<const int> exponents) const {
  if (exponents.size() != static_cast<size_t>(n_)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "exponent vector has length " +
                    std::to_string(exponents.size()) + ", expected " +
                    std::to_string(n_));
  }
  int total = 0;
  for (int x : exponents) {
    if (x < 0) throw Error(ErrorCode::kDegreeOverflow, "negative exponent");
    total += x;
  }
  if (total > d_) {
    throw Error(ErrorCode::kDegreeOverflow,
                "total degree " + std::to_string(total) + " exceeds " +
                    std::to_string(d_));
  }
  return tables_->Rank(exponents);
}

std::vector<int> MonomialOrder::Unrank(size_t rank) const {
  if (rank >= size()) {
    throw Error(ErrorCode::kDegreeOverflow, "rank out of range");
  }
  const uint8_t* row = tables_->row(rank);
  return std::vector<int>(row, row + n_);
}

int MonomialOrder::Degree(size_t rank) const { return tables_->degree[rank]; }

int MonomialOrder::Exponent(size_t rank, int var) const {
  return tables_->row(rank)[var];
}

int MonomialOrder::MaxVar(size_t rank) const { return tables_->max_var[rank]; }

size_t MonomialOrder::Parent(size_t rank) const {
  return tables_->parent[rank];
}

int MonomialOrder::StepVar(size_t rank) const {
  return tables_->step_var[rank];
}

size_t MonomialOrder::PurePowerRank(int var, int power) const {
  std::vector<int> e(n_, 0);
  e[var] = power;
  return Rank(e);
}

int Poly::degree() const {
  int deg = -1;
  for (size_t r = 0; r < coeffs.size(); ++r) {
    if (coeffs[r].v != 0) deg = std::max(deg, order.Degree(r));
  }
  return deg;
}

int Poly::MaxVar() const {
  int max_var = -1;
  for (size_t r = 0; r < coeffs.size(); ++r) {
    if (coeffs[r].v != 0) max_var = std::max(max_var, order.MaxVar(r));
  }
  return max_var;
}

Fe Evaluate(const PrimeField& field, const Poly& f,
            std::span<const Fe> point) {
  const MonomialOrder& order = f.order;
  if (point.size() != static_cast<size_t>(order.num_vars())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point has " + std::to_string(point.size()) +
                    " coordinates, polynomial has " +
                    std::to_string(order.num_vars()) + " variables");
  }
  std::vector<Fe> monomial(order.size());
  monomial[0] = field.One();
  Fe acc = f.coeffs[0];
  for (size_t r = 1; r < monomial.size(); ++r) {
    monomial[r] = field.Mul(monomial[order.Parent(r)], point[order.StepVar(r)]);
    if (f.coeffs[r].v != 0) {
      acc = field.Add(acc, field.Mul(f.coeffs[r], monomial[r]));
    }
  }
  return acc;
}

std::vector<Fe> Evaluate(const PrimeField& field, const PolyMap& map,
                         std::span<const Fe> point) {
  std::vector<Fe> out;
  out.reserve(map.size());
  for (const Poly& f : map) out.push_back(Evaluate(field, f, point));
  return out;
}

namespace {

void RequireSameOrder(const Poly& a, const Poly& b) {
  if (!(a.order == b.order)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "polynomials live in different monomial orders");
  }
}

}  // namespace

Poly Add(const PrimeField& field, const Poly& a, const Poly& b) {
  RequireSameOrder(a, b);
  Poly out(a.order);
  for (size_t r = 0; r < out.coeffs.size(); ++r) {
    out.coeffs[r] = field.Add(a.coeffs[r], b.coeffs[r]);
  }
  return out;
}

Poly Sub(const PrimeField& field, const Poly& a, const Poly& b) {
  RequireSameOrder(a, b);
  Poly out(a.order);
  for (size_t r = 0; r < out.coeffs.size(); ++r) {
    out.coeffs[r] = field.Sub(a.coeffs[r], b.coeffs[r]);
  }
  return out;
}

Poly Mul(const PrimeField& field, const Poly& a, const Poly& b,
         const MonomialOrder& out) {
  const int n = out.num_vars();
  if (a.num_vars() != n || b.num_vars() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "factors and product must share the variable count");
  }
  Poly product(out);
  const int da = a.degree();
  const int db = b.degree();
  if (da < 0 || db < 0) return product;
  if (da + db > out.max_degree()) {
    throw Error(ErrorCode::kDegreeOverflow,
                "product degree " + std::to_string(da + db) + " exceeds " +
                    std::to_string(out.max_degree()));
  }
  std::vector<int> e(n);
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i].v == 0) continue;
    for (size_t j = 0; j < b.coeffs.size(); ++j) {
      if (b.coeffs[j].v == 0) continue;
      for (int v = 0; v < n; ++v) {
        e[v] = a.order.Exponent(i, v) + b.order.Exponent(j, v);
      }
      Fe& slot = product.coeffs[out.Rank(e)];
      slot = field.Add(slot, field.Mul(a.coeffs[i], b.coeffs[j]));
    }
  }
  return product;
}

Poly Embed(const Poly& f, const MonomialOrder& target) {
  if (f.num_vars() != target.num_vars()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "embedding needs equal variable counts");
  }
  Poly out(target);
  for (size_t r = 0; r < f.coeffs.size(); ++r) {
    if (f.coeffs[r].v == 0) continue;
    if (f.order.Degree(r) > target.max_degree()) {
      throw Error(ErrorCode::kDegreeOverflow,
                  "polynomial degree exceeds target order");
    }
    out.coeffs[target.Rank(f.order.Unrank(r))] = f.coeffs[r];
  }
  return out;
}

Poly RandomPoly(const PrimeField& field, const MonomialOrder& order, int degree,
                Rng& rng, RandomConstraint constraint, int support) {
  if (degree < 0 || degree > order.max_degree()) {
    throw Error(ErrorCode::kDegreeOverflow,
                "requested degree " + std::to_string(degree) +
                    " outside [0, " + std::to_string(order.max_degree()) + "]");
  }
  if (support < 0) support = order.num_vars();
  auto active = [&](size_t r) {
    return order.Degree(r) <= degree && order.MaxVar(r) < support;
  };
  Poly f(order);
  for (size_t r = 0; r < f.coeffs.size(); ++r) {
    if (active(r)) f.coeffs[r] = rng.UniformFe(field);
  }

  using Kind = RandomConstraint::Kind;
  auto resample_until_nonzero = [&](auto selects) {
    while (true) {
      for (size_t r = 0; r < f.coeffs.size(); ++r) {
        if (active(r) && selects(r) && f.coeffs[r].v != 0) return;
      }
      for (size_t r = 0; r < f.coeffs.size(); ++r) {
        if (active(r) && selects(r)) f.coeffs[r] = rng.UniformFe(field);
      }
    }
  };
  switch (constraint.kind) {
    case Kind::kAny:
      break;
    case Kind::kNonconstant:
      if (degree >= 1 && support > 0) {
        resample_until_nonzero([&](size_t r) { return order.Degree(r) >= 1; });
      }
      break;
    case Kind::kExactDegree:
      if (degree == 0 || support > 0) {
        resample_until_nonzero(
            [&](size_t r) { return order.Degree(r) == degree; });
      }
      break;
    case Kind::kTopCoeffNonzero: {
      if (constraint.var < 0 || constraint.var >= support) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "top-coefficient variable outside the support");
      }
      const size_t r = order.PurePowerRank(constraint.var, degree);
      if (f.coeffs[r].v == 0) f.coeffs[r] = rng.UniformNonzeroFe(field);
      break;
    }
  }
  return f;
}

UniPoly SubstitutePrefix(const PrimeField& field, const Poly& f,
                         std::span<const Fe> values, int k) {
  const MonomialOrder& order = f.order;
  if (k < 0 || k >= order.num_vars() ||
      values.size() != static_cast<size_t>(k)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "prefix of length " + std::to_string(values.size()) +
                    " for variable index " + std::to_string(k));
  }
  UniPoly out;
  out.coeffs.assign(order.max_degree() + 1, field.Zero());
  // prefix[r] = product of the x_0..x_{k-1} factors of monomial r.
  std::vector<Fe> prefix(order.size());
  prefix[0] = field.One();
  if (f.coeffs[0].v != 0) out.coeffs[0] = f.coeffs[0];
  for (size_t r = 1; r < prefix.size(); ++r) {
    if (order.MaxVar(r) > k) {
      if (f.coeffs[r].v != 0) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "polynomial involves variables beyond x_" +
                        std::to_string(k));
      }
      continue;
    }
    const int var = order.StepVar(r);
    prefix[r] = var < k ? field.Mul(prefix[order.Parent(r)], values[var])
                        : prefix[order.Parent(r)];
    if (f.coeffs[r].v != 0) {
      Fe& slot = out.coeffs[order.Exponent(r, k)];
      slot = field.Add(slot, field.Mul(f.coeffs[r], prefix[r]));
    }
  }
  return out;
}

void AppendCoefficients(const PrimeField& field, const Poly& f,
                        std::vector<uint8_t>& out) {
  const size_t w = field.element_bytes();
  const size_t start = out.size();
  out.resize(start + f.coeffs.size() * w);
  for (size_t r = 0; r < f.coeffs.size(); ++r) {
    field.Encode(f.coeffs[r], std::span<uint8_t>(out).subspan(start + r * w, w));
  }
}

Poly ReadCoefficients(const PrimeField& field, const MonomialOrder& order,
                      std::span<const uint8_t> bytes) {
  const size_t w = field.element_bytes();
  if (bytes.size() != order.size() * w) {
    throw Error(ErrorCode::kLengthMismatch,
                "coefficient block has " + std::to_string(bytes.size()) +
                    " bytes, expected " + std::to_string(order.size() * w));
  }
  Poly f(order);
  for (size_t r = 0; r < f.coeffs.size(); ++r) {
    auto fe = field.Decode(bytes.subspan(r * w, w));
    if (!fe) {
      throw Error(ErrorCode::kElementOutOfRange,
                  "coefficient " + std::to_string(r) + " is not below q");
    }
    f.coeffs[r] = *fe;
  }
  return f;
}

std::vector<uint8_t> SerializePoly(const PrimeField& field, const Poly& f) {
  std::vector<uint8_t> out;
  const int n = f.num_vars();
  out.push_back(static_cast<uint8_t>(n >> 8));
  out.push_back(static_cast<uint8_t>(n & 0xff));
  out.push_back(static_cast<uint8_t>(f.order.max_degree()));
  AppendCoefficients(field, f, out);
  return out;
}

Poly DeserializePoly(const PrimeField& field, std::span<const uint8_t> bytes) {
  if (bytes.size() < 3) {
    throw Error(ErrorCode::kTruncatedFrame, "polynomial header truncated");
  }
  const int n = (bytes[0] << 8) | bytes[1];
  const int d = bytes[2];
  if (n == 0) throw Error(ErrorCode::kMalformedMessage, "zero variables");
  MonomialOrder order(n, d);
  const size_t expected = order.size() * field.element_bytes();
  if (bytes.size() - 3 < expected) {
    throw Error(ErrorCode::kTruncatedFrame, "polynomial body truncated");
  }
  if (bytes.size() - 3 > expected) {
    throw Error(ErrorCode::kLengthMismatch, "trailing bytes after polynomial");
  }
  return ReadCoefficients(field, order, bytes.subspan(3));
}

}  // namespace mpkex
