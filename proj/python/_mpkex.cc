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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mpkex/analysis.h"
#include "mpkex/errors.h"
#include "mpkex/field.h"
#include "mpkex/protocol.h"
#include "mpkex/wire.h"

namespace py = pybind11;

namespace mpkex {
namespace {

// Python ints of any size travel as decimal strings.
u128 ToU128(const py::int_& value) {
  return ParseU128(py::str(value).cast<std::string>());
}

py::int_ FromU128(u128 value) {
  return py::int_(py::module_::import("builtins").attr("int")(U128ToString(value)));
}

Params MakeParams(const py::int_& q, uint64_t p, int n, int m, int d, int l) {
  return Params{ToU128(q), p, n, m, d, l};
}

py::dict TranscriptDict(const Transcript& t, uint64_t p) {
  py::dict out;
  out["success"] = t.outcome.success;
  out["alice_key"] = t.alice_key;
  out["bob_key"] = t.outcome.key;
  out["key_digest"] = KeyDigest(t.alice_key, p);
  out["preimage_size"] = t.outcome.preimage_size;
  out["survivors"] = t.outcome.survivors;
  out["nodes_visited"] = t.outcome.nodes_visited;
  out["diagnostic"] = t.outcome.diagnostic;
  return out;
}

}  // namespace
}  // namespace mpkex

PYBIND11_MODULE(_mpkex, m) {
  using namespace mpkex;
  m.doc() = "Multivariate polynomial key exchange with keys in Z_p^n.";

  // Messages start with the error code name, e.g. "InvalidParams: ...".
  py::register_exception<Error>(m, "Error");

  py::class_<Params>(m, "Params")
      .def(py::init(&MakeParams), py::arg("q"), py::arg("p"), py::arg("n"),
           py::arg("m"), py::arg("d"), py::arg("l"))
      .def_static("proposed", &Params::Proposed)
      .def_property_readonly("q", [](const Params& s) { return FromU128(s.q); })
      .def_readonly("p", &Params::p)
      .def_readonly("n", &Params::n)
      .def_readonly("m", &Params::m)
      .def_readonly("d", &Params::d)
      .def_readonly("l", &Params::l)
      .def("validate", &Params::Validate)
      .def("in_bound_regime", &Params::InBoundRegime)
      .def("__eq__", [](const Params& a, const Params& b) { return a == b; })
      .def("__repr__", &Params::ToString);

  m.def("is_prime", [](const py::int_& n) { return IsPrime(ToU128(n)); });

  m.def(
      "roots_in_subrange",
      [](const py::int_& q, const std::vector<py::int_>& coeffs, uint64_t p) {
        const PrimeField field(ToU128(q));
        UniPoly poly;
        for (const auto& c : coeffs) poly.coeffs.push_back(field.FromUint(ToU128(c)));
        std::vector<py::int_> out;
        for (Fe r : RootsInSubrange(field, poly, p)) out.push_back(FromU128(r.v));
        return out;
      },
      py::arg("q"), py::arg("coeffs"), py::arg("p"),
      "Roots in {0..p-1}; coeffs[i] multiplies x^i.");

  m.def("failure_bound", [](const Params& params) {
    const FailureBoundBreakdown b = FailureBound(params);
    py::dict out;
    out["alpha"] = b.alpha;
    out["expected_incorrect"] = b.expected_incorrect;
    out["bound"] = b.bound;
    out["log10_bound"] = b.log10_bound;
    out["valid"] = b.valid;
    return out;
  });

  m.def(
      "comm_cost",
      [](const Params& params, const std::string& variant) {
        if (variant != "proposed" && variant != "akiyama") {
          throw Error(ErrorCode::kInvalidParams, "unknown variant " + variant);
        }
        const CommCost c = ComputeCommCost(
            params, variant == "proposed" ? CostVariant::kProposed : CostVariant::kAkiyama);
        py::dict out;
        out["elements_f"] = c.elements_f;
        out["elements_g"] = c.elements_g;
        out["elements_c"] = c.elements_c;
        out["elements_u"] = c.elements_u;
        out["total_elements"] = c.total_elements;
        out["total_bits"] = c.total_bits;
        return out;
      },
      py::arg("params"), py::arg("variant") = "proposed");

  m.def(
      "security_estimate",
      [](const Params& params, double omega) {
        const SecurityEstimate s = EstimateSecurity(params, omega);
        py::dict out;
        out["d_reg"] = s.d_reg;
        out["groebner_log2"] = s.groebner_log2;
        out["solution_dim"] = s.solution_dim;
        out["linalg_log2"] = s.linalg_log2;
        out["exhaustive_log2"] = s.exhaustive_log2;
        out["all_above_128"] = s.AllAbove(128);
        return out;
      },
      py::arg("params"), py::arg("omega") = kDefaultOmega);

  m.def(
      "run_attempt",
      [](const Params& params, uint64_t seed, int round) {
        const Context ctx(params);
        Transcript t;
        {
          py::gil_scoped_release release;
          t = RunAttempt(ctx, seed, round);
        }
        return TranscriptDict(t, params.p);
      },
      py::arg("params"), py::arg("seed"), py::arg("round") = 0);

  m.def(
      "run_session",
      [](const Params& params, uint64_t seed, int max_attempts) {
        const Context ctx(params);
        SessionResult r;
        {
          py::gil_scoped_release release;
          r = RunSession(ctx, seed, max_attempts);
        }
        py::dict out;
        out["attempts"] = r.attempts.size();
        out["rounds"] = r.rounds();
        out["key"] = r.key;
        out["key_digest"] = KeyDigest(r.key, params.p);
        return out;
      },
      py::arg("params"), py::arg("seed"), py::arg("max_attempts") = 20);

  m.def(
      "transcript_bytes",
      [](const Params& params, uint64_t seed, int round) {
        const Context ctx(params);
        const std::vector<uint8_t> bytes = SerializeTranscript(ctx, RunAttempt(ctx, seed, round));
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      },
      py::arg("params"), py::arg("seed"), py::arg("round") = 0,
      "F, C, U and RESULT frames of one attempt, concatenated.");

  m.def(
      "monte_carlo",
      [](const Params& params, uint64_t trials, uint64_t seed, bool oracle_check,
         int threads) {
        MonteCarloOptions o;
        o.trials = trials;
        o.seed = seed;
        o.oracle_check = oracle_check;
        o.threads = threads;
        TrialStats s;
        {
          py::gil_scoped_release release;
          s = MonteCarlo(params, o);
        }
        py::dict out;
        out["trials"] = s.trials;
        out["successes"] = s.successes;
        out["failures"] = s.failures;
        out["failure_ratio"] = s.failure_ratio();
        out["oracle_mismatches"] = s.oracle_mismatches;
        out["wrong_keys"] = s.wrong_keys;
        out["search_aborts"] = s.search_aborts;
        out["incorrect_candidate_histogram"] = s.incorrect_candidate_histogram;
        out["mean_nodes_visited"] = s.mean_nodes_visited();
        return out;
      },
      py::arg("params"), py::arg("trials"), py::arg("seed") = 1,
      py::arg("oracle_check") = false, py::arg("threads") = 0);

  m.def("clopper_pearson", [](uint64_t successes, uint64_t trials, double confidence) {
    const Interval i = ClopperPearson(successes, trials, confidence);
    return py::make_tuple(i.lo, i.hi);
  });
}
