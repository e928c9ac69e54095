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

#include "cli.h"

#include <CLI11.hpp>
#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "mpkex/analysis.h"
#include "mpkex/errors.h"
#include "mpkex/protocol.h"
#include "mpkex/transport.h"
#include "mpkex/wire.h"

namespace mpkex::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Config {
  std::string q = U128ToString(Params::Proposed().q);
  uint64_t p = Params::Proposed().p;
  int n = Params::Proposed().n;
  int m = Params::Proposed().m;
  int d = Params::Proposed().d;
  int l = Params::Proposed().l;
  uint64_t seed = 1;
  uint64_t trials = 1000;
  bool oracle_check = false;
  int threads = 0;
  int max_restarts = 20;
  bool reveal_key = false;
  std::string format = "table";
  std::string variant = "proposed";
  double omega = kDefaultOmega;
  double confidence = 0.999;
  std::vector<int> sweep_l;
  std::vector<std::string> sweep_q;
  std::string address = "127.0.0.1:7878";

  Params ToParams() const { return Params{ParseU128(q), p, n, m, d, l}; }
  bool records() const { return format == "records"; }
};

Json ParamsJson(const Params& p) {
  return Json{{"q", U128ToString(p.q)}, {"p", p.p}, {"n", p.n},
              {"m", p.m},               {"d", p.d}, {"l", p.l}};
}

std::string Sci(double value, int digits = 3) {
  if (value == 0) return "0";
  return FormatScientific(std::log10(value), digits);
}

std::string JoinKey(const KeyVector& key) {
  std::string s;
  for (size_t i = 0; i < key.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(key[i]);
  }
  return s;
}

// Writes one record, either as a JSON line or as "key: value" lines.
void Emit(std::ostream& out, const Config& cfg, const Json& record) {
  if (cfg.records()) {
    out << record.dump() << '\n';
    return;
  }
  for (const auto& [key, value] : record.items()) {
    out << std::left << std::setw(22) << key << ' ';
    if (value.is_string()) {
      out << value.get<std::string>();
    } else if (key == "params") {
      out << Params{ParseU128(value["q"].get<std::string>()),
                    value["p"].get<uint64_t>(), value["n"].get<int>(),
                    value["m"].get<int>(),      value["d"].get<int>(),
                    value["l"].get<int>()}
                 .ToString();
    } else {
      out << value.dump();
    }
    out << '\n';
  }
  out << '\n';
}

Json Header(const char* record, const Params& params, uint64_t seed) {
  return Json{{"record", record}, {"params", ParamsJson(params)}, {"seed", seed}};
}

Json BoundJson(const Params& params, uint64_t seed) {
  const FailureBoundBreakdown b = FailureBound(params);
  Json j = Header("bound", params, seed);
  j["alpha"] = b.alpha;
  j["expected_incorrect"] = Sci(b.expected_incorrect);
  j["bound"] = FormatScientific(b.log10_bound, 3);
  j["log10_bound"] = b.log10_bound;
  j["in_regime"] = params.InBoundRegime();
  j["valid"] = b.valid;
  return j;
}

int CmdBound(const Config& cfg, std::ostream& out) {
  const Params params = cfg.ToParams();
  params.Validate();
  Emit(out, cfg, BoundJson(params, cfg.seed));
  return kExitOk;
}

int CmdCommsize(const Config& cfg, std::ostream& out) {
  const Params params = cfg.ToParams();
  if (params.q < 2 || params.n < 1 || params.d < 1 || params.d >= params.m ||
      params.l < 1) {
    throw Error(ErrorCode::kInvalidParams, "need q >= 2, n >= 1, 1 <= d < m, l >= 1");
  }
  CostVariant variant;
  if (cfg.variant == "proposed") {
    variant = CostVariant::kProposed;
  } else if (cfg.variant == "akiyama") {
    variant = CostVariant::kAkiyama;
  } else {
    throw Error(ErrorCode::kInvalidParams, "unknown variant " + cfg.variant);
  }
  const CommCost c = ComputeCommCost(params, variant);
  Json j = Header("commsize", params, cfg.seed);
  j["variant"] = cfg.variant;
  j["elements_f"] = c.elements_f;
  j["elements_g"] = c.elements_g;
  j["elements_c"] = c.elements_c;
  j["elements_u"] = c.elements_u;
  j["total_elements"] = c.total_elements;
  j["total_bits"] = c.total_bits;
  j["total_bits_sci"] = Sci(c.total_bits);
  if (variant == CostVariant::kProposed && IsPrime(params.q) &&
      u128{params.p} < params.q && params.p > 1) {
    const Context ctx(params);
    uint64_t wire = 0;
    for (MsgType t : {MsgType::kF, MsgType::kC, MsgType::kU}) {
      wire += kFrameHeaderBytes + ExpectedPayloadBytes(ctx, t);
    }
    j["element_bytes"] = ctx.field().element_bytes();
    j["wire_bytes"] = wire;
  }
  Emit(out, cfg, j);
  return kExitOk;
}

int CmdSecurity(const Config& cfg, std::ostream& out) {
  const Params params = cfg.ToParams();
  params.Validate();
  const SecurityEstimate s = EstimateSecurity(params, cfg.omega);
  const double to10 = std::log10(2.0);
  Json j = Header("security", params, cfg.seed);
  j["omega"] = s.omega;
  j["d_reg"] = s.d_reg;
  j["groebner_log2"] = s.groebner_log2;
  j["groebner_cost"] = FormatScientific(s.groebner_log2 * to10, 3);
  j["solution_dim"] = s.solution_dim;
  j["linalg_log2"] = s.linalg_log2;
  j["linalg_cost"] = FormatScientific(s.linalg_log2 * to10, 3);
  j["exhaustive_log2"] = s.exhaustive_log2;
  j["exhaustive_cost"] = FormatScientific(s.exhaustive_log2 * to10, 3);
  j["all_above_128"] = s.AllAbove(128);
  Emit(out, cfg, j);
  return kExitOk;
}

Json AttemptBytes(const Context& ctx) {
  return Json{{"f", kFrameHeaderBytes + ExpectedPayloadBytes(ctx, MsgType::kF)},
              {"c", kFrameHeaderBytes + ExpectedPayloadBytes(ctx, MsgType::kC)},
              {"u", kFrameHeaderBytes + ExpectedPayloadBytes(ctx, MsgType::kU)},
              {"result",
               kFrameHeaderBytes + ExpectedPayloadBytes(ctx, MsgType::kResult)}};
}

uint64_t AttemptTotal(const Json& bytes) {
  uint64_t total = 0;
  for (const auto& [k, v] : bytes.items()) total += v.get<uint64_t>();
  return total;
}

void AddKey(Json& j, const Config& cfg, const KeyVector& key) {
  j["key_digest"] = KeyDigest(key, cfg.p);
  if (cfg.reveal_key) j["key"] = JoinKey(key);
}

int CmdRun(const Config& cfg, std::ostream& out) {
  const Context ctx(cfg.ToParams());
  const Json bytes = AttemptBytes(ctx);
  Json j = Header("run", ctx.params(), cfg.seed);
  try {
    const SessionResult r = RunSession(ctx, cfg.seed, cfg.max_restarts);
    j["outcome"] = "success";
    j["attempts"] = r.attempts.size();
    j["rounds"] = r.rounds();
    AddKey(j, cfg, r.key);
    j["bytes_per_message"] = bytes;
    j["bytes_total"] = AttemptTotal(bytes) * r.attempts.size();
    Emit(out, cfg, j);
    return kExitOk;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kExhaustedRestarts) throw;
    j["outcome"] = "exhausted";
    j["attempts"] = cfg.max_restarts;
    j["rounds"] = 2 * cfg.max_restarts;
    j["bytes_per_message"] = bytes;
    j["bytes_total"] = AttemptTotal(bytes) * cfg.max_restarts;
    j["error"] = e.what();
    Emit(out, cfg, j);
    return kExitExhausted;
  }
}

Json MonteCarloJson(const Params& params, const Config& cfg) {
  MonteCarloOptions o;
  o.trials = cfg.trials;
  o.seed = cfg.seed;
  o.oracle_check = cfg.oracle_check;
  o.threads = cfg.threads;
  const TrialStats s = MonteCarlo(params, o);
  const Interval ci = ClopperPearson(s.successes, s.trials, cfg.confidence);
  const FailureBoundBreakdown b = FailureBound(params);
  Json j = Header("montecarlo", params, cfg.seed);
  j["trials"] = s.trials;
  j["successes"] = s.successes;
  j["failures"] = s.failures;
  j["failure_ratio"] = s.failure_ratio();
  j["success_ratio"] = 1.0 - s.failure_ratio();
  j["confidence"] = cfg.confidence;
  j["success_ci"] = Json::array({ci.lo, ci.hi});
  j["bound"] = FormatScientific(b.log10_bound, 3);
  j["in_regime"] = params.InBoundRegime();
  Json hist = Json::object();
  for (const auto& [x, count] : s.incorrect_candidate_histogram) {
    hist[std::to_string(x)] = count;
  }
  j["incorrect_candidates"] = hist;
  j["mean_nodes_visited"] = s.mean_nodes_visited();
  j["mean_preimage_size"] = s.mean_preimage_size();
  j["search_aborts"] = s.search_aborts;
  j["oracle_check"] = cfg.oracle_check;
  j["oracle_mismatches"] = s.oracle_mismatches;
  j["wrong_keys"] = s.wrong_keys;
  return j;
}

int CmdMonteCarlo(const Config& cfg, std::ostream& out) {
  if (cfg.trials == 0) throw Error(ErrorCode::kInvalidParams, "trials must be >= 1");
  if (!(cfg.confidence > 0 && cfg.confidence < 1)) {
    throw Error(ErrorCode::kInvalidParams, "confidence must lie in (0, 1)");
  }
  std::vector<Params> sweep;
  const Params base = cfg.ToParams();
  std::vector<std::string> qs = cfg.sweep_q;
  if (qs.empty()) qs.push_back(cfg.q);
  std::vector<int> ls = cfg.sweep_l;
  if (ls.empty()) ls.push_back(cfg.l);
  for (const std::string& q : qs) {
    for (int l : ls) {
      Params p = base;
      p.q = ParseU128(q);
      p.l = l;
      p.Validate();
      sweep.push_back(p);
    }
  }
  std::vector<Json> rows;
  for (const Params& p : sweep) rows.push_back(MonteCarloJson(p, cfg));
  if (cfg.records() || rows.size() == 1) {
    for (const Json& r : rows) Emit(out, cfg, r);
    return kExitOk;
  }
  out << "montecarlo seed=" << cfg.seed << " trials=" << cfg.trials
      << " confidence=" << cfg.confidence << '\n';
  out << std::left << std::setw(24) << "q" << std::setw(5) << "p"
      << std::setw(4) << "n" << std::setw(3) << "m" << std::setw(3) << "d"
      << std::setw(4) << "l" << std::setw(10) << "successes" << std::setw(10)
      << "failures" << std::setw(22) << "success_ci" << "bound\n";
  for (const Json& r : rows) {
    const Json& p = r["params"];
    std::ostringstream ci;
    ci << std::fixed << std::setprecision(4) << '[' << r["success_ci"][0].get<double>()
       << ", " << r["success_ci"][1].get<double>() << ']';
    out << std::left << std::setw(24) << p["q"].get<std::string>() << std::setw(5)
        << p["p"].get<uint64_t>() << std::setw(4) << p["n"].get<int>()
        << std::setw(3) << p["m"].get<int>() << std::setw(3) << p["d"].get<int>()
        << std::setw(4) << p["l"].get<int>() << std::setw(10)
        << r["successes"].get<uint64_t>() << std::setw(10)
        << r["failures"].get<uint64_t>() << std::setw(22) << ci.str()
        << r["bound"].get<std::string>() << '\n';
  }
  return kExitOk;
}

// Bob's side: one connection per attempt, until a key is agreed.
int CmdServe(const Config& cfg, std::ostream& out) {
  const Context ctx(cfg.ToParams());
  const auto [host, port] = ParseHostPort(cfg.address);
  TcpListener listener(host, port);
  if (!cfg.records()) out << "listening on " << host << ':' << listener.port() << '\n';
  out.flush();
  for (int round = 0; round < cfg.max_restarts; ++round) {
    auto conn = listener.Accept();
    const StreamSession s = SessionOverStream(Role::kBob, *conn, ctx, cfg.seed, round);
    Json j = Header("serve", ctx.params(), cfg.seed);
    j["round"] = round;
    j["transcript_bytes"] = s.transcript_bytes.size();
    if (s.transcript.outcome.success) {
      j["outcome"] = "success";
      AddKey(j, cfg, s.transcript.outcome.key);
      Emit(out, cfg, j);
      return kExitOk;
    }
    j["outcome"] = "restart";
    j["diagnostic"] = s.transcript.outcome.diagnostic;
    Emit(out, cfg, j);
  }
  return kExitExhausted;
}

int CmdConnect(const Config& cfg, std::ostream& out) {
  const Context ctx(cfg.ToParams());
  const auto [host, port] = ParseHostPort(cfg.address);
  for (int round = 0; round < cfg.max_restarts; ++round) {
    auto conn = TcpStream::Connect(host, port);
    const StreamSession s =
        SessionOverStream(Role::kAlice, *conn, ctx, cfg.seed, round);
    Json j = Header("connect", ctx.params(), cfg.seed);
    j["round"] = round;
    j["transcript_bytes"] = s.transcript_bytes.size();
    if (s.transcript.outcome.success) {
      j["outcome"] = "success";
      AddKey(j, cfg, s.transcript.alice_key);
      Emit(out, cfg, j);
      return kExitOk;
    }
    j["outcome"] = "restart";
    Emit(out, cfg, j);
  }
  return kExitExhausted;
}

void AddParamOptions(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--q", cfg.q, "field modulus (decimal)")->capture_default_str();
  cmd->add_option("--p", cfg.p, "key subrange Z_p")->capture_default_str();
  cmd->add_option("--n", cfg.n, "number of variables")->capture_default_str();
  cmd->add_option("--m", cfg.m, "degree of the central map")->capture_default_str();
  cmd->add_option("--d", cfg.d, "degree of Alice's equations")->capture_default_str();
  cmd->add_option("--l", cfg.l, "number of Alice's equations")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "root seed")->capture_default_str();
  cmd->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"table", "records"}))
      ->capture_default_str();
}

int Dispatch(const std::function<int()>& fn, std::ostream& err) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::kExhaustedRestarts:
        return kExitExhausted;
      case ErrorCode::kInvalidParams:
      case ErrorCode::kInvalidSubrange:
      case ErrorCode::kOracleTooLarge:
        return kExitInvalid;
      default:
        // Transport failures and anything the peer sent that did not parse.
        return kExitTransport;
    }
  }
}

}  // namespace

int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err) {
  Config cfg;
  CLI::App app{"Multivariate polynomial key exchange over a Z_p-restricted key space",
               "mpkex"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one exchange in-process (with restarts)");
  AddParamOptions(run, cfg);
  run->add_option("--max-restarts", cfg.max_restarts, "attempts before giving up")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_flag("--reveal-key", cfg.reveal_key, "print the raw key");

  auto* mc = app.add_subcommand("montecarlo", "single-attempt success statistics");
  AddParamOptions(mc, cfg);
  mc->add_option("--trials", cfg.trials)->capture_default_str();
  mc->add_flag("--oracle-check", cfg.oracle_check,
               "cross-check every trial against exhaustive search");
  mc->add_option("--threads", cfg.threads, "0 = all cores")->capture_default_str();
  mc->add_option("--confidence", cfg.confidence, "Clopper-Pearson level")
      ->capture_default_str();
  mc->add_option("--sweep-l", cfg.sweep_l, "comma separated l values")->delimiter(',');
  mc->add_option("--sweep-q", cfg.sweep_q, "comma separated q values")->delimiter(',');

  auto* bound = app.add_subcommand("bound", "failure probability bound");
  AddParamOptions(bound, cfg);

  auto* comm = app.add_subcommand("commsize", "communication cost");
  AddParamOptions(comm, cfg);
  comm->add_option("--variant", cfg.variant)
      ->check(CLI::IsMember({"proposed", "akiyama"}))
      ->capture_default_str();

  auto* sec = app.add_subcommand("security", "attack cost estimates");
  AddParamOptions(sec, cfg);
  sec->add_option("--omega", cfg.omega, "linear algebra exponent")->capture_default_str();

  auto* serve = app.add_subcommand("serve", "act as Bob on a TCP listener");
  AddParamOptions(serve, cfg);
  serve->add_option("--listen", cfg.address, "host:port")->capture_default_str();
  serve->add_option("--max-restarts", cfg.max_restarts)->capture_default_str()
      ->check(CLI::PositiveNumber);
  serve->add_flag("--reveal-key", cfg.reveal_key);

  auto* connect = app.add_subcommand("connect", "act as Alice against a server");
  AddParamOptions(connect, cfg);
  connect->add_option("--connect", cfg.address, "host:port")->capture_default_str();
  connect->add_option("--max-restarts", cfg.max_restarts)->capture_default_str()
      ->check(CLI::PositiveNumber);
  connect->add_flag("--reveal-key", cfg.reveal_key);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  return Dispatch(
      [&]() -> int {
        if (*run) return CmdRun(cfg, out);
        if (*mc) return CmdMonteCarlo(cfg, out);
        if (*bound) return CmdBound(cfg, out);
        if (*comm) return CmdCommsize(cfg, out);
        if (*sec) return CmdSecurity(cfg, out);
        if (*serve) return CmdServe(cfg, out);
        return CmdConnect(cfg, out);
      },
      err);
}

}  // namespace mpkex::cli
