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

#include "mpkex/wire.h"

#include <openssl/sha.h>

#include <algorithm>
#include <string>
#include <utility>

#include "mpkex/errors.h"

namespace mpkex {

namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

void PutU32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 3; i >= 0; --i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

const MonomialOrder& OrderFor(const Context& ctx, MsgType type) {
  return type == MsgType::kF ? ctx.f_order() : ctx.c_order();
}

void AppendMap(const Context& ctx, const PolyMap& map, size_t count,
               const MonomialOrder& order, std::vector<uint8_t>& out) {
  if (map.size() != count) {
    Fail(ErrorCode::kParamMismatch,
         "expected " + std::to_string(count) + " polynomials, got " +
             std::to_string(map.size()));
  }
  for (const Poly& f : map) {
    if (f.num_vars() != order.num_vars() || f.degree() > order.max_degree()) {
      Fail(ErrorCode::kParamMismatch, "polynomial does not fit the params");
    }
    AppendCoefficients(ctx.field(), f.order == order ? f : Embed(f, order),
                       out);
  }
}

PolyMap ReadMap(const Context& ctx, std::span<const uint8_t> payload,
                size_t count, const MonomialOrder& order) {
  const size_t block = order.size() * ctx.field().element_bytes();
  PolyMap map;
  map.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    map.push_back(
        ReadCoefficients(ctx.field(), order, payload.subspan(i * block, block)));
  }
  return map;
}

}  // namespace

ParamsHash HashParams(const Params& params) {
  const std::vector<uint8_t> canonical = params.Canonical();
  std::array<uint8_t, SHA256_DIGEST_LENGTH> digest{};
  SHA256(canonical.data(), canonical.size(), digest.data());
  ParamsHash out{};
  std::copy_n(digest.begin(), out.size(), out.begin());
  return out;
}

MsgType TypeOf(const Message& msg) {
  return static_cast<MsgType>(msg.index() + 1);
}

size_t ExpectedPayloadBytes(const Context& ctx, MsgType type) {
  const Params& params = ctx.params();
  const size_t w = ctx.field().element_bytes();
  switch (type) {
    case MsgType::kF:
      return static_cast<size_t>(params.l) * ctx.f_order().size() * w;
    case MsgType::kC:
      return static_cast<size_t>(params.n) * ctx.c_order().size() * w;
    case MsgType::kU:
      return static_cast<size_t>(params.n) * w;
    case MsgType::kResult:
      return 1;
  }
  return 0;
}

std::vector<uint8_t> EncodeMessage(const Context& ctx, const Message& msg) {
  const Params& params = ctx.params();
  const MsgType type = TypeOf(msg);
  std::vector<uint8_t> payload;
  payload.reserve(ExpectedPayloadBytes(ctx, type));
  if (const auto* f = std::get_if<FMessage>(&msg)) {
    AppendMap(ctx, f->f, params.l, ctx.f_order(), payload);
  } else if (const auto* c = std::get_if<CMessage>(&msg)) {
    AppendMap(ctx, c->c, params.n, ctx.c_order(), payload);
  } else if (const auto* u = std::get_if<UMessage>(&msg)) {
    if (u->u.size() != static_cast<size_t>(params.n)) {
      Fail(ErrorCode::kParamMismatch, "u vector has the wrong length");
    }
    const size_t w = ctx.field().element_bytes();
    payload.resize(u->u.size() * w);
    for (size_t i = 0; i < u->u.size(); ++i) {
      if (u->u[i].v >= params.q) {
        Fail(ErrorCode::kParamMismatch, "u component not below q");
      }
      ctx.field().Encode(u->u[i], std::span<uint8_t>(payload).subspan(i * w, w));
    }
  } else {
    payload.push_back(std::get<ResultMessage>(msg).success ? 1 : 0);
  }

  std::vector<uint8_t> frame(kFrameMagic.begin(), kFrameMagic.end());
  frame.push_back(kWireVersion);
  frame.push_back(static_cast<uint8_t>(type));
  const ParamsHash hash = HashParams(params);
  frame.insert(frame.end(), hash.begin(), hash.end());
  PutU32(frame, static_cast<uint32_t>(payload.size()));
  frame.insert(frame.end(), payload.begin(), payload.end());
  return frame;
}

FrameHeader ParseFrameHeader(const Context& ctx,
                             std::span<const uint8_t> header) {
  if (header.size() < kFrameHeaderBytes) {
    if (header.size() >= kFrameMagic.size() &&
        !std::equal(kFrameMagic.begin(), kFrameMagic.end(), header.begin())) {
      Fail(ErrorCode::kBadMagic, "frame does not start with MPKX");
    }
    Fail(ErrorCode::kTruncatedFrame,
         "frame header needs " + std::to_string(kFrameHeaderBytes) +
             " bytes, got " + std::to_string(header.size()));
  }
  if (!std::equal(kFrameMagic.begin(), kFrameMagic.end(), header.begin())) {
    Fail(ErrorCode::kBadMagic, "frame does not start with MPKX");
  }
  if (header[4] != kWireVersion) {
    Fail(ErrorCode::kVersionUnsupported,
         "wire version " + std::to_string(header[4]));
  }
  const uint8_t raw_type = header[5];
  if (raw_type < 1 || raw_type > 4) {
    Fail(ErrorCode::kUnknownMessageType,
         "message type " + std::to_string(raw_type));
  }
  const ParamsHash expected = HashParams(ctx.params());
  if (!std::equal(expected.begin(), expected.end(), header.begin() + 6)) {
    Fail(ErrorCode::kParamMismatch, "frame was built for different params");
  }
  FrameHeader out;
  out.type = static_cast<MsgType>(raw_type);
  out.payload_len = (uint32_t{header[14]} << 24) | (uint32_t{header[15]} << 16) |
                    (uint32_t{header[16]} << 8) | uint32_t{header[17]};
  const size_t want = ExpectedPayloadBytes(ctx, out.type);
  if (out.payload_len != want) {
    Fail(ErrorCode::kLengthMismatch,
         "payload_len " + std::to_string(out.payload_len) + ", params need " +
             std::to_string(want));
  }
  return out;
}

Message DecodeMessage(const Context& ctx, std::span<const uint8_t> frame) {
  const FrameHeader header = ParseFrameHeader(ctx, frame);
  const size_t available = frame.size() - kFrameHeaderBytes;
  if (available < header.payload_len) {
    Fail(ErrorCode::kTruncatedFrame,
         "payload has " + std::to_string(available) + " of " +
             std::to_string(header.payload_len) + " bytes");
  }
  if (available > header.payload_len) {
    Fail(ErrorCode::kLengthMismatch, "trailing bytes after payload");
  }
  const Params& params = ctx.params();
  const auto payload = frame.subspan(kFrameHeaderBytes);
  switch (header.type) {
    case MsgType::kF:
      return FMessage{ReadMap(ctx, payload, params.l, OrderFor(ctx, MsgType::kF))};
    case MsgType::kC:
      return CMessage{ReadMap(ctx, payload, params.n, OrderFor(ctx, MsgType::kC))};
    case MsgType::kU: {
      const size_t w = ctx.field().element_bytes();
      UMessage msg;
      for (int i = 0; i < params.n; ++i) {
        auto fe = ctx.field().Decode(payload.subspan(i * w, w));
        if (!fe) {
          Fail(ErrorCode::kElementOutOfRange,
               "u component " + std::to_string(i) + " is not below q");
        }
        msg.u.push_back(*fe);
      }
      return msg;
    }
    case MsgType::kResult:
      if (payload[0] > 1) {
        Fail(ErrorCode::kMalformedMessage,
             "result byte " + std::to_string(payload[0]));
      }
      return ResultMessage{payload[0] == 1};
  }
  Fail(ErrorCode::kUnknownMessageType, "unreachable");
}

std::vector<uint8_t> SerializeTranscript(const Context& ctx,
                                         const Transcript& transcript) {
  std::vector<uint8_t> out;
  for (const Message& msg :
       {Message{FMessage{transcript.f_msg}}, Message{CMessage{transcript.c_msg}},
        Message{UMessage{transcript.u_msg}},
        Message{ResultMessage{transcript.outcome.success}}}) {
    const std::vector<uint8_t> frame = EncodeMessage(ctx, msg);
    out.insert(out.end(), frame.begin(), frame.end());
  }
  return out;
}

void WriteFrame(ByteStream& stream, std::span<const uint8_t> frame) {
  stream.WriteAll(frame);
}

std::vector<uint8_t> ReadFrame(ByteStream& stream, const Context& ctx) {
  std::vector<uint8_t> frame(kFrameHeaderBytes);
  // Magic first so a peer speaking something else is named as such even if
  // it sends fewer than a header's worth of bytes.
  stream.ReadExact(std::span<uint8_t>(frame).first(kFrameMagic.size()));
  if (!std::equal(kFrameMagic.begin(), kFrameMagic.end(), frame.begin())) {
    Fail(ErrorCode::kBadMagic, "peer frame does not start with MPKX");
  }
  stream.ReadExact(std::span<uint8_t>(frame).subspan(kFrameMagic.size()));
  const FrameHeader header = ParseFrameHeader(ctx, frame);
  frame.resize(kFrameHeaderBytes + header.payload_len);
  stream.ReadExact(std::span<uint8_t>(frame).subspan(kFrameHeaderBytes));
  return frame;
}

namespace {

template <typename T>
T Expect(const Context& ctx, ByteStream& stream, std::vector<uint8_t>& log) {
  std::vector<uint8_t> frame = ReadFrame(stream, ctx);
  Message msg = DecodeMessage(ctx, frame);
  if (!std::holds_alternative<T>(msg)) {
    Fail(ErrorCode::kMalformedMessage,
         "unexpected message type " +
             std::to_string(static_cast<int>(TypeOf(msg))));
  }
  log.insert(log.end(), frame.begin(), frame.end());
  return std::get<T>(std::move(msg));
}

void Send(const Context& ctx, ByteStream& stream, const Message& msg,
          std::vector<uint8_t>& log) {
  const std::vector<uint8_t> frame = EncodeMessage(ctx, msg);
  WriteFrame(stream, frame);
  log.insert(log.end(), frame.begin(), frame.end());
}

}  // namespace

StreamSession SessionOverStream(Role role, ByteStream& stream,
                                const Context& ctx, uint64_t seed, int round,
                                const SearchLimits& limits) {
  StreamSession session;
  Transcript& tr = session.transcript;
  std::vector<uint8_t>& log = session.transcript_bytes;
  if (role == Role::kAlice) {
    Rng rng = AliceRng(seed, round);
    auto [alice, f_msg] = AliceInit(ctx, rng);
    tr.alice_key = alice.s;
    tr.f_msg = std::move(f_msg);
    Send(ctx, stream, FMessage{tr.f_msg}, log);
    tr.c_msg = Expect<CMessage>(ctx, stream, log).c;
    tr.u_msg = AliceFinalize(ctx, alice, tr.c_msg);
    Send(ctx, stream, UMessage{tr.u_msg}, log);
    tr.outcome.success = Expect<ResultMessage>(ctx, stream, log).success;
    if (tr.outcome.success) {
      tr.outcome.key = alice.s;
    } else {
      tr.outcome.diagnostic = "peer requested a restart";
    }
  } else {
    Rng rng = BobRng(seed, round);
    tr.f_msg = Expect<FMessage>(ctx, stream, log).f;
    auto [bob, c_msg] = BobRespond(ctx, tr.f_msg, rng);
    tr.c_msg = std::move(c_msg);
    Send(ctx, stream, CMessage{tr.c_msg}, log);
    tr.u_msg = Expect<UMessage>(ctx, stream, log).u;
    tr.outcome = BobRecover(ctx, bob, tr.f_msg, tr.u_msg, limits);
    Send(ctx, stream, ResultMessage{tr.outcome.success}, log);
  }
  stream.Close();
  return session;
}

}  // namespace mpkex
