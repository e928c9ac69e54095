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

#ifndef MPKEX_WIRE_H_
#define MPKEX_WIRE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "mpkex/protocol.h"
#include "mpkex/transport.h"

namespace mpkex {

// Frame layout (FORMAT.md has worked examples):
//   magic "MPKX" | version u8 | msg_type u8 | params_hash[8] |
//   payload_len u32 BE | payload
inline constexpr std::array<uint8_t, 4> kFrameMagic = {'M', 'P', 'K', 'X'};
inline constexpr uint8_t kWireVersion = 1;
inline constexpr size_t kFrameHeaderBytes = 18;

enum class MsgType : uint8_t {
  kF = 1,
  kC = 2,
  kU = 3,
  // Bob's verdict: one byte, 1 = key agreed, 0 = restart.
  kResult = 4,
};

using ParamsHash = std::array<uint8_t, 8>;

// First 8 bytes of SHA-256 over Params::Canonical().
ParamsHash HashParams(const Params& params);

struct FMessage {
  PolyMap f;
};
struct CMessage {
  PolyMap c;
};
struct UMessage {
  std::vector<Fe> u;
};
struct ResultMessage {
  bool success = false;
};

using Message = std::variant<FMessage, CMessage, UMessage, ResultMessage>;

MsgType TypeOf(const Message& msg);

// Payload sizes: F = l C(n+d,d) W, C = n C(n+m,m) W, U = n W, RESULT = 1.
size_t ExpectedPayloadBytes(const Context& ctx, MsgType type);

// Throws Error(kParamMismatch) if the message shape does not fit the params.
std::vector<uint8_t> EncodeMessage(const Context& ctx, const Message& msg);

// Strict inverse of EncodeMessage. Every rejection is an Error whose code is
// one of kTruncatedFrame, kBadMagic, kVersionUnsupported, kUnknownMessageType,
// kParamMismatch, kLengthMismatch, kElementOutOfRange, kMalformedMessage.
Message DecodeMessage(const Context& ctx, std::span<const uint8_t> frame);

struct FrameHeader {
  MsgType type;
  uint32_t payload_len;
};

// Validates everything in the 18 header bytes, including that payload_len
// equals the size the params dictate.
FrameHeader ParseFrameHeader(const Context& ctx,
                             std::span<const uint8_t> header);

// F, C, U and RESULT frames of one execution, concatenated.
std::vector<uint8_t> SerializeTranscript(const Context& ctx,
                                         const Transcript& transcript);

void WriteFrame(ByteStream& stream, std::span<const uint8_t> frame);
// Reads one whole frame, validating the header before the payload is read.
std::vector<uint8_t> ReadFrame(ByteStream& stream, const Context& ctx);

enum class Role { kAlice, kBob };

struct StreamSession {
  // Alice fills alice_key; Bob fills outcome fully. Alice's outcome carries
  // the verdict and, on success, her key.
  Transcript transcript;
  std::vector<uint8_t> transcript_bytes;
};

// One protocol execution over a connected stream in the order
// f ->, <- c, u ->, <- result. The random streams are those RunAttempt uses
// for (seed, round), so the transcript matches the in-process run. Transport
// problems throw Error(kTransport); peer framing errors throw their wire code.
StreamSession SessionOverStream(Role role, ByteStream& stream,
                                const Context& ctx, uint64_t seed,
                                int round = 0,
                                const SearchLimits& limits = DefaultBobLimits());

}  // namespace mpkex

#endif  // MPKEX_WIRE_H_
