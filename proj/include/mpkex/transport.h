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

#ifndef MPKEX_TRANSPORT_H_
#define MPKEX_TRANSPORT_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>

namespace mpkex {

// Blocking bidirectional byte stream. Failures throw Error(kTransport).
class ByteStream {
 public:
  virtual ~ByteStream() = default;
  virtual void WriteAll(std::span<const uint8_t> bytes) = 0;
  virtual void ReadExact(std::span<uint8_t> out) = 0;
  // Signals end of stream to the peer.
  virtual void Close() = 0;
};

// Two connected in-memory endpoints.
std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>>
MakeInProcessPair();

class TcpStream : public ByteStream {
 public:
  explicit TcpStream(int fd) : fd_(fd) {}
  ~TcpStream() override;
  TcpStream(const TcpStream&) = delete;
  TcpStream& operator=(const TcpStream&) = delete;

  static std::unique_ptr<TcpStream> Connect(const std::string& host,
                                            uint16_t port);

  void WriteAll(std::span<const uint8_t> bytes) override;
  void ReadExact(std::span<uint8_t> out) override;
  void Close() override;

 private:
  int fd_;
};

class TcpListener {
 public:
  // Port 0 asks the OS for a free port; see port().
  TcpListener(const std::string& host, uint16_t port);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  uint16_t port() const { return port_; }
  std::unique_ptr<TcpStream> Accept();

 private:
  int fd_ = -1;
  uint16_t port_ = 0;
};

// Splits "host:port". Throws Error(kInvalidParams) on a malformed address.
std::pair<std::string, uint16_t> ParseHostPort(const std::string& address);

}  // namespace mpkex

#endif  // MPKEX_TRANSPORT_H_
