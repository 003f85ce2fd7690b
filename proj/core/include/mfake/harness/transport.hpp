// Copyright 2026 The mfake Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "mfake/bytes.hpp"

namespace mfake::harness {

// One side of an ordered, framed, duplex channel.
class Endpoint {
 public:
  virtual ~Endpoint() = default;
  // Throws IoError when the channel is broken.
  virtual void send(ByteSpan frame) = 0;
  // Next frame, or nullopt if none arrives before the timeout or the peer closed.
  virtual std::optional<Bytes> receive() = 0;
};

// In-process duplex queue.
class MemoryLink {
 public:
  explicit MemoryLink(std::chrono::milliseconds timeout = std::chrono::milliseconds(0));
  Endpoint& user_end() { return *a_; }
  Endpoint& sp_end() { return *b_; }

 private:
  struct Queue {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<Bytes> frames;
  };
  class End final : public Endpoint {
   public:
    End(Queue& in, Queue& out, std::chrono::milliseconds timeout)
        : in_(in), out_(out), timeout_(timeout) {}
    void send(ByteSpan frame) override;
    std::optional<Bytes> receive() override;

   private:
    Queue& in_;
    Queue& out_;
    std::chrono::milliseconds timeout_;
  };

  Queue to_sp_, to_user_;
  std::unique_ptr<End> a_, b_;
};

// Stream socket carrying the same frames.
class TcpEndpoint final : public Endpoint {
 public:
  TcpEndpoint(int fd, std::chrono::milliseconds timeout);
  ~TcpEndpoint() override;
  TcpEndpoint(TcpEndpoint&& other) noexcept;
  TcpEndpoint& operator=(TcpEndpoint&&) = delete;

  static TcpEndpoint connect(const std::string& host, std::uint16_t port,
                             std::chrono::milliseconds timeout = std::chrono::seconds(30));

  void send(ByteSpan frame) override;
  std::optional<Bytes> receive() override;

 private:
  bool read_exact(std::uint8_t* out, std::size_t n);
  int fd_;
};

class TcpListener {
 public:
  // Port 0 picks an ephemeral port; see port().
  TcpListener(const std::string& host, std::uint16_t port);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  TcpEndpoint accept(std::chrono::milliseconds timeout = std::chrono::seconds(30));

 private:
  int fd_;
  std::uint16_t port_;
};

// Connected loopback pair (user end, sp end) for in-process socket runs.
struct TcpPair {
  TcpEndpoint user;
  TcpEndpoint sp;
};
TcpPair tcp_loopback_pair(std::chrono::milliseconds timeout = std::chrono::seconds(5));

}  // namespace mfake::harness
