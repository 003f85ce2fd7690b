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

#include "mfake/harness/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "mfake/error.hpp"
#include "mfake/harness/codec.hpp"

namespace mfake::harness {

namespace {

[[noreturn]] void throw_errno(const std::string& what) {
  throw IoError(what + ": " + std::strerror(errno));
}

void set_timeout(int fd, std::chrono::milliseconds timeout) {
  timeval tv{};
  tv.tv_sec = static_cast<time_t>(timeout.count() / 1000);
  tv.tv_usec = static_cast<suseconds_t>((timeout.count() % 1000) * 1000);
  ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
  ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof tv);
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

}  // namespace

MemoryLink::MemoryLink(std::chrono::milliseconds timeout)
    : a_(std::make_unique<End>(to_user_, to_sp_, timeout)),
      b_(std::make_unique<End>(to_sp_, to_user_, timeout)) {}

void MemoryLink::End::send(ByteSpan frame) {
  {
    std::lock_guard lock(out_.mu);
    out_.frames.emplace_back(frame.begin(), frame.end());
  }
  out_.cv.notify_one();
}

std::optional<Bytes> MemoryLink::End::receive() {
  std::unique_lock lock(in_.mu);
  if (!in_.cv.wait_for(lock, timeout_, [&] { return !in_.frames.empty(); })) return std::nullopt;
  Bytes f = std::move(in_.frames.front());
  in_.frames.pop_front();
  return f;
}

TcpEndpoint::TcpEndpoint(int fd, std::chrono::milliseconds timeout) : fd_(fd) {
  set_timeout(fd_, timeout);
}

TcpEndpoint::~TcpEndpoint() {
  if (fd_ >= 0) ::close(fd_);
}

TcpEndpoint::TcpEndpoint(TcpEndpoint&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

TcpEndpoint TcpEndpoint::connect(const std::string& host, std::uint16_t port,
                                 std::chrono::milliseconds timeout) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw IoError("resolve " + host + ": " + ::gai_strerror(rc));
  }
  int fd = -1;
  int saved = 0;
  for (auto* ai = res; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    saved = errno;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) {
    errno = saved;
    throw_errno("connect " + host + ":" + service);
  }
  return TcpEndpoint(fd, timeout);
}

void TcpEndpoint::send(ByteSpan frame) {
  std::size_t sent = 0;
  while (sent < frame.size()) {
    const auto n = ::send(fd_, frame.data() + sent, frame.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno("send");
    }
    sent += static_cast<std::size_t>(n);
  }
}

bool TcpEndpoint::read_exact(std::uint8_t* out, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    const auto r = ::recv(fd_, out + got, n - got, 0);
    if (r == 0) return false;
    if (r < 0) {
      if (errno == EINTR) continue;
      if (errno == EAGAIN || errno == EWOULDBLOCK) return false;
      throw_errno("recv");
    }
    got += static_cast<std::size_t>(r);
  }
  return true;
}

std::optional<Bytes> TcpEndpoint::receive() {
  Bytes frame(kFrameHeaderBytes);
  if (!read_exact(frame.data(), kFrameHeaderBytes)) return std::nullopt;
  const std::size_t len = (std::size_t{frame[1]} << 8) | frame[2];
  frame.resize(kFrameHeaderBytes + len);
  if (len != 0 && !read_exact(frame.data() + kFrameHeaderBytes, len)) return std::nullopt;
  return frame;
}

TcpListener::TcpListener(const std::string& host, std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw_errno("socket");
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd_);
    throw IoError("listen address must be an IPv4 literal: " + host);
  }
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 || ::listen(fd_, 4) != 0) {
    const int saved = errno;
    ::close(fd_);
    errno = saved;
    throw_errno("bind/listen " + host + ":" + std::to_string(port));
  }
  socklen_t len = sizeof addr;
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() { ::close(fd_); }

TcpEndpoint TcpListener::accept(std::chrono::milliseconds timeout) {
  pollfd p{fd_, POLLIN, 0};
  const int ready = ::poll(&p, 1, static_cast<int>(timeout.count()));
  if (ready == 0) throw IoError("accept timed out");
  if (ready < 0) throw_errno("poll");
  const int fd = ::accept(fd_, nullptr, nullptr);
  if (fd < 0) throw_errno("accept");
  return TcpEndpoint(fd, timeout);
}

TcpPair tcp_loopback_pair(std::chrono::milliseconds timeout) {
  TcpListener listener("127.0.0.1", 0);
  auto user = TcpEndpoint::connect("127.0.0.1", listener.port(), timeout);
  auto sp = listener.accept(timeout);
  return {std::move(user), std::move(sp)};
}

}  // namespace mfake::harness
