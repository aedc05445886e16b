#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "borderforge/errors.hpp"
#include "borderforge/obba.hpp"

namespace borderforge {

ExternalOracle::ExternalOracle(std::string address, std::chrono::milliseconds timeout)
    : address_(std::move(address)), timeout_(timeout) {
  if (address_.rfind("unix:", 0) != 0 && address_.rfind("exec:", 0) != 0) {
    throw ConfigError("oracle address must start with unix: or exec:, got '" + address_ + "'");
  }
}

ExternalOracle::~ExternalOracle() { disconnect(); }

void ExternalOracle::connect() {
  ::signal(SIGPIPE, SIG_IGN);
  if (address_.rfind("unix:", 0) == 0) {
    const std::string path = address_.substr(5);
    sockaddr_un addr{};
    if (path.size() >= sizeof(addr.sun_path)) throw OracleUnavailable("socket path too long: " + path);
    addr.sun_family = AF_UNIX;
    std::memcpy(addr.sun_path, path.c_str(), path.size() + 1);
    const int fd = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
    if (fd < 0) throw OracleUnavailable(std::string("socket: ") + std::strerror(errno));
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
      const int err = errno;
      ::close(fd);
      throw OracleUnavailable("cannot connect to " + path + ": " + std::strerror(err));
    }
    read_fd_ = write_fd_ = fd;
    return;
  }
  const std::string command = address_.substr(5);
  int to_child[2], from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) throw OracleUnavailable(std::string("pipe: ") + std::strerror(errno));
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw OracleUnavailable(std::string("pipe: ") + std::strerror(errno));
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) ::close(fd);
    throw OracleUnavailable(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  write_fd_ = to_child[1];
  read_fd_ = from_child[0];
  child_pid_ = pid;
}

void ExternalOracle::disconnect() noexcept {
  if (write_fd_ >= 0) ::close(write_fd_);
  if (read_fd_ >= 0 && read_fd_ != write_fd_) ::close(read_fd_);
  write_fd_ = read_fd_ = -1;
  buffer_.clear();
  if (child_pid_ > 0) {
    int status = 0;
    bool reaped = false;
    for (int i = 0; i < 50 && !reaped; ++i) {
      if (::waitpid(child_pid_, &status, WNOHANG) == child_pid_) {
        reaped = true;
      } else {
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
      }
    }
    if (!reaped) {
      ::kill(child_pid_, SIGKILL);
      ::waitpid(child_pid_, &status, 0);
    }
    child_pid_ = -1;
  }
}

std::string ExternalOracle::round_trip(const std::string& line) {
  if (write_fd_ < 0) connect();
  const std::string out = line + "\n";
  std::size_t sent = 0;
  while (sent < out.size()) {
    const ssize_t w = ::write(write_fd_, out.data() + sent, out.size() - sent);
    if (w < 0 && errno == EINTR) continue;
    if (w <= 0) {
      const int err = errno;
      disconnect();
      throw OracleUnavailable(std::string("write to oracle failed: ") + std::strerror(err));
    }
    sent += static_cast<std::size_t>(w);
  }

  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  while (true) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string reply = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return reply;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      disconnect();
      throw OracleUnavailable("oracle did not answer within " + std::to_string(timeout_.count()) + " ms");
    }
    pollfd pfd{read_fd_, POLLIN, 0};
    const int r = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (r < 0 && errno == EINTR) continue;
    if (r == 0) continue;
    char chunk[4096];
    const ssize_t n = ::read(read_fd_, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      disconnect();
      throw OracleUnavailable("oracle closed the connection");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

OraclePrediction ExternalOracle::predict(const OracleQuery& q) {
  const std::uint64_t id = next_id_++;
  const std::string reply = round_trip(encode_request(id, make_view(q.state, q.truncation)));
  return decode_response(reply, id, q.ring.nvars());
}

}  // namespace borderforge
