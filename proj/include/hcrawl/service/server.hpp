#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <thread>
#include <utility>

#include "hcrawl/service/workspace.hpp"

namespace httplib {
class Server;
}

namespace hcrawl::service {

/// "host:port" or ":port" or "port". Throws DomainError.
std::pair<std::string, int> parse_bind(const std::string& text);

/// JSON control surface over a Workspace, plus the scheduler clock.
class Server {
 public:
  /// An empty token disables remote enqueue.
  Server(Workspace& workspace, std::string token = {});
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port. Throws
  /// DomainError when the address cannot be bound.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Requires bind().
  void listen();
  /// listen() on a background thread.
  void start();
  void stop();

  int port() const noexcept { return port_; }

 private:
  void routes();

  Workspace& ws_;
  std::string token_;
  std::unique_ptr<httplib::Server> http_;
  std::thread thread_;
  std::thread clock_;
  std::atomic<bool> stopping_{false};
  int port_ = 0;
};

}  // namespace hcrawl::service
