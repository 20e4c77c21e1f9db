#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hcrawl/web/url.hpp"

namespace hcrawl::web {

enum class FetchStatus { kOk, kUnreachable, kInfeasible };

std::string_view to_string(FetchStatus status);

struct FetchResult {
  FetchStatus status = FetchStatus::kUnreachable;
  std::string body;        ///< empty unless ok
  std::string media_type;  ///< as reported, parameters included
  std::string error;       ///< reason when not ok

  static FetchResult ok(std::string body, std::string media_type);
  static FetchResult unreachable(std::string error);
  static FetchResult infeasible(std::string media_type);
};

/// Markup and plain text are feasible. Parameters such as charset are ignored.
bool feasible_media_type(std::string_view media_type);

/// Must be safe to call from several threads at once.
class Fetcher {
 public:
  virtual ~Fetcher() = default;
  virtual FetchResult fetch(const Url& url) = 0;
};

/// Serves a directory of pages under a base URL. `base` must end with '/';
/// a URL ending with '/' maps to index.html. Media type follows the extension.
class LocalDirectoryFetcher : public Fetcher {
 public:
  LocalDirectoryFetcher(std::filesystem::path root, Url base);

  /// Serves `root` under file://<absolute root>/.
  explicit LocalDirectoryFetcher(const std::filesystem::path& root);

  FetchResult fetch(const Url& url) override;
  const Url& base() const noexcept { return base_; }
  /// The URL at which `relative` is served.
  Url url_for(std::string_view relative) const;

 private:
  std::filesystem::path root_;
  Url base_;
};

/// HTTP and HTTPS through cpp-httplib, following redirects.
class HttpFetcher : public Fetcher {
 public:
  explicit HttpFetcher(std::chrono::milliseconds timeout = std::chrono::seconds(10),
                       std::string user_agent = "hcrawl/0.1");
  FetchResult fetch(const Url& url) override;

 private:
  std::chrono::milliseconds timeout_;
  std::string user_agent_;
};

/// Dispatches on the longest matching URL prefix; unmatched URLs go to the
/// fallback, or are unreachable without one.
class RoutingFetcher : public Fetcher {
 public:
  void route(std::string prefix, std::shared_ptr<Fetcher> fetcher);
  void fallback(std::shared_ptr<Fetcher> fetcher) { fallback_ = std::move(fetcher); }
  FetchResult fetch(const Url& url) override;

 private:
  std::vector<std::pair<std::string, std::shared_ptr<Fetcher>>> routes_;
  std::shared_ptr<Fetcher> fallback_;
};

}  // namespace hcrawl::web
