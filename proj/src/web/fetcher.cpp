#include "hcrawl/web/fetcher.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <httplib.h>

#include "hcrawl/error.hpp"

namespace hcrawl::web {
namespace {

std::string media_type_for(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".html" || ext == ".htm") return "text/html";
  if (ext == ".xhtml") return "application/xhtml+xml";
  if (ext == ".txt") return "text/plain";
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".gif") return "image/gif";
  if (ext == ".pdf") return "application/pdf";
  return "application/octet-stream";
}

}  // namespace

std::string_view to_string(FetchStatus status) {
  switch (status) {
    case FetchStatus::kOk: return "ok";
    case FetchStatus::kUnreachable: return "unreachable";
    case FetchStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

FetchResult FetchResult::ok(std::string body, std::string media_type) {
  if (!feasible_media_type(media_type)) return infeasible(std::move(media_type));
  return {FetchStatus::kOk, std::move(body), std::move(media_type), {}};
}

FetchResult FetchResult::unreachable(std::string error) {
  return {FetchStatus::kUnreachable, {}, {}, std::move(error)};
}

FetchResult FetchResult::infeasible(std::string media_type) {
  std::string why = "media type '" + media_type + "' is not a document";
  return {FetchStatus::kInfeasible, {}, std::move(media_type), std::move(why)};
}

bool feasible_media_type(std::string_view media_type) {
  std::string base(media_type.substr(0, media_type.find(';')));
  base.erase(std::remove_if(base.begin(), base.end(), ::isspace), base.end());
  std::transform(base.begin(), base.end(), base.begin(), [](unsigned char c) { return std::tolower(c); });
  return base == "text/html" || base == "text/plain" || base == "application/xhtml+xml";
}

LocalDirectoryFetcher::LocalDirectoryFetcher(std::filesystem::path root, Url base)
    : root_(std::move(root)), base_(std::move(base)) {
  if (base_.path.empty() || base_.path.back() != '/') throw DomainError("base URL path must end with '/'");
  if (!std::filesystem::is_directory(root_)) throw DomainError("not a directory: " + root_.string());
}

LocalDirectoryFetcher::LocalDirectoryFetcher(const std::filesystem::path& root)
    : LocalDirectoryFetcher(root, [&] {
        std::string p = std::filesystem::absolute(root).lexically_normal().generic_string();
        if (p.back() != '/') p += '/';
        return Url{"file", "", std::nullopt, p, ""};
      }()) {}

Url LocalDirectoryFetcher::url_for(std::string_view relative) const {
  auto u = resolve(base_, relative);
  if (!u) throw DomainError("cannot form a URL for " + std::string(relative));
  return *u;
}

FetchResult LocalDirectoryFetcher::fetch(const Url& url) {
  if (url.scheme != base_.scheme || url.authority() != base_.authority() ||
      url.path.compare(0, base_.path.size(), base_.path) != 0) {
    return FetchResult::unreachable("outside the served directory");
  }
  std::string rel = percent_decode(url.path.substr(base_.path.size()));
  if (rel.empty() || rel.back() == '/') rel += "index.html";
  const std::filesystem::path file = (root_ / rel).lexically_normal();
  if (file.lexically_relative(root_).string().starts_with("..")) return FetchResult::unreachable("outside root");
  std::ifstream in(file, std::ios::binary);
  if (!in || std::filesystem::is_directory(file)) return FetchResult::unreachable("no such page: " + rel);
  const std::string type = media_type_for(file);
  if (!feasible_media_type(type)) return FetchResult::infeasible(type);
  std::ostringstream body;
  body << in.rdbuf();
  return FetchResult::ok(body.str(), type);
}

HttpFetcher::HttpFetcher(std::chrono::milliseconds timeout, std::string user_agent)
    : timeout_(timeout), user_agent_(std::move(user_agent)) {}

FetchResult HttpFetcher::fetch(const Url& url) {
  if (url.scheme != "http" && url.scheme != "https") return FetchResult::unreachable("unsupported scheme");
  try {
    httplib::Client client(url.scheme + "://" + url.authority());
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    client.set_follow_location(true);
    const auto res = client.Get(url.target(), {{"User-Agent", user_agent_}});
    if (!res) return FetchResult::unreachable(httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300) {
      return FetchResult::unreachable("HTTP status " + std::to_string(res->status));
    }
    const std::string type = res->has_header("Content-Type") ? res->get_header_value("Content-Type") : "text/html";
    return FetchResult::ok(res->body, type);
  } catch (const std::exception& e) {
    return FetchResult::unreachable(e.what());
  }
}

void RoutingFetcher::route(std::string prefix, std::shared_ptr<Fetcher> fetcher) {
  routes_.emplace_back(std::move(prefix), std::move(fetcher));
  std::stable_sort(routes_.begin(), routes_.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
}

FetchResult RoutingFetcher::fetch(const Url& url) {
  const std::string s = url.str();
  for (const auto& [prefix, fetcher] : routes_) {
    if (s.starts_with(prefix)) return fetcher->fetch(url);
  }
  if (fallback_) return fallback_->fetch(url);
  return FetchResult::unreachable("no route for " + s);
}

}  // namespace hcrawl::web
