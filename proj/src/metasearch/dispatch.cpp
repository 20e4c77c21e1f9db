#include "hcrawl/metasearch/dispatch.hpp"

#include <future>
#include <optional>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "hcrawl/error.hpp"

namespace hcrawl::metasearch {
namespace {

struct EngineAnswer {
  std::vector<std::string> urls;
  std::optional<std::string> failure;
};

EngineAnswer ask(const WrapperSpec& w, const std::vector<std::string>& query, web::Fetcher& fetcher) {
  const auto page_url = web::normalize(w.query_url(query));
  if (!page_url) return {{}, "query URL is not absolute http(s) or file"};
  const auto page = fetcher.fetch(*page_url);
  if (page.status != web::FetchStatus::kOk) return {{}, page.error};
  EngineAnswer answer;
  for (const auto& href : extract_urls(lex_tags(page.body), w)) {
    if (auto u = web::resolve(*page_url, href)) answer.urls.push_back(u->str());
  }
  return answer;
}

}  // namespace

DispatchResult dispatch(const std::vector<std::string>& query, const std::vector<WrapperSpec>& wrappers,
                        web::Fetcher& fetcher) {
  std::vector<const WrapperSpec*> active;
  for (const auto& w : wrappers) {
    if (w.enabled) active.push_back(&w);
  }
  if (active.empty()) throw DomainError("no wrapper enabled");

  std::vector<std::future<EngineAnswer>> pending;
  for (const WrapperSpec* w : active) {
    pending.push_back(std::async(std::launch::async, [w, &query, &fetcher] {
      try {
        return ask(*w, query, fetcher);
      } catch (const std::exception& e) {
        return EngineAnswer{{}, std::string(e.what())};
      }
    }));
  }

  DispatchResult result;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < active.size(); ++i) {
    EngineAnswer answer = pending[i].get();
    if (answer.failure) {
      spdlog::warn("engine {} failed: {}", active[i]->engine, *answer.failure);
      result.failures.push_back({active[i]->engine, *answer.failure});
      continue;
    }
    for (auto& url : answer.urls) {
      if (seen.insert(url).second) result.candidates.push_back({std::move(url), active[i]->engine});
    }
  }
  result.all_failed = result.failures.size() == active.size();
  return result;
}

}  // namespace hcrawl::metasearch
