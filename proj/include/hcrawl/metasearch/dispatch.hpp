#pragma once

#include <string>
#include <vector>

#include "hcrawl/metasearch/wrapper.hpp"
#include "hcrawl/web/fetcher.hpp"

namespace hcrawl::metasearch {

struct Candidate {
  std::string url;  ///< normalized, absolute
  std::string engine;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct EngineFailure {
  std::string engine;
  std::string reason;
};

struct DispatchResult {
  std::vector<Candidate> candidates;
  std::vector<EngineFailure> failures;
  /// Set when every enabled engine failed.
  bool all_failed = false;
};

/// Queries every enabled engine concurrently and merges their links in
/// wrapper order, keeping the first engine that reported each URL.
/// Throws DomainError when no wrapper is enabled.
DispatchResult dispatch(const std::vector<std::string>& query, const std::vector<WrapperSpec>& wrappers,
                        web::Fetcher& fetcher);

}  // namespace hcrawl::metasearch
