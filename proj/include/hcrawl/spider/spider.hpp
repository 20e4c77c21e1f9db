#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "hcrawl/concept/concept_tree.hpp"
#include "hcrawl/concept/happiness.hpp"
#include "hcrawl/ranking/rank.hpp"
#include "hcrawl/web/fetcher.hpp"
#include "hcrawl/web/url.hpp"

namespace hcrawl::spider {

inline constexpr int kUnboundedDepth = std::numeric_limits<int>::max();

struct SpiderConfig {
  int max_depth = 2;
  double happiness_threshold = 700.0;
  double display_threshold = 700.0;
  double initial_happiness = 0.0;
  std::size_t window_size = 5;
  std::chrono::milliseconds fetch_timeout{10000};
  std::size_t max_parallel_fetches = 4;
  std::chrono::milliseconds politeness{500};  ///< minimum gap between requests to one host
  std::size_t max_fetches = 0;                ///< 0 means no cap

  /// Throws DomainError unless max_depth >= 0, window_size >= 1 and
  /// max_parallel_fetches >= 1.
  void validate() const;

  /// Threshold 700, initial happiness 0, depth 2.
  static SpiderConfig pessimistic();
  /// Threshold 251, initial happiness 500, no depth bound.
  static SpiderConfig optimistic();
  /// "pessimistic" or "optimistic"; throws DomainError otherwise.
  static SpiderConfig profile(std::string_view name);

  friend bool operator==(const SpiderConfig&, const SpiderConfig&) = default;
};

struct SpiderTask {
  std::uint64_t id = 0;
  web::Url url;
  int depth = 0;
  concept_tree::HistoryWindow history;
  std::string origin;  ///< engine name or "user"
  double priority = 0.0;
};

struct DisplayedDoc {
  std::string url;
  double score = 0.0;  ///< rank against the query words
  double combined = 0.0;
  std::size_t level = 0;
  int depth = 0;
  std::string origin;
  std::string title;
  std::string abstract;
  friend bool operator==(const DisplayedDoc&, const DisplayedDoc&) = default;
};

enum class TaskState { kWaiting, kConnecting, kParsing, kRanking, kDone, kDead };

std::string_view to_string(TaskState state);

struct SpiderEvent {
  std::uint64_t task_id = 0;
  TaskState state = TaskState::kWaiting;
  double happiness = 0.0;
  std::string url;
  int depth = 0;
};

struct Seed {
  std::string url;
  std::string origin = "user";
};

struct SearchRequest {
  concept_tree::ConceptTree tree;
  concept_tree::NodeId query = 0;
  std::vector<Seed> seeds;
  SpiderConfig config;
  ranking::RankParams rank_params;
  concept_tree::CombinedParams combined_params;
  /// Consulted before each fetch; a refused URL is dropped.
  std::function<bool(const web::Url&)> allow;
};

/// Callbacks are invoked one at a time, never concurrently.
struct SearchObserver {
  std::function<void(const DisplayedDoc&)> on_result;
  std::function<void(const SpiderEvent&)> on_event;
};

class StopSignal {
 public:
  void request_stop() noexcept { flag_.store(true); }
  bool stop_requested() const noexcept { return flag_.load(); }

 private:
  std::atomic<bool> flag_{false};
};

struct FetchRecord {
  std::string url;
  int depth = 0;
  web::FetchStatus status = web::FetchStatus::kUnreachable;
  double score = 0.0;
  double happiness = 0.0;  ///< window mean including this document
  bool expanded = false;
};

struct SearchReport {
  std::vector<DisplayedDoc> results;  ///< in discovery order
  std::vector<FetchRecord> fetched;   ///< in processing order
  bool stopped = false;
};

/// Outcome of processing one task.
struct TaskOutcome {
  FetchRecord record;
  std::optional<DisplayedDoc> displayed;
  std::vector<web::Url> links;  ///< all extracted links; expansion filters them
  concept_tree::HistoryWindow child_history;
};

/// Fetches, parses and ranks one task. `chain` is the query's ancestor chain.
/// `progress` hears connecting, parsing and ranking as they begin.
TaskOutcome process_task(const SpiderTask& task, web::Fetcher& fetcher,
                         const std::vector<std::vector<std::string>>& chain, const SearchRequest& request,
                         const std::function<void(TaskState)>& progress = {});

/// Best-first crawl. Up to max_parallel_fetches tasks are taken from the
/// frontier in priority order and processed concurrently; their outcomes are
/// then applied in that same order, so a run is reproducible for a fixed
/// corpus and configuration. A URL is enqueued at most once per search.
SearchReport run_search(const SearchRequest& request, web::Fetcher& fetcher, const SearchObserver& observer = {},
                        const StopSignal* stop = nullptr);

}  // namespace hcrawl::spider
