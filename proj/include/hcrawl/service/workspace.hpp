#pragma once

#include <condition_variable>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hcrawl/service/scheduler.hpp"
#include "hcrawl/service/session.hpp"
#include "hcrawl/spider/spider.hpp"
#include "hcrawl/web/fetcher.hpp"

namespace hcrawl::service {

/// Thrown when a search is started for a query that already has one running.
class ConflictError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One entry of a query's event stream.
struct StreamEvent {
  std::uint64_t seq = 0;
  std::string type;  ///< "status", "result" or "finished"
  nlohmann::json data;
};

struct SearchSummary {
  std::size_t fetched = 0;
  std::size_t new_results = 0;
  bool stopped = false;
  std::vector<std::string> seed_errors;  ///< engines that failed
};

/// Builds the document fetcher for a session's sources: the corpus directory
/// under its base URL, plus live HTTP when enabled.
std::shared_ptr<web::Fetcher> make_document_fetcher(const Sources& sources);
/// The fetcher used for engine result pages: the corpus route plus HTTP.
std::shared_ptr<web::Fetcher> make_engine_fetcher(const Sources& sources);

/// The session plus everything that acts on it. All operations are safe to
/// call from several threads; mutations persist to the session file, if any.
class Workspace {
 public:
  explicit Workspace(Session session, std::optional<std::filesystem::path> file = std::nullopt);
  ~Workspace();

  Session snapshot() const;

  void replace_tree(concept_tree::ConceptTree tree);
  NodeId add_node(NodeId parent, concept_tree::NodeKind kind, std::vector<std::string> words);
  void remove_node(NodeId id);

  /// Runs a search for `query` on the calling thread, merging results into
  /// the session. Throws ConflictError if one is already running.
  SearchSummary run_search(NodeId query);
  /// Starts run_search on a background thread.
  void start_search(NodeId query);
  /// Returns false when no search for `query` is running.
  bool stop_search(NodeId query);
  bool running(NodeId query) const;
  /// Blocks until no background search is running.
  void wait_idle();

  std::vector<spider::DisplayedDoc> results(NodeId query) const;
  /// Events with seq > after; waits up to `wait` for one to arrive.
  std::vector<StreamEvent> events(NodeId query, std::uint64_t after, std::chrono::milliseconds wait) const;

  /// `mark` empty clears. Throws LookupError for an unknown doc id.
  void mark(const std::string& doc, std::optional<Mark> mark);
  /// Builds hot/cold sets from the marked results of `query`, refetching the
  /// documents, and adds the suggestions as a new query next to it.
  DerivedQuery run_feedback(NodeId query, std::size_t k = 50, std::size_t k_prime = 10, std::size_t window = 10);
  /// Adds a query under the root (or `parent`) and starts searching it.
  NodeId enqueue(std::vector<std::string> words, std::optional<NodeId> parent = std::nullopt);

  void add_schedule(ScheduleEntry entry);
  bool remove_schedule(NodeId query);
  /// Launches due scheduled searches in the background.
  std::vector<ScheduleDecision> tick(std::int64_t now);

  void set_profile(Profile profile);
  void set_sources(Sources sources);

 private:
  struct Running {
    std::shared_ptr<spider::StopSignal> stop;
  };

  std::shared_ptr<spider::StopSignal> begin_search(NodeId query);
  SearchSummary execute_search(NodeId query, std::shared_ptr<spider::StopSignal> stop);
  struct Stream {
    std::vector<StreamEvent> events;
    std::uint64_t next_seq = 1;
  };

  void persist_locked();
  void publish_locked(NodeId query, std::string type, nlohmann::json data);
  void require_query_locked(NodeId query) const;

  mutable std::mutex mu_;
  mutable std::condition_variable changed_;
  Session session_;
  std::optional<std::filesystem::path> file_;
  std::map<NodeId, Running> running_;
  std::map<NodeId, Stream> streams_;
  std::vector<std::thread> workers_;
};

}  // namespace hcrawl::service
