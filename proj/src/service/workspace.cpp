#include "hcrawl/service/workspace.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "hcrawl/error.hpp"
#include "hcrawl/metasearch/dispatch.hpp"
#include "hcrawl/spider/page.hpp"
#include "hcrawl/text/noise_words.hpp"

namespace hcrawl::service {
namespace {

using nlohmann::json;
constexpr std::size_t kMaxStreamEvents = 5000;

std::shared_ptr<web::RoutingFetcher> corpus_routes(const Sources& sources) {
  auto routes = std::make_shared<web::RoutingFetcher>();
  if (sources.corpus_root.empty()) return routes;
  std::shared_ptr<web::LocalDirectoryFetcher> local;
  if (sources.corpus_base.empty()) {
    local = std::make_shared<web::LocalDirectoryFetcher>(sources.corpus_root);
  } else {
    auto base = web::normalize(sources.corpus_base);
    if (!base) throw DomainError("corpus base is not an absolute URL: " + sources.corpus_base);
    local = std::make_shared<web::LocalDirectoryFetcher>(sources.corpus_root, *base);
  }
  routes->route(local->base().str(), local);
  return routes;
}

}  // namespace

std::shared_ptr<web::Fetcher> make_document_fetcher(const Sources& sources) {
  auto routes = corpus_routes(sources);
  if (sources.live) routes->fallback(std::make_shared<web::HttpFetcher>());
  return routes;
}

std::shared_ptr<web::Fetcher> make_engine_fetcher(const Sources& sources) {
  auto routes = corpus_routes(sources);
  routes->fallback(std::make_shared<web::HttpFetcher>());
  return routes;
}

Workspace::Workspace(Session session, std::optional<std::filesystem::path> file)
    : session_(std::move(session)), file_(std::move(file)) {}

Workspace::~Workspace() {
  {
    std::lock_guard lock(mu_);
    for (auto& [q, r] : running_) r.stop->request_stop();
  }
  for (auto& t : workers_) {
    if (t.joinable()) t.join();
  }
}

Session Workspace::snapshot() const {
  std::lock_guard lock(mu_);
  return session_;
}

void Workspace::persist_locked() {
  if (file_) save_session(session_, *file_);
}

void Workspace::publish_locked(NodeId query, std::string type, json data) {
  auto& stream = streams_[query];
  stream.events.push_back({stream.next_seq++, std::move(type), std::move(data)});
  if (stream.events.size() > kMaxStreamEvents) {
    stream.events.erase(stream.events.begin(), stream.events.begin() + (stream.events.size() - kMaxStreamEvents));
  }
  changed_.notify_all();
}

void Workspace::require_query_locked(NodeId query) const {
  const auto& node = session_.tree.node(query);  // LookupError when absent
  if (node.kind != concept_tree::NodeKind::kQuery) {
    throw DomainError("node " + std::to_string(query) + " is not a query");
  }
}

void Workspace::replace_tree(concept_tree::ConceptTree tree) {
  std::lock_guard lock(mu_);
  session_.tree = std::move(tree);
  persist_locked();
}

NodeId Workspace::add_node(NodeId parent, concept_tree::NodeKind kind, std::vector<std::string> words) {
  std::lock_guard lock(mu_);
  const NodeId id = kind == concept_tree::NodeKind::kQuery ? session_.tree.add_query(parent, std::move(words))
                                                           : session_.tree.add_concept(parent, std::move(words));
  persist_locked();
  return id;
}

void Workspace::remove_node(NodeId id) {
  std::lock_guard lock(mu_);
  if (!session_.tree.contains(id)) throw LookupError("no node " + std::to_string(id));
  session_.tree.remove(id);
  persist_locked();
}

std::shared_ptr<spider::StopSignal> Workspace::begin_search(NodeId query) {
  std::lock_guard lock(mu_);
  require_query_locked(query);
  if (running_.contains(query)) throw ConflictError("a search for query " + std::to_string(query) + " is running");
  auto stop = std::make_shared<spider::StopSignal>();
  running_[query] = {stop};
  publish_locked(query, "started", json::object());
  return stop;
}

SearchSummary Workspace::execute_search(NodeId query, std::shared_ptr<spider::StopSignal> stop) {
  SearchSummary summary;
  try {
    spider::SearchRequest req;
    Sources sources;
    {
      std::lock_guard lock(mu_);
      req.tree = session_.tree;
      req.config = session_.profile.spider;
      req.rank_params = session_.profile.rank;
      req.combined_params = session_.profile.combined;
      sources = session_.sources;
    }
    req.query = query;
    for (const auto& s : sources.seeds) req.seeds.push_back({s, "user"});
    if (!sources.wrappers.empty()) {
      auto engines = make_engine_fetcher(sources);
      const auto found = metasearch::dispatch(req.tree.node(query).words, sources.wrappers, *engines);
      for (const auto& f : found.failures) summary.seed_errors.push_back(f.engine + ": " + f.reason);
      for (const auto& c : found.candidates) req.seeds.push_back({c.url, c.engine});
    }
    auto fetcher = make_document_fetcher(sources);

    spider::SearchObserver obs;
    obs.on_result = [&](const spider::DisplayedDoc& d) {
      std::lock_guard lock(mu_);
      auto& list = session_.results[query];
      const auto it = std::find_if(list.begin(), list.end(), [&](const auto& x) { return x.url == d.url; });
      if (it == list.end()) {
        list.push_back(d);
        ++summary.new_results;
      } else {
        *it = d;
      }
      publish_locked(query, "result", doc_to_json(d));
    };
    obs.on_event = [&](const spider::SpiderEvent& e) {
      std::lock_guard lock(mu_);
      publish_locked(query, "status",
                     {{"taskId", e.task_id}, {"state", spider::to_string(e.state)}, {"happiness", e.happiness},
                      {"url", e.url}, {"depth", e.depth}});
    };
    const auto report = spider::run_search(req, *fetcher, obs, stop.get());
    summary.fetched = report.fetched.size();
    summary.stopped = report.stopped;
  } catch (...) {
    std::lock_guard lock(mu_);
    running_.erase(query);
    publish_locked(query, "finished", {{"error", true}});
    throw;
  }
  std::lock_guard lock(mu_);
  running_.erase(query);
  persist_locked();
  publish_locked(query, "finished",
                 {{"fetched", summary.fetched}, {"newResults", summary.new_results}, {"stopped", summary.stopped}});
  return summary;
}

SearchSummary Workspace::run_search(NodeId query) { return execute_search(query, begin_search(query)); }

void Workspace::start_search(NodeId query) {
  auto stop = begin_search(query);
  std::lock_guard lock(mu_);
  workers_.emplace_back([this, query, stop] {
    try {
      execute_search(query, stop);
    } catch (const std::exception& e) {
      spdlog::error("search for query {} failed: {}", query, e.what());
    }
  });
}

bool Workspace::stop_search(NodeId query) {
  std::lock_guard lock(mu_);
  const auto it = running_.find(query);
  if (it == running_.end()) return false;
  it->second.stop->request_stop();
  return true;
}

bool Workspace::running(NodeId query) const {
  std::lock_guard lock(mu_);
  return running_.contains(query);
}

void Workspace::wait_idle() {
  std::unique_lock lock(mu_);
  changed_.wait(lock, [&] { return running_.empty(); });
}

std::vector<spider::DisplayedDoc> Workspace::results(NodeId query) const {
  std::lock_guard lock(mu_);
  require_query_locked(query);
  const auto it = session_.results.find(query);
  return it == session_.results.end() ? std::vector<spider::DisplayedDoc>{} : it->second;
}

std::vector<StreamEvent> Workspace::events(NodeId query, std::uint64_t after, std::chrono::milliseconds wait) const {
  std::unique_lock lock(mu_);
  auto pending = [&] {
    const auto it = streams_.find(query);
    return it != streams_.end() && !it->second.events.empty() && it->second.events.back().seq > after;
  };
  changed_.wait_for(lock, wait, pending);
  std::vector<StreamEvent> out;
  if (const auto it = streams_.find(query); it != streams_.end()) {
    for (const auto& e : it->second.events) {
      if (e.seq > after) out.push_back(e);
    }
  }
  return out;
}

void Workspace::mark(const std::string& doc, std::optional<Mark> mark) {
  std::lock_guard lock(mu_);
  const auto* d = session_.find_doc(doc);
  if (!d) throw LookupError("no result with id " + doc);
  if (mark) {
    session_.marks[d->url] = *mark;
  } else {
    session_.marks.erase(d->url);
  }
  persist_locked();
}

DerivedQuery Workspace::run_feedback(NodeId query, std::size_t k, std::size_t k_prime, std::size_t window) {
  std::vector<std::string> hot;
  std::vector<std::string> cold;
  feedback::FeedbackInput in;
  Sources sources;
  ranking::RankParams rp;
  {
    std::lock_guard lock(mu_);
    require_query_locked(query);
    in.query = session_.tree.node(query).words;
    if (const auto it = session_.results.find(query); it != session_.results.end()) {
      for (const auto& d : it->second) {
        const auto m = session_.marks.find(d.url);
        if (m == session_.marks.end()) continue;
        (m->second == Mark::kHot ? hot : cold).push_back(d.url);
      }
    }
    sources = session_.sources;
    rp = session_.profile.rank;
  }
  if (hot.empty()) throw DomainError("mark at least one result of query " + std::to_string(query) + " as hot");
  in.k = k;
  in.k_prime = k_prime;
  in.window = window;

  auto fetcher = make_document_fetcher(sources);
  auto read = [&](const std::string& u, std::vector<text::WordSeq>& into) {
    const auto url = web::normalize(u);
    if (!url) return;
    const auto fetched = fetcher->fetch(*url);
    if (fetched.status != web::FetchStatus::kOk) {
      spdlog::warn("feedback: cannot refetch {}: {}", u, fetched.error);
      return;
    }
    into.push_back(spider::read_page(fetched, *url).words);
  };
  for (const auto& u : hot) read(u, in.good);
  for (const auto& u : cold) read(u, in.bad);
  if (in.good.empty()) throw DomainError("none of the hot documents could be fetched again");

  const auto suggestions = feedback::suggest(in, text::NoiseWordSet::english(), rp);
  if (suggestions.empty()) throw DomainError("no candidate words near the query terms in the hot documents");

  std::lock_guard lock(mu_);
  require_query_locked(query);
  std::vector<std::string> words = session_.tree.node(query).words;
  for (const auto& s : suggestions) words.push_back(s.word);
  const NodeId parent = session_.tree.node(query).parent.value_or(session_.tree.root());
  DerivedQuery dq{query, session_.tree.add_query(parent, std::move(words)), suggestions};
  session_.derived_queries.push_back(dq);
  persist_locked();
  return dq;
}

NodeId Workspace::enqueue(std::vector<std::string> words, std::optional<NodeId> parent) {
  NodeId id;
  {
    std::lock_guard lock(mu_);
    id = session_.tree.add_query(parent.value_or(session_.tree.root()), std::move(words));
    persist_locked();
  }
  start_search(id);
  return id;
}

void Workspace::add_schedule(ScheduleEntry entry) {
  entry.validate();
  std::lock_guard lock(mu_);
  require_query_locked(entry.query);
  session_.schedule.push_back(entry);
  persist_locked();
}

bool Workspace::remove_schedule(NodeId query) {
  std::lock_guard lock(mu_);
  const auto before = session_.schedule.size();
  std::erase_if(session_.schedule, [&](const ScheduleEntry& e) { return e.query == query; });
  persist_locked();
  return session_.schedule.size() != before;
}

std::vector<ScheduleDecision> Workspace::tick(std::int64_t now) {
  std::vector<ScheduleDecision> decisions;
  {
    std::lock_guard lock(mu_);
    decisions = plan_schedule(session_.schedule, now, [&](NodeId q) { return running_.contains(q); });
    if (!decisions.empty()) persist_locked();
  }
  for (auto& d : decisions) {
    if (!d.launched) continue;
    try {
      start_search(d.query);
    } catch (const std::exception& e) {
      spdlog::warn("scheduled search for query {} not started: {}", d.query, e.what());
      d.launched = false;
    }
  }
  return decisions;
}

void Workspace::set_profile(Profile profile) {
  profile.spider.validate();
  profile.rank.validate();
  profile.combined.validate();
  std::lock_guard lock(mu_);
  session_.profile = std::move(profile);
  persist_locked();
}

void Workspace::set_sources(Sources sources) {
  for (const auto& w : sources.wrappers) w.validate();
  std::lock_guard lock(mu_);
  session_.sources = std::move(sources);
  persist_locked();
}

}  // namespace hcrawl::service
