#include "hcrawl/spider/spider.hpp"

#include <future>
#include <map>
#include <mutex>
#include <queue>
#include <thread>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "hcrawl/error.hpp"
#include "hcrawl/spider/page.hpp"

namespace hcrawl::spider {
namespace {

// Spaces out requests to the same host.
class PolitenessGate {
 public:
  explicit PolitenessGate(std::chrono::milliseconds gap) : gap_(gap) {}

  void wait(const std::string& host) {
    if (gap_.count() <= 0) return;
    std::chrono::steady_clock::time_point slot;
    {
      std::lock_guard lock(mu_);
      const auto now = std::chrono::steady_clock::now();
      auto& next = next_[host];
      slot = std::max(now, next);
      next = slot + gap_;
    }
    std::this_thread::sleep_until(slot);
  }

 private:
  std::chrono::milliseconds gap_;
  std::mutex mu_;
  std::map<std::string, std::chrono::steady_clock::time_point> next_;
};

struct Queued {
  double priority;
  std::uint64_t seq;
  SpiderTask task;
};

struct ByPriority {
  bool operator()(const Queued& a, const Queued& b) const {
    if (a.priority != b.priority) return a.priority < b.priority;
    return a.seq > b.seq;
  }
};

}  // namespace

void SpiderConfig::validate() const {
  if (max_depth < 0) throw DomainError("maxDepth must be >= 0");
  if (window_size < 1) throw DomainError("windowSize must be >= 1");
  if (max_parallel_fetches < 1) throw DomainError("maxParallelFetches must be >= 1");
}

SpiderConfig SpiderConfig::pessimistic() { return {}; }

SpiderConfig SpiderConfig::optimistic() {
  SpiderConfig c;
  c.max_depth = kUnboundedDepth;
  c.happiness_threshold = 251.0;
  c.initial_happiness = 500.0;
  return c;
}

SpiderConfig SpiderConfig::profile(std::string_view name) {
  if (name == "pessimistic") return pessimistic();
  if (name == "optimistic") return optimistic();
  throw DomainError("unknown profile '" + std::string(name) + "'");
}

std::string_view to_string(TaskState state) {
  switch (state) {
    case TaskState::kWaiting: return "waiting";
    case TaskState::kConnecting: return "connecting";
    case TaskState::kParsing: return "parsing";
    case TaskState::kRanking: return "ranking";
    case TaskState::kDone: return "done";
    case TaskState::kDead: return "dead";
  }
  return "unknown";
}

TaskOutcome process_task(const SpiderTask& task, web::Fetcher& fetcher,
                         const std::vector<std::vector<std::string>>& chain, const SearchRequest& request,
                         const std::function<void(TaskState)>& progress) {
  auto report = [&](TaskState s) {
    if (progress) progress(s);
  };
  TaskOutcome out;
  out.record.url = task.url.str();
  out.record.depth = task.depth;
  out.child_history = task.history;

  report(TaskState::kConnecting);
  const web::FetchResult fetched = fetcher.fetch(task.url);
  out.record.status = fetched.status;
  if (fetched.status != web::FetchStatus::kOk) {
    spdlog::debug("{} {}: {}", web::to_string(fetched.status), out.record.url, fetched.error);
    return out;
  }

  report(TaskState::kParsing);
  Page page = read_page(fetched, task.url);

  report(TaskState::kRanking);
  std::vector<double> ranks;
  ranks.reserve(chain.size());
  for (const auto& words : chain) ranks.push_back(ranking::rank(page.words, words, request.rank_params));
  const auto combined = concept_tree::combined_score(ranks, request.combined_params);
  const double s = ranks.front();

  out.record.score = s;
  out.child_history = task.history.with({task.depth, combined.score});
  out.record.happiness = concept_tree::happiness(out.child_history, request.config.initial_happiness);
  out.links = std::move(page.links);
  if (s > request.config.display_threshold) {
    out.displayed = DisplayedDoc{out.record.url, s, combined.score, combined.level, task.depth,
                                 task.origin, std::move(page.title), std::move(page.abstract)};
  }
  return out;
}

SearchReport run_search(const SearchRequest& request, web::Fetcher& fetcher, const SearchObserver& observer,
                        const StopSignal* stop) {
  const SpiderConfig& cfg = request.config;
  cfg.validate();
  request.rank_params.validate();
  request.combined_params.validate();
  const auto chain = concept_tree::ancestor_chain(request.tree, request.query);

  std::mutex notify_mu;
  auto emit_event = [&](const SpiderTask& t, TaskState state, double h) {
    if (!observer.on_event) return;
    std::lock_guard lock(notify_mu);
    observer.on_event({t.id, state, h, t.url.str(), t.depth});
  };
  auto stopped = [&] { return stop && stop->stop_requested(); };

  SearchReport report;
  std::priority_queue<Queued, std::vector<Queued>, ByPriority> frontier;
  std::unordered_set<std::string> enqueued;
  std::unordered_set<std::string> displayed;
  std::uint64_t seq = 0;

  auto enqueue = [&](SpiderTask t) {
    t.id = ++seq;
    emit_event(t, TaskState::kWaiting, t.priority);
    frontier.push({t.priority, t.id, std::move(t)});
  };

  for (const auto& seed : request.seeds) {
    auto url = web::normalize(seed.url);
    if (!url) {
      spdlog::warn("seed '{}' is not an absolute http(s) or file URL", seed.url);
      continue;
    }
    if (!enqueued.insert(url->str()).second) continue;
    SpiderTask t;
    t.url = std::move(*url);
    t.history = concept_tree::HistoryWindow(cfg.window_size);
    t.origin = seed.origin;
    t.priority = cfg.initial_happiness;
    enqueue(std::move(t));
  }

  PolitenessGate gate(cfg.politeness);
  std::size_t fetch_budget = cfg.max_fetches == 0 ? SIZE_MAX : cfg.max_fetches;

  while (!frontier.empty() && !stopped() && fetch_budget > 0) {
    std::vector<SpiderTask> batch;
    while (!frontier.empty() && batch.size() < std::min(cfg.max_parallel_fetches, fetch_budget)) {
      batch.push_back(frontier.top().task);
      frontier.pop();
    }
    fetch_budget -= batch.size();

    std::vector<std::future<TaskOutcome>> work;
    for (const SpiderTask& t : batch) {
      work.push_back(std::async(std::launch::async, [&, &t = t] {
        if (request.allow && !request.allow(t.url)) {
          TaskOutcome refused;
          refused.record.url = t.url.str();
          refused.record.depth = t.depth;
          return refused;
        }
        gate.wait(t.url.host);
        try {
          return process_task(t, fetcher, chain, request, [&](TaskState s) { emit_event(t, s, t.priority); });
        } catch (const std::exception& e) {
          spdlog::warn("task {} failed: {}", t.url.str(), e.what());
          TaskOutcome failed;
          failed.record.url = t.url.str();
          failed.record.depth = t.depth;
          return failed;
        }
      }));
    }

    for (std::size_t i = 0; i < batch.size(); ++i) {
      const SpiderTask& t = batch[i];
      TaskOutcome outcome = work[i].get();
      if (outcome.record.status != web::FetchStatus::kOk) {
        report.fetched.push_back(std::move(outcome.record));
        emit_event(t, TaskState::kDead, t.priority);
        continue;
      }
      if (outcome.displayed && displayed.insert(outcome.displayed->url).second) {
        report.results.push_back(*outcome.displayed);
        if (observer.on_result) {
          std::lock_guard lock(notify_mu);
          observer.on_result(*outcome.displayed);
        }
      }
      const double h = outcome.record.happiness;
      if (t.depth < cfg.max_depth && h > cfg.happiness_threshold) {
        outcome.record.expanded = true;
        for (auto& link : outcome.links) {
          if (!enqueued.insert(link.str()).second) continue;
          SpiderTask child;
          child.url = std::move(link);
          child.depth = t.depth + 1;
          child.history = outcome.child_history;
          child.origin = t.origin;
          child.priority = h;
          enqueue(std::move(child));
        }
      }
      report.fetched.push_back(std::move(outcome.record));
      emit_event(t, TaskState::kDone, h);
    }
  }
  report.stopped = stopped();
  return report;
}

}  // namespace hcrawl::spider
