#include "hcrawl/sim/explore.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>

#include "hcrawl/error.hpp"

namespace hcrawl::sim {

namespace {

template <typename WindowItem>
struct Entry {
  double h;
  std::uint64_t seq;
  std::vector<WindowItem> window;
  NodeIndex node;
};

template <typename WindowItem>
struct ByPriority {
  bool operator()(const Entry<WindowItem>& a, const Entry<WindowItem>& b) const {
    if (a.h != b.h) return a.h < b.h;
    return a.seq > b.seq;
  }
};

template <typename WindowItem>
class Frontier {
 public:
  void push(std::vector<WindowItem> window, NodeIndex node, double h) {
    queue_.push(Entry<WindowItem>{h, next_seq_++, std::move(window), node});
  }
  Entry<WindowItem> pop() {
    Entry<WindowItem> e = queue_.top();
    queue_.pop();
    return e;
  }
  bool empty() const { return queue_.empty(); }
  std::size_t size() const { return queue_.size(); }

 private:
  std::priority_queue<Entry<WindowItem>, std::vector<Entry<WindowItem>>, ByPriority<WindowItem>>
      queue_;
  std::uint64_t next_seq_ = 0;
};

template <typename T>
std::vector<T> slide(const std::vector<T>& window, T item, std::size_t m) {
  std::vector<T> next;
  next.reserve(m);
  const std::size_t keep = window.size() >= m ? m - 1 : window.size();
  next.insert(next.end(), window.end() - static_cast<std::ptrdiff_t>(keep), window.end());
  next.push_back(item);
  return next;
}

double mean(std::span<const double> values) {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

void check(const Webgraph& g, NodeIndex start, const ExploreConfig& cfg) {
  if (start >= g.node_count()) throw LookupError("start node not in graph");
  if (cfg.m == 0) throw DomainError("explore: m must be positive");
}

ExploreTrace make_trace(const Webgraph& g) {
  ExploreTrace t;
  t.visits.assign(g.node_count(), 0);
  t.enqueues.assign(g.node_count(), 0);
  return t;
}

}  // namespace

bool ExploreTrace::emitted(NodeIndex n) const {
  return std::find(output.begin(), output.end(), n) != output.end();
}

std::size_t ExploreTrace::total_visits() const {
  return std::accumulate(visits.begin(), visits.end(), std::size_t{0});
}

ExploreTrace explore_single_visit(const Webgraph& g, NodeIndex start, const ExploreConfig& cfg) {
  check(g, start, cfg);
  ExploreTrace trace = make_trace(g);
  std::vector<bool> marked(g.node_count(), false);
  std::vector<bool> emitted(g.node_count(), false);

  Frontier<NodeIndex> q;
  marked[start] = true;
  q.push({start}, start, g.r(start));
  ++trace.enqueues[start];
  trace.frontier_peak = 1;

  while (!q.empty()) {
    if (cfg.max_steps != 0 && trace.steps == cfg.max_steps) {
      trace.truncated = true;
      break;
    }
    const auto entry = q.pop();
    ++trace.steps;
    ++trace.visits[entry.node];
    if (g.r(entry.node) > cfg.dt && !emitted[entry.node]) {
      emitted[entry.node] = true;
      trace.output.push_back(entry.node);
    }
    if (entry.h > cfg.ht) {
      for (NodeIndex v : g.successors(entry.node)) {
        if (marked[v]) continue;
        marked[v] = true;
        auto window = slide(entry.window, v, cfg.m);
        const double h = h_m(window, g, cfg.m);
        q.push(std::move(window), v, h);
        ++trace.enqueues[v];
      }
      trace.frontier_peak = std::max(trace.frontier_peak, q.size());
    }
  }
  return trace;
}

ExploreTrace explore_revisit(const Webgraph& g, NodeIndex start, const ExploreConfig& cfg,
                             const std::vector<double>& seed_window) {
  check(g, start, cfg);
  ExploreTrace trace = make_trace(g);
  std::vector<double> best(g.node_count(), 0.0);  // M
  std::vector<bool> emitted(g.node_count(), false);

  Frontier<double> q;
  std::vector<double> initial;
  for (double v : seed_window) initial = slide(initial, v, cfg.m);
  initial = slide(initial, g.r(start), cfg.m);
  const double h0 = mean(initial);
  q.push(std::move(initial), start, h0);
  ++trace.enqueues[start];
  trace.frontier_peak = 1;

  while (!q.empty()) {
    if (cfg.max_steps != 0 && trace.steps == cfg.max_steps) {
      trace.truncated = true;
      break;
    }
    const auto entry = q.pop();
    ++trace.steps;
    ++trace.visits[entry.node];
    if (g.r(entry.node) > cfg.dt && !emitted[entry.node]) {
      emitted[entry.node] = true;
      trace.output.push_back(entry.node);
    }
    if (entry.h > cfg.ht) {
      for (NodeIndex v : g.successors(entry.node)) {
        if (!(best[v] < entry.h)) continue;
        best[v] = entry.h;
        auto window = slide(entry.window, g.r(v), cfg.m);
        const double h = mean(window);
        q.push(std::move(window), v, h);
        ++trace.enqueues[v];
      }
      trace.frontier_peak = std::max(trace.frontier_peak, q.size());
    }
  }
  return trace;
}

}  // namespace hcrawl::sim
