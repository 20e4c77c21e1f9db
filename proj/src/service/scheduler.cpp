#include "hcrawl/service/scheduler.hpp"

#include <set>

#include <spdlog/spdlog.h>

namespace hcrawl::service {

std::vector<ScheduleDecision> plan_schedule(std::vector<ScheduleEntry>& entries, std::int64_t now,
                                            const std::function<bool(NodeId)>& running) {
  std::vector<ScheduleDecision> out;
  std::set<NodeId> launched;
  for (auto& e : entries) {
    if (!e.enabled || e.next_run > now) continue;
    const std::int64_t missed = (now - e.next_run) / e.interval_seconds + 1;
    e.next_run += missed * e.interval_seconds;
    const bool busy = launched.contains(e.query) || (running && running(e.query));
    if (busy) {
      spdlog::info("scheduled search for query {} skipped: already running", e.query);
    } else {
      launched.insert(e.query);
    }
    out.push_back({e.query, !busy});
  }
  return out;
}

}  // namespace hcrawl::service
