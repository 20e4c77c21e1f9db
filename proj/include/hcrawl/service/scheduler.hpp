#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hcrawl/service/session.hpp"

namespace hcrawl::service {

struct ScheduleDecision {
  NodeId query = 0;
  bool launched = false;  ///< false: skipped because a search for it was running or just launched
};

/// Decides which due entries launch at `now` and advances their next run past
/// `now`. At most one launch per query, never while `running(query)` holds.
std::vector<ScheduleDecision> plan_schedule(std::vector<ScheduleEntry>& entries, std::int64_t now,
                                            const std::function<bool(NodeId)>& running);

}  // namespace hcrawl::service
