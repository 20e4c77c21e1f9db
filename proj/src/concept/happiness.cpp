#include "hcrawl/concept/happiness.hpp"

#include <algorithm>
#include <cmath>

#include "hcrawl/error.hpp"

namespace hcrawl::concept_tree {

void CombinedParams::validate() const {
  if (!(k6 > 0.0)) throw DomainError("combined params: k6 must be positive");
  if (!(k7 >= 0.0)) throw DomainError("combined params: k7 must be non-negative");
}

double level_candidate(double rank_value, std::size_t level, const CombinedParams& params) {
  const double damping = level == 0 ? 1.0 : params.k6;
  return rank_value / (static_cast<double>(level + 1) * damping);
}

CombinedScore combined_score(std::span<const double> ranks, const CombinedParams& params) {
  if (ranks.empty()) throw DomainError("combined_score: need at least the query's rank");
  for (std::size_t j = 0; j < ranks.size(); ++j) {
    const double c = level_candidate(ranks[j], j, params);
    if (c > params.k7) return {c, j};
  }
  const std::size_t last = ranks.size() - 1;
  return {level_candidate(ranks[last], last, params), last};
}

HistoryWindow::HistoryWindow(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw DomainError("history window capacity must be at least 1");
}

void HistoryWindow::push(HistoryEntry entry) {
  if (entries_.size() == capacity_) entries_.pop_front();
  entries_.push_back(entry);
}

HistoryWindow HistoryWindow::with(HistoryEntry entry) const {
  HistoryWindow copy = *this;
  copy.push(entry);
  return copy;
}

double happiness(const HistoryWindow& window, double initial) {
  if (window.empty()) return initial;
  double sum = 0.0;
  for (const auto& e : window.entries()) sum += e.combined_score;
  return sum / static_cast<double>(window.size());
}

}  // namespace hcrawl::concept_tree
