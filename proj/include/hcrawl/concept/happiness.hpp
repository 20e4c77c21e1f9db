#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

namespace hcrawl::concept_tree {

struct CombinedParams {
  double k6 = 2.0;    ///< damping base for ancestor levels
  double k7 = 100.0;  ///< a level's candidate must exceed this to be chosen

  void validate() const;
  friend bool operator==(const CombinedParams&, const CombinedParams&) = default;
};

struct CombinedScore {
  double score = 0.0;
  std::size_t level = 0;  ///< z: 0 is the query itself
};

/// Damped candidate r / ((level + 1) * k6^min(1, level)).
double level_candidate(double rank_value, std::size_t level, const CombinedParams& params);

/// `ranks[j]` is the rank of the document against the j-th element of the
/// ancestor chain. Picks the shallowest level whose candidate exceeds k7; if
/// none does, the root-most level is used. Throws DomainError on empty input.
CombinedScore combined_score(std::span<const double> ranks, const CombinedParams& params);

struct HistoryEntry {
  int depth = 0;
  double combined_score = 0.0;
  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

/// Bounded FIFO of the latest visited documents of a spider lineage.
class HistoryWindow {
 public:
  explicit HistoryWindow(std::size_t capacity = 5);

  /// Appends, evicting the oldest entry at capacity.
  void push(HistoryEntry entry);
  /// A copy with `entry` appended.
  HistoryWindow with(HistoryEntry entry) const;

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::deque<HistoryEntry>& entries() const noexcept { return entries_; }

  friend bool operator==(const HistoryWindow&, const HistoryWindow&) = default;

 private:
  std::size_t capacity_;
  std::deque<HistoryEntry> entries_;
};

/// Mean combined score over the entries present; `initial` when empty.
double happiness(const HistoryWindow& window, double initial = 0.0);

}  // namespace hcrawl::concept_tree
