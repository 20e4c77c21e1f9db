#include "hcrawl/sim/metrics.hpp"

#include "hcrawl/error.hpp"

namespace hcrawl::sim {

double metrics_saving(std::size_t total_docs, std::size_t explored) {
  if (total_docs == 0) throw DomainError("saving: empty collection");
  if (explored > total_docs) throw DomainError("saving: explored more documents than exist");
  return static_cast<double>(total_docs - explored) / static_cast<double>(total_docs);
}

double metrics_recall(const std::set<std::string>& found, const std::set<std::string>& top) {
  if (top.empty()) throw DomainError("recall: empty reference set");
  std::size_t hits = 0;
  for (const auto& doc : top) hits += found.contains(doc) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(top.size());
}

double metrics_improvement(const std::map<int, std::size_t>& hits_per_level) {
  std::size_t deep = 0;
  for (const auto& [level, hits] : hits_per_level) {
    if (level > 1) deep += hits;
  }
  return static_cast<double>(deep) / 10.0;
}

}  // namespace hcrawl::sim
