#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>

namespace hcrawl::sim {

/// Fraction of the collection never explored: (|L| - |E|) / |L|.
double metrics_saving(std::size_t total_docs, std::size_t explored);

/// |F ∩ R| / |R|, where R is the oracle's top documents (ten by convention).
double metrics_recall(const std::set<std::string>& found, const std::set<std::string>& top);

/// Sum of hits found by spiders at depth level > 1, over ten.
double metrics_improvement(const std::map<int, std::size_t>& hits_per_level);

}  // namespace hcrawl::sim
