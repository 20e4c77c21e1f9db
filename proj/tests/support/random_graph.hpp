#pragma once

#include <cmath>
#include <random>
#include <string>

#include "hcrawl/sim/webgraph.hpp"

namespace hcrawl::testing {

// Random directed graph, self-loops and cycles allowed, r uniform on [0, 1].
inline sim::Webgraph random_graph(std::mt19937_64& rng, std::size_t max_nodes, double max_density = 0.5) {
  std::uniform_int_distribution<std::size_t> count(1, max_nodes);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = count(rng);
  const double density = unit(rng) * max_density;
  sim::Webgraph g;
  for (std::size_t i = 0; i < n; ++i) {
    // Round to two decimals so window means tie now and then.
    g.add_node("n" + std::to_string(i), std::round(unit(rng) * 100.0) / 100.0);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (unit(rng) < density) g.add_edge(a, b);
    }
  }
  return g;
}

}  // namespace hcrawl::testing
