#include "hcrawl/sim/fixtures.hpp"

namespace hcrawl::sim::fixtures {

Webgraph single_visit_counterexample() {
  Webgraph g;
  g.add_node("u", 0.8);
  g.add_node("a", 0.45);
  g.add_node("b", 0.9);
  g.add_node("c", 0.5);
  g.add_node("d", 0.2);
  g.add_node("v", 0.9);
  g.add_edge("u", "a");
  g.add_edge("u", "c");
  g.add_edge("a", "b");
  g.add_edge("b", "d");
  g.add_edge("c", "d");
  g.add_edge("d", "v");
  return g;
}

Webgraph two_cycle() {
  Webgraph g;
  g.add_node("x", 0.6);
  g.add_node("y", 0.6);
  g.add_edge("x", "y");
  g.add_edge("y", "x");
  return g;
}

Webgraph revisit_counterexample() {
  Webgraph g;
  g.add_node("u", 0.5);
  g.add_node("z", 1.0);
  g.add_node("y", 0.3);
  g.add_node("q", 0.5);
  g.add_node("x", 0.7);
  g.add_node("v", 0.4);
  g.add_node("w", 0.9);
  g.add_edge("u", "z");
  g.add_edge("z", "y");
  g.add_edge("y", "v");
  g.add_edge("u", "q");
  g.add_edge("q", "x");
  g.add_edge("x", "v");
  g.add_edge("v", "w");
  return g;
}

}  // namespace hcrawl::sim::fixtures
