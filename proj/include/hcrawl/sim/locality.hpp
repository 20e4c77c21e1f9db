#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hcrawl/sim/webgraph.hpp"

namespace hcrawl::sim {

struct LocalityParams {
  std::size_t nodes = 1000;
  double avg_degree = 8.0;
  /// Target Pearson correlation of r between linking and linked nodes.
  double rho = 0.54;
  std::uint64_t seed = 1;
  /// r = u^skew for a uniform u, so that high-quality nodes are rare.
  double skew = 3.0;
};

/// Synthetic webgraph in which linked nodes have correlated quality. Each node
/// draws a hidden Gaussian coordinate z and gets r = Phi(z)^skew. An edge from
/// s lands on the node whose z is nearest to a*z_s + sqrt(1 - a^2)*noise; the
/// coupling a is searched so the measured linked-pair correlation matches rho.
/// Deterministic for a fixed seed. Throws GenerationError when the request is
/// infeasible.
Webgraph generate_locality_graph(const LocalityParams& params);

/// Pearson correlation between r(Y) and r(X) over all edges Y -> X.
double linked_pair_correlation(const Webgraph& g);

/// Pearson correlation of paired samples. Throws DomainError when fewer than
/// two samples or either side has zero variance.
double pearson(const std::vector<std::pair<double, double>>& samples);

/// Estimated P(X in bucket t | Y in bucket s) over (Y, X) value pairs.
struct ConditionalHistogram {
  std::vector<double> edges;  ///< bucket i covers [edges[i], edges[i+1]); the last one is closed
  /// One row per Y bucket; empty when no pair has Y in that bucket.
  std::vector<std::optional<std::vector<double>>> rows;
  std::vector<std::size_t> row_counts;
  /// Distribution of X over all pairs.
  std::vector<double> marginal;

  std::size_t buckets() const noexcept { return edges.size() - 1; }
};

/// Throws DomainError unless `edges` has at least two strictly increasing
/// values, and when a sample falls outside [edges.front(), edges.back()].
ConditionalHistogram conditional_rank_histogram(
    const std::vector<std::pair<double, double>>& linked_pairs, const std::vector<double>& edges);

/// Pairs (r(Y), r(X)) over every edge Y -> X of the graph.
ConditionalHistogram conditional_rank_histogram(const Webgraph& g, const std::vector<double>& edges);

/// `count` equal-width buckets over [lo, hi].
std::vector<double> uniform_buckets(double lo, double hi, std::size_t count);

}  // namespace hcrawl::sim
