#include "hcrawl/sim/locality.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "hcrawl/error.hpp"

namespace hcrawl::sim {

namespace {

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

struct Latent {
  std::vector<double> z;
  std::vector<std::size_t> by_z;  // node ids sorted by z
};

Latent draw_latent(const LocalityParams& p) {
  std::mt19937_64 rng(p.seed);
  std::normal_distribution<double> normal;
  Latent l;
  l.z.resize(p.nodes);
  for (auto& z : l.z) z = normal(rng);
  l.by_z.resize(p.nodes);
  for (std::size_t i = 0; i < p.nodes; ++i) l.by_z[i] = i;
  std::sort(l.by_z.begin(), l.by_z.end(), [&](std::size_t a, std::size_t b) { return l.z[a] < l.z[b]; });
  return l;
}

Webgraph build(const LocalityParams& p, const Latent& latent, double coupling) {
  Webgraph g;
  for (std::size_t i = 0; i < p.nodes; ++i) {
    const double r = std::pow(standard_normal_cdf(latent.z[i]), p.skew);
    g.add_node("n" + std::to_string(i), std::clamp(r, 0.0, 1.0));
  }
  std::vector<double> sorted_z(p.nodes);
  for (std::size_t k = 0; k < p.nodes; ++k) sorted_z[k] = latent.z[latent.by_z[k]];

  std::mt19937_64 rng(p.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  const auto base = static_cast<std::size_t>(std::floor(p.avg_degree));
  const double extra = p.avg_degree - static_cast<double>(base);
  const double spread = std::sqrt(std::max(0.0, 1.0 - coupling * coupling));

  for (std::size_t src = 0; src < p.nodes; ++src) {
    const std::size_t degree = base + (unit(rng) < extra ? 1 : 0);
    for (std::size_t e = 0; e < degree; ++e) {
      const double target = coupling * latent.z[src] + spread * normal(rng);
      // Walk outwards from the insertion point to the nearest admissible node.
      auto hi = static_cast<std::ptrdiff_t>(
          std::lower_bound(sorted_z.begin(), sorted_z.end(), target) - sorted_z.begin());
      auto lo = hi - 1;
      const auto n = static_cast<std::ptrdiff_t>(p.nodes);
      while (lo >= 0 || hi < n) {
        std::ptrdiff_t pick;
        if (lo < 0) {
          pick = hi++;
        } else if (hi >= n) {
          pick = lo--;
        } else if (target - sorted_z[lo] <= sorted_z[hi] - target) {
          pick = lo--;
        } else {
          pick = hi++;
        }
        const std::size_t dst = latent.by_z[static_cast<std::size_t>(pick)];
        if (dst != src && !g.has_edge(src, dst)) {
          g.add_edge(src, dst);
          break;
        }
      }
    }
  }
  return g;
}

}  // namespace

double pearson(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 2) throw DomainError("pearson: need at least two samples");
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : samples) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(samples.size());
  my /= static_cast<double>(samples.size());
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (const auto& [x, y] : samples) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) throw DomainError("pearson: zero variance");
  return sxy / std::sqrt(sxx * syy);
}

double linked_pair_correlation(const Webgraph& g) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(g.edge_count());
  for (const auto& [y, x] : g.edges()) pairs.emplace_back(g.r(y), g.r(x));
  return pearson(pairs);
}

Webgraph generate_locality_graph(const LocalityParams& p) {
  if (p.nodes < 2) throw GenerationError("locality graph: need at least two nodes");
  if (!(p.rho >= 0.0 && p.rho <= 1.0)) throw GenerationError("locality graph: rho must lie in [0, 1]");
  if (!(p.avg_degree > 0.0) || std::ceil(p.avg_degree) > static_cast<double>(p.nodes - 1)) {
    throw GenerationError("locality graph: average degree must lie in (0, nodes - 1]");
  }
  if (!(p.skew > 0.0)) throw GenerationError("locality graph: skew must be positive");

  const Latent latent = draw_latent(p);
  auto measure = [&](double coupling) {
    Webgraph g = build(p, latent, coupling);
    double c = 0.0;
    try {
      c = linked_pair_correlation(g);
    } catch (const DomainError&) {
      throw GenerationError("locality graph: correlation undefined for this configuration");
    }
    return std::pair{std::move(g), c};
  };

  auto [best, best_corr] = measure(0.0);
  if (best_corr >= p.rho) return best;

  double lo = 0.0;
  double hi = 0.999;
  for (int iter = 0; iter < 30 && std::abs(best_corr - p.rho) > 1e-3; ++iter) {
    const double mid = 0.5 * (lo + hi);
    auto [g, c] = measure(mid);
    if (std::abs(c - p.rho) < std::abs(best_corr - p.rho)) {
      best = std::move(g);
      best_corr = c;
    }
    if (c < p.rho) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (std::abs(best_corr - p.rho) > 0.1) {
    throw GenerationError("locality graph: cannot reach correlation " + std::to_string(p.rho) +
                          " (closest " + std::to_string(best_corr) + ")");
  }
  return best;
}

std::vector<double> uniform_buckets(double lo, double hi, std::size_t count) {
  if (count == 0 || !(hi > lo)) throw DomainError("uniform_buckets: need hi > lo and count > 0");
  std::vector<double> edges(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count);
  }
  edges.back() = hi;
  return edges;
}

ConditionalHistogram conditional_rank_histogram(
    const std::vector<std::pair<double, double>>& linked_pairs, const std::vector<double>& edges) {
  if (edges.size() < 2) throw DomainError("histogram: need at least one bucket");
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1])) throw DomainError("histogram: bucket edges must increase strictly");
  }
  const std::size_t b = edges.size() - 1;
  auto bucket_of = [&](double v) {
    if (!(v >= edges.front() && v <= edges.back())) {
      throw DomainError("histogram: value " + std::to_string(v) + " outside the bucket range");
    }
    if (v == edges.back()) return b - 1;
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    return static_cast<std::size_t>(it - edges.begin()) - 1;
  };

  std::vector<std::vector<std::size_t>> counts(b, std::vector<std::size_t>(b, 0));
  std::vector<std::size_t> column_totals(b, 0);
  for (const auto& [y, x] : linked_pairs) {
    const std::size_t s = bucket_of(y);
    const std::size_t t = bucket_of(x);
    ++counts[s][t];
    ++column_totals[t];
  }

  ConditionalHistogram h;
  h.edges = edges;
  h.rows.resize(b);
  h.row_counts.assign(b, 0);
  h.marginal.assign(b, 0.0);
  for (std::size_t s = 0; s < b; ++s) {
    std::size_t total = 0;
    for (std::size_t c : counts[s]) total += c;
    h.row_counts[s] = total;
    if (total == 0) continue;
    std::vector<double> row(b);
    for (std::size_t t = 0; t < b; ++t) {
      row[t] = static_cast<double>(counts[s][t]) / static_cast<double>(total);
    }
    h.rows[s] = std::move(row);
  }
  if (!linked_pairs.empty()) {
    for (std::size_t t = 0; t < b; ++t) {
      h.marginal[t] = static_cast<double>(column_totals[t]) / static_cast<double>(linked_pairs.size());
    }
  }
  return h;
}

ConditionalHistogram conditional_rank_histogram(const Webgraph& g, const std::vector<double>& edges) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(g.edge_count());
  for (const auto& [y, x] : g.edges()) pairs.emplace_back(g.r(y), g.r(x));
  return conditional_rank_histogram(pairs, edges);
}

}  // namespace hcrawl::sim
