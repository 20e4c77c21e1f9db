#pragma once

// Direct, unoptimized evaluation of the rank formula used as a test oracle.
// Shares no code with the library: its own prefix similarity, quadratic pair
// distances and an explicit 2^-j loop.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

namespace hcrawl::testing {

struct OracleRank {
  double np = 0, nt = 0, pair_sum = 0, d0 = 0, f = 0, score = 0;
  int ns = 0;
};

inline double oracle_sim(const std::string& a, const std::string& b) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  return std::pow(static_cast<double>(k) / static_cast<double>(a.size()), 4);
}

inline OracleRank oracle_rank(const std::vector<std::string>& doc, std::vector<std::string> query,
                              double k0 = 1000, double k1 = 10, double k2 = 10, double k3 = 1,
                              double k4 = 20, double k5 = 250, double ts = 0.6) {
  std::vector<std::string> uniq;
  for (auto& w : query) {
    if (std::find(uniq.begin(), uniq.end(), w) == uniq.end()) uniq.push_back(w);
  }
  OracleRank o;
  std::vector<std::vector<int>> pos;
  for (const auto& w : uniq) {
    double best = 0, h = 0;
    std::vector<int> p;
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const double s = oracle_sim(w, doc[i]);
      if (s > ts) {
        best = std::max(best, s);
        h += s;
        p.push_back(static_cast<int>(i));
      }
    }
    if (p.empty()) continue;
    o.np += best;
    for (int j = 1; j <= static_cast<int>(std::floor(h)); ++j) o.nt += std::pow(2.0, -j);
    pos.push_back(p);
  }
  o.ns = static_cast<int>(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      int best = 1 << 30;
      for (int a : pos[i]) {
        for (int b : pos[j]) best = std::min(best, std::abs(a - b));
      }
      o.pair_sum += std::min<double>(best, k5);
    }
  }
  double den = 0;
  for (int k = 0; k < o.ns; ++k) den += o.np - k;
  if (o.ns >= 2 && den > 0) o.d0 = k4 * (k5 - std::min(o.pair_sum / den, k5)) / k5;
  const double n = static_cast<double>(uniq.size());
  o.f = k2 * o.np / n + k3 * o.nt / n + o.d0;
  o.score = k0 * o.f / (o.f + k1);
  return o;
}

}  // namespace hcrawl::testing
