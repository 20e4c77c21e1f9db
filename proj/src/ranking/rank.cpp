#include "hcrawl/ranking/rank.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <unordered_set>

#include "hcrawl/error.hpp"
#include "hcrawl/text/similarity.hpp"

namespace hcrawl::ranking {

namespace {

struct Occurrences {
  std::vector<std::size_t> positions;  // ascending
  double best = 0.0;
  double mass = 0.0;  // H: sum of significant similarities
};

std::size_t min_distance(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const std::size_t d = a[i] > b[j] ? a[i] - b[j] : b[j] - a[i];
    best = std::min(best, d);
    if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return best;
}

}  // namespace

void RankParams::validate() const {
  if (!(k0 > 0.0)) throw DomainError("rank params: k0 must be positive");
  if (!(k1 > 0.0)) throw DomainError("rank params: k1 must be positive");
  if (!(k5 >= 1.0)) throw DomainError("rank params: k5 must be at least 1");
  if (!(ts >= 0.0 && ts < 1.0)) throw DomainError("rank params: ts must lie in [0, 1)");
}

std::vector<std::string> unique_words(const std::vector<std::string>& words) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& w : words) {
    if (seen.insert(w).second) out.push_back(w);
  }
  return out;
}

RankBreakdown rank_breakdown(const text::WordSeq& doc, const std::vector<std::string>& query,
                             const RankParams& params) {
  const std::vector<std::string> words = unique_words(query);
  if (words.empty()) throw DomainError("rank: query must contain at least one word");
  for (const auto& w : words) {
    if (w.empty()) throw DomainError("rank: query words must be nonempty");
  }

  std::vector<Occurrences> occ(words.size());
  for (std::size_t pos = 0; pos < doc.size(); ++pos) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      const double s = text::sim(words[i], doc[pos]);
      if (s > params.ts) {
        occ[i].positions.push_back(pos);
        occ[i].best = std::max(occ[i].best, s);
        occ[i].mass += s;
      }
    }
  }

  RankBreakdown r;
  std::vector<const Occurrences*> present;
  for (const auto& o : occ) {
    if (o.positions.empty()) continue;
    present.push_back(&o);
    r.np += o.best;
    // sum_{j=1..floor(H)} 2^-j
    r.nt += 1.0 - std::ldexp(1.0, -static_cast<int>(std::min(std::floor(o.mass), 1074.0)));
  }
  r.ns = static_cast<int>(present.size());

  const double n_words = static_cast<double>(words.size());
  r.b0 = params.k2 * r.np / n_words;
  r.f0 = params.k3 * r.nt / n_words;

  if (r.ns >= 2) {
    for (std::size_t i = 0; i + 1 < present.size(); ++i) {
      for (std::size_t j = i + 1; j < present.size(); ++j) {
        const double d = static_cast<double>(min_distance(present[i]->positions, present[j]->positions));
        r.pair_distance_sum += std::min(d, params.k5);
      }
    }
    double denominator = 0.0;
    for (int k = 0; k < r.ns; ++k) denominator += r.np - k;
    if (denominator > 0.0) {
      // The normalized distance is capped at k5 so that d0 stays in [0, k4].
      const double spread = std::min(r.pair_distance_sum / denominator, params.k5);
      r.d0 = params.k4 * (params.k5 - spread) / params.k5;
    }
  }

  r.f = r.b0 + r.f0 + r.d0;
  r.score = params.k0 * r.f / (r.f + params.k1);
  return r;
}

double rank(const text::WordSeq& doc, const std::vector<std::string>& query,
            const RankParams& params) {
  return rank_breakdown(doc, query, params).score;
}

}  // namespace hcrawl::ranking
