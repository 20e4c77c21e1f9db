#pragma once

#include <string>
#include <vector>

#include "hcrawl/text/tokenizer.hpp"

namespace hcrawl::ranking {

/// Constants of the bounded proximity rank function.
struct RankParams {
  double k0 = 1000.0;  ///< amplitude: the asymptote of rank
  double k1 = 10.0;    ///< controls how fast rank approaches k0
  double k2 = 10.0;    ///< presence weight
  double k3 = 1.0;     ///< frequency weight
  double k4 = 20.0;    ///< distance weight
  double k5 = 250.0;   ///< largest significant distance, in words
  double ts = 0.6;     ///< similarity above which an occurrence is significant

  /// Throws DomainError unless k0 > 0, k1 > 0, k5 >= 1 and 0 <= ts < 1.
  void validate() const;

  friend bool operator==(const RankParams&, const RankParams&) = default;
};

/// Every intermediate quantity of one rank evaluation.
struct RankBreakdown {
  double np = 0.0;  ///< sum over query words of the best significant similarity
  double nt = 0.0;  ///< damped frequency mass
  int ns = 0;       ///< query words with at least one significant occurrence
  double pair_distance_sum = 0.0;  ///< sum of min(d(i, j), k5) over present pairs
  double b0 = 0.0;
  double f0 = 0.0;
  double d0 = 0.0;
  double f = 0.0;
  double score = 0.0;
};

/// Query keywords with duplicates removed, first occurrence order kept.
std::vector<std::string> unique_words(const std::vector<std::string>& words);

/// Throws DomainError when `query` is empty.
RankBreakdown rank_breakdown(const text::WordSeq& doc, const std::vector<std::string>& query,
                             const RankParams& params = {});

double rank(const text::WordSeq& doc, const std::vector<std::string>& query,
            const RankParams& params = {});

}  // namespace hcrawl::ranking
