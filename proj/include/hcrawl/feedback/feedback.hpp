#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hcrawl/ranking/rank.hpp"
#include "hcrawl/text/noise_words.hpp"
#include "hcrawl/text/tokenizer.hpp"

namespace hcrawl::feedback {

struct FeedbackInput {
  std::vector<text::WordSeq> good;  ///< marked hot
  std::vector<text::WordSeq> bad;   ///< marked cold, may be empty
  std::vector<std::string> query;
  std::size_t k = 50;        ///< candidate pool size
  std::size_t k_prime = 10;  ///< number of suggestions
  std::size_t window = 10;   ///< proximity radius in words

  /// Throws DomainError unless good is nonempty, the query is nonempty,
  /// k >= k_prime >= 1 and window >= 1.
  void validate() const;
};

struct Candidate {
  std::string word;
  std::size_t min_proximity = 0;  ///< closest distance to a significant query occurrence
  std::size_t count = 0;          ///< occurrences within the window of one
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct SuggestedWord {
  std::string word;
  double dp = 0.0;
  std::size_t min_proximity = 0;
  friend bool operator==(const SuggestedWord&, const SuggestedWord&) = default;
};

/// Non-noise words outside the query found within `window` words of a
/// significant query-word occurrence in a good document. Ordered by proximity,
/// then by descending count, then lexicographically; at most k.
std::vector<Candidate> extract_candidates(const FeedbackInput& in, const text::NoiseWordSet& noise,
                                          const ranking::RankParams& rp = {});

/// Mean rank of the good documents against query + t minus the same mean over
/// the bad documents (zero when there are none).
double discriminating_power(const std::string& t, const FeedbackInput& in, const ranking::RankParams& rp = {});

/// The k_prime candidates with the highest discriminating power; ties go to
/// the closer word, then lexicographic order.
std::vector<SuggestedWord> suggest(const FeedbackInput& in, const text::NoiseWordSet& noise,
                                   const ranking::RankParams& rp = {});

}  // namespace hcrawl::feedback
