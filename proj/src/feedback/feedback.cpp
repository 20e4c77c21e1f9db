#include "hcrawl/feedback/feedback.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hcrawl/error.hpp"
#include "hcrawl/text/similarity.hpp"

namespace hcrawl::feedback {
namespace {

double mean_rank(const std::vector<text::WordSeq>& docs, const std::vector<std::string>& query,
                 const ranking::RankParams& rp) {
  if (docs.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& d : docs) sum += ranking::rank(d, query, rp);
  return sum / static_cast<double>(docs.size());
}

}  // namespace

void FeedbackInput::validate() const {
  if (good.empty()) throw DomainError("feedback needs at least one hot document");
  if (query.empty()) throw DomainError("feedback needs a query");
  if (k_prime < 1 || k < k_prime) throw DomainError("feedback needs k >= k' >= 1");
  if (window < 1) throw DomainError("feedback window must be at least 1");
}

std::vector<Candidate> extract_candidates(const FeedbackInput& in, const text::NoiseWordSet& noise,
                                          const ranking::RankParams& rp) {
  in.validate();
  const auto query = ranking::unique_words(in.query);
  const std::set<std::string> query_set(query.begin(), query.end());
  std::map<std::string, Candidate> found;

  for (const auto& doc : in.good) {
    std::vector<bool> anchor(doc.size(), false);
    for (std::size_t i = 0; i < doc.size(); ++i) {
      anchor[i] = std::any_of(query.begin(), query.end(), [&](const std::string& w) { return text::sim(w, doc[i]) > rp.ts; });
    }
    for (std::size_t j = 0; j < doc.size(); ++j) {
      std::size_t best = 0;
      for (std::size_t d = 1; d <= in.window && best == 0; ++d) {
        if ((j >= d && anchor[j - d]) || (j + d < doc.size() && anchor[j + d])) best = d;
      }
      if (best == 0) continue;
      const std::string& word = doc[j];
      if (query_set.contains(word) || noise.contains(word)) continue;
      auto [it, fresh] = found.try_emplace(word, Candidate{word, best, 0});
      it->second.min_proximity = std::min(it->second.min_proximity, best);
      ++it->second.count;
    }
  }

  std::vector<Candidate> out;
  for (auto& [w, c] : found) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.min_proximity != b.min_proximity) return a.min_proximity < b.min_proximity;
    if (a.count != b.count) return a.count > b.count;
    return a.word < b.word;
  });
  if (out.size() > in.k) out.resize(in.k);
  return out;
}

double discriminating_power(const std::string& t, const FeedbackInput& in, const ranking::RankParams& rp) {
  std::vector<std::string> extended = in.query;
  extended.push_back(t);
  return mean_rank(in.good, extended, rp) - mean_rank(in.bad, extended, rp);
}

std::vector<SuggestedWord> suggest(const FeedbackInput& in, const text::NoiseWordSet& noise,
                                   const ranking::RankParams& rp) {
  std::vector<SuggestedWord> out;
  for (const auto& c : extract_candidates(in, noise, rp)) {
    out.push_back({c.word, discriminating_power(c.word, in, rp), c.min_proximity});
  }
  std::sort(out.begin(), out.end(), [](const SuggestedWord& a, const SuggestedWord& b) {
    if (a.dp != b.dp) return a.dp > b.dp;
    if (a.min_proximity != b.min_proximity) return a.min_proximity < b.min_proximity;
    return a.word < b.word;
  });
  if (out.size() > in.k_prime) out.resize(in.k_prime);
  return out;
}

}  // namespace hcrawl::feedback
