#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "../support/corpus.hpp"
#include "hcrawl/error.hpp"
#include "hcrawl/feedback/feedback.hpp"
#include "hcrawl/text/tokenizer.hpp"

namespace hcrawl::feedback {
namespace {

text::WordSeq doc(std::string_view s) { return text::tokenize(s, false); }

FeedbackInput planted_input() {
  const auto c = testing::make_feedback_corpus();
  FeedbackInput in;
  for (const auto& h : c.hot) in.good.push_back(doc(h));
  for (const auto& b : c.cold) in.bad.push_back(doc(b));
  in.query = c.query;
  return in;
}

std::vector<std::string> words_of(const std::vector<Candidate>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(c.word);
  return out;
}

TEST(ExtractCandidatesTest, OrderedByProximity) {
  FeedbackInput in;
  in.good = {doc("java tutorial monitor repair")};
  in.query = {"monitor"};
  in.window = 2;
  const auto c = extract_candidates(in, {});
  EXPECT_EQ(words_of(c), (std::vector<std::string>{"repair", "tutorial", "java"}));
  EXPECT_EQ(c[0].min_proximity, 1u);
  EXPECT_EQ(c[2].min_proximity, 2u);
}

TEST(ExtractCandidatesTest, NoiseAndQueryWordsExcluded) {
  FeedbackInput in;
  in.good = {doc("the monitor and repair of a monitor")};
  in.query = {"monitor", "repair"};
  const text::NoiseWordSet noise{"the", "and", "of", "a"};
  EXPECT_TRUE(extract_candidates(in, noise).empty());
}

TEST(ExtractCandidatesTest, WindowAndSignificance) {
  FeedbackInput in;
  in.good = {doc("monitoring one two three four far")};
  in.query = {"monitor"};
  in.window = 4;
  // "monitoring" is a significant occurrence of "monitor"; "far" is 5 away.
  EXPECT_EQ(words_of(extract_candidates(in, {})), (std::vector<std::string>{"one", "two", "three", "four"}));
  in.good = {doc("mon one")};
  EXPECT_TRUE(extract_candidates(in, {}).empty());
}

TEST(ExtractCandidatesTest, CountBreaksProximityTies) {
  FeedbackInput in;
  in.good = {doc("zeta java beta"), doc("beta java")};
  in.query = {"java"};
  EXPECT_EQ(words_of(extract_candidates(in, {})), (std::vector<std::string>{"beta", "zeta"}));
  in.k = 1;
  in.k_prime = 1;
  EXPECT_EQ(extract_candidates(in, {}).size(), 1u);
}

TEST(FeedbackInputTest, Validation) {
  FeedbackInput in;
  in.query = {"x"};
  EXPECT_THROW(extract_candidates(in, {}), DomainError);
  in.good = {doc("x")};
  in.k = 3;
  in.k_prime = 4;
  EXPECT_THROW(in.validate(), DomainError);
  in.k_prime = 1;
  in.window = 0;
  EXPECT_THROW(in.validate(), DomainError);
}

TEST(DiscriminatingPowerTest, SameSetsCancel) {
  FeedbackInput in = planted_input();
  in.bad = in.good;
  for (const auto& c : extract_candidates(in, {})) EXPECT_DOUBLE_EQ(discriminating_power(c.word, in), 0.0);
}

TEST(DiscriminatingPowerTest, EmptyBadSideIsGoodMean) {
  FeedbackInput in = planted_input();
  in.bad.clear();
  double mean = 0;
  for (const auto& g : in.good) mean += ranking::rank(g, {"monitor", "repair", "capacitor"});
  EXPECT_NEAR(discriminating_power("capacitor", in), mean / in.good.size(), 1e-9);
}

TEST(SuggestTest, PlantedWordWins) {
  FeedbackInput in = planted_input();
  in.k_prime = 1;
  const auto s = suggest(in, text::NoiseWordSet::english());
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].word, "capacitor");
}

// Brute force over every word of the corpus: the planted word has the
// highest dp of all, not only among extracted candidates.
TEST(SuggestTest, PlantedWordBeatsEveryCorpusWord) {
  const FeedbackInput in = planted_input();
  std::set<std::string> vocab;
  for (const auto* side : {&in.good, &in.bad}) {
    for (const auto& d : *side) vocab.insert(d.begin(), d.end());
  }
  const double planted = discriminating_power("capacitor", in);
  for (const auto& w : vocab) {
    if (w == "capacitor" || w == "monitor" || w == "repair") continue;
    EXPECT_LT(discriminating_power(w, in), planted) << w;
  }
  EXPECT_GT(planted, discriminating_power("absentword", in));
}

TEST(SuggestTest, EmptyCandidatesAndLargeKPrime) {
  FeedbackInput in;
  in.good = {doc("nothing relevant here")};
  in.query = {"java"};
  EXPECT_TRUE(suggest(in, {}).empty());
  in = planted_input();
  in.k = 500;
  in.k_prime = 500;
  const auto all = suggest(in, {});
  EXPECT_EQ(all.size(), extract_candidates(in, {}).size());
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_GE(all[i - 1].dp, all[i].dp);
}

TEST(FeedbackPropertyTest, ScaleInvarianceAndSubset) {
  FeedbackInput in = planted_input();
  in.k_prime = 10;
  const auto base = suggest(in, text::NoiseWordSet::english());
  const auto cands = extract_candidates(in, text::NoiseWordSet::english());
  for (double scale : {0.5, 3.0, 17.0}) {
    ranking::RankParams rp;
    rp.k0 *= scale;
    const auto scaled = suggest(in, text::NoiseWordSet::english(), rp);
    ASSERT_EQ(scaled.size(), base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      EXPECT_EQ(scaled[i].word, base[i].word);
      EXPECT_NEAR(scaled[i].dp, base[i].dp * scale, 1e-6 * scale);
    }
  }
  for (const auto& s : base) {
    EXPECT_TRUE(std::any_of(cands.begin(), cands.end(), [&](const Candidate& c) { return c.word == s.word; }));
  }
}

TEST(FeedbackPropertyTest, SharedDocumentShiftsDpPredictably) {
  std::mt19937 rng(5);
  const FeedbackInput in = planted_input();
  const auto cands = extract_candidates(in, {});
  for (int trial = 0; trial < 5; ++trial) {
    std::uniform_int_distribution<std::size_t> pick(0, in.bad.size() - 1);
    const text::WordSeq extra = in.bad[pick(rng)];
    FeedbackInput more = in;
    more.good.push_back(extra);
    more.bad.push_back(extra);
    for (const auto& c : cands) {
      std::vector<std::string> q = in.query;
      q.push_back(c.word);
      double g = 0, b = 0;
      for (const auto& d : more.good) g += ranking::rank(d, q);
      for (const auto& d : more.bad) b += ranking::rank(d, q);
      EXPECT_NEAR(discriminating_power(c.word, more), g / more.good.size() - b / more.bad.size(), 1e-9);
    }
  }
}

TEST(FeedbackPropertyTest, Deterministic) {
  const FeedbackInput in = planted_input();
  EXPECT_EQ(suggest(in, {}), suggest(in, {}));
}

}  // namespace
}  // namespace hcrawl::feedback
