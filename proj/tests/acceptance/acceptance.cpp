// Acceptance checks. Prints one PASS/FAIL line per criterion. A criterion
// registered as a known failure still prints FAIL but does not change the exit
// code; any other failure does.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "corpus.hpp"
#include "hcrawl/concept/happiness.hpp"
#include "hcrawl/feedback/feedback.hpp"
#include "hcrawl/metasearch/tags.hpp"
#include "hcrawl/metasearch/wrapper.hpp"
#include "hcrawl/ranking/rank.hpp"
#include "hcrawl/service/session.hpp"
#include "hcrawl/sim/explore.hpp"
#include "hcrawl/sim/fixtures.hpp"
#include "hcrawl/sim/locality.hpp"
#include "hcrawl/sim/metrics.hpp"
#include "hcrawl/sim/promising.hpp"
#include "hcrawl/spider/page.hpp"
#include "hcrawl/spider/spider.hpp"
#include "hcrawl/text/noise_words.hpp"
#include "hcrawl/text/similarity.hpp"
#include "hcrawl/text/tokenizer.hpp"
#include "mock_engine.hpp"
#include "random_graph.hpp"

namespace {

using namespace hcrawl;
using nlohmann::json;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;
int known_failures = 0;

void check(const std::string& name, const std::function<Outcome()>& body, bool known_failure = false) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++(known_failure ? known_failures : failures);
  std::cout << (o.pass ? "PASS " : "FAIL ") << name << (!o.pass && known_failure ? " (known)" : "") << " | "
            << o.detail << " | " << std::fixed
            << std::setprecision(2) << secs << "s" << std::endl;
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome similarity() {
  const double full = text::sim("java", "javadoc");
  const double partial = text::sim("java", "jav");
  return {full == 1.0 && std::abs(partial - 0.3164) <= 0.005,
          "sim(java,javadoc)=" + fmt(full) + " sim(java,jav)=" + fmt(partial)};
}

Outcome combined_example() {
  const concept_tree::CombinedParams p{2.0, 100.0};
  const std::vector<double> ranks{70.0, 90.0, 600.96};
  const auto s = concept_tree::combined_score(ranks, p);
  const double c0 = concept_tree::level_candidate(70.0, 0, p);
  const double c1 = concept_tree::level_candidate(90.0, 1, p);
  return {std::abs(s.score - 100.16) <= 0.01 && s.level == 2 && c0 == 70.0 && c1 == 22.5,
          "S=" + fmt(s.score) + " z=" + std::to_string(s.level) + " candidates " + fmt(c0, 2) + ", " + fmt(c1, 2)};
}

Outcome rank_bounds() {
  std::mt19937 rng(1);
  const std::vector<std::string> vocab{"java", "javadoc", "jav", "sun", "tutorial", "tut", "language",
                                       "programming", "sailing", "course", "lake", "x"};
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::uniform_int_distribution<int> doc_len(0, 400);
  std::uniform_int_distribution<int> query_len(1, 4);
  std::uniform_real_distribution<double> k0(1.0, 5000.0);
  double lo = 1e300;
  double hi_ratio = 0.0;
  for (int i = 0; i < 1000; ++i) {
    text::WordSeq doc;
    for (int n = doc_len(rng); n > 0; --n) doc.words.push_back(vocab[pick(rng)]);
    std::vector<std::string> q;
    for (int n = query_len(rng); n > 0; --n) q.push_back(vocab[pick(rng)]);
    ranking::RankParams p;
    p.k0 = k0(rng);
    const double r = ranking::rank(doc, q, p);
    if (!(r >= 0.0 && r < p.k0)) return {false, "rank " + fmt(r) + " outside [0, " + fmt(p.k0) + ")"};
    lo = std::min(lo, r);
    hi_ratio = std::max(hi_ratio, r / p.k0);
  }
  const double empty = ranking::rank(text::WordSeq{}, {"java"});
  return {empty == 0.0, "1000 cases, min " + fmt(lo) + ", max rank/k0 " + fmt(hi_ratio) + ", empty doc " + fmt(empty)};
}

Outcome termination() {
  std::mt19937_64 rng(4913);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> win(1, 5);
  std::size_t worst_revisit = 0;
  for (int i = 0; i < 500; ++i) {
    const auto g = testing::random_graph(rng, 50);
    const sim::ExploreConfig cfg{unit(rng) * 0.8, unit(rng), win(rng), 10'000'000};
    const auto a = sim::explore_single_visit(g, 0, cfg);
    const auto b = sim::explore_revisit(g, 0, cfg);
    if (a.truncated || b.truncated) return {false, "graph " + std::to_string(i) + " hit the step cap"};
    if (a.total_visits() > g.node_count()) return {false, "Alg 4.8 visited more than |N| on graph " + std::to_string(i)};
    worst_revisit = std::max(worst_revisit, b.total_visits());
  }
  return {true, "500 graphs, both terminate, 4.8 visits <= |N|, max 4.12 visits " + std::to_string(worst_revisit)};
}

Outcome fig6_witness() {
  const auto g = sim::fixtures::single_visit_counterexample();
  const auto u = g.index_of("u");
  const auto v = g.index_of("v");
  const sim::ExploreConfig cfg{0.4, 0.0, 2};
  const bool oracle = sim::exists_promising_path(g, u, v, 0.4, 2, 16);
  const bool single = sim::explore_single_visit(g, u, cfg).visited(v);
  const bool revisit = sim::explore_revisit(g, u, cfg).visited(v);
  return {oracle && !single && revisit, std::string("promising path ") + (oracle ? "exists" : "missing") +
                                            ", 4.8 visits v: " + (single ? "yes" : "no") +
                                            ", 4.12 visits v: " + (revisit ? "yes" : "no")};
}

// Every node certified by the promising-path oracle must be visited by the
// revisit exploration. The derived seven-node counterexample is checked
// alongside the random sample, so the verdict does not hinge on the seed.
Outcome revisit_reachability() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> win(1, 3);
  std::size_t certified = 0;
  std::size_t missed = 0;
  std::string first;
  auto audit = [&](const sim::Webgraph& g, sim::NodeIndex start, double ht, std::size_t m, const std::string& label) {
    const auto t = sim::explore_revisit(g, start, {ht, 0.0, m});
    for (sim::NodeIndex v = 0; v < g.node_count(); ++v) {
      if (v == start || !sim::exists_promising_path(g, start, v, ht, m, 64)) continue;
      ++certified;
      if (!t.visited(v) && missed++ == 0) {
        first = label + " node " + g.name(v) + " ht=" + fmt(ht, 2) + " m=" + std::to_string(m);
      }
    }
  };
  for (int i = 0; i < 200; ++i) {
    const auto g = testing::random_graph(rng, 8, 0.6);
    const double ht = unit(rng) * 0.6;
    audit(g, 0, ht, win(rng), "random graph " + std::to_string(i));
  }
  const std::size_t random_missed = missed;
  const auto fixture = sim::fixtures::revisit_counterexample();
  audit(fixture, fixture.index_of("u"), 0.4, 2, "derived fixture");
  return {missed == 0, std::to_string(certified) + " certified nodes; not visited by 4.12: " +
                           std::to_string(random_missed) + " in 200 random graphs, " +
                           std::to_string(missed - random_missed) + " in the derived fixture" +
                           (first.empty() ? "" : "; first: " + first)};
}

Outcome two_cycle() {
  const auto g = sim::fixtures::two_cycle();
  const auto t = sim::explore_revisit(g, g.index_of("x"), {0.4, 0.0, 5, 100000}, {0.3});
  return {!t.truncated && t.total_visits() > 2, "terminated after " + std::to_string(t.steps) +
                                                    " extractions, total visits " + std::to_string(t.total_visits())};
}

Outcome locality() {
  sim::LocalityParams p;
  p.nodes = 5000;
  p.rho = 0.54;
  p.seed = 54;
  const auto g = sim::generate_locality_graph(p);
  const double rho = sim::linked_pair_correlation(g);
  const auto h = sim::conditional_rank_histogram(g, sim::uniform_buckets(0.0, 1.0, 10));
  const std::size_t top = h.buckets() - 1;
  if (!h.rows[top]) return {false, "no edge leaves the highest bucket"};
  const double conditional = (*h.rows[top])[top];
  const double marginal = h.marginal[top];
  const double boost = conditional / marginal;
  return {std::abs(rho - 0.54) <= 0.1 && boost >= 5.0,
          "rho=" + fmt(rho, 3) + " P(top|top)=" + fmt(100 * conditional, 1) + "% vs marginal " +
              fmt(100 * marginal, 1) + "% (x" + fmt(boost, 1) + ")"};
}

Outcome saving_formula() {
  const double s = sim::metrics_saving(24038, 7328);
  return {std::abs(s - 0.6951) <= 1e-4, "saving=" + fmt(s, 5)};
}

Outcome crawl_saving() {
  const auto corpus = testing::make_corpus(200, 15, 7);
  testing::TempDir dir;
  testing::write_corpus(corpus, dir.path());
  web::LocalDirectoryFetcher f(dir.path());

  // Oracle: rank every page exhaustively.
  std::vector<std::pair<double, std::string>> ranked;
  for (const auto& [path, markup] : corpus.pages) {
    const auto url = f.url_for(path);
    const auto page = spider::read_page(web::FetchResult::ok(markup, "text/html"), url);
    ranked.emplace_back(ranking::rank(page.words, corpus.query), url.str());
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::set<std::string> top;
  for (std::size_t i = 0; i < 10; ++i) top.insert(ranked[i].second);

  spider::SearchRequest req;
  req.query = req.tree.add_query(req.tree.root(), corpus.query);
  req.config = spider::SpiderConfig::pessimistic();
  req.config.politeness = std::chrono::milliseconds(0);
  req.seeds.push_back({f.url_for(corpus.entry).str(), "user"});
  for (const auto& d : corpus.decoys) req.seeds.push_back({f.url_for(d).str(), "user"});
  const auto report = spider::run_search(req, f);
  std::set<std::string> found;
  for (const auto& d : report.results) found.insert(d.url);
  const double share = static_cast<double>(report.fetched.size()) / static_cast<double>(corpus.pages.size());
  const double recall = sim::metrics_recall(found, top);
  return {share < 0.30 && recall == 1.0, "fetched " + std::to_string(report.fetched.size()) + "/" +
                                             std::to_string(corpus.pages.size()) + " (" + fmt(100 * share, 1) +
                                             "%), top-10 recall " + fmt(recall, 2) + ", saving " +
                                             fmt(sim::metrics_saving(corpus.pages.size(), report.fetched.size()), 3)};
}

// Reference: the regular expression t f* a over the tag names, one letter per tag.
std::vector<std::string> regex_reference(const metasearch::TagStream& stream, const metasearch::WrapperSpec& w) {
  std::string symbols;
  for (const auto& t : stream) symbols += t.name == w.t ? 't' : t.name == w.ft ? 'f' : t.name == "a" ? 'a' : 'o';
  std::vector<std::string> out;
  static const std::regex pattern("tf*a");
  for (auto it = std::sregex_iterator(symbols.begin(), symbols.end(), pattern); it != std::sregex_iterator(); ++it) {
    const auto end = static_cast<std::size_t>(it->position() + it->length() - 1);
    if (auto href = stream[end].attribute("href")) out.push_back(*href);
  }
  return out;
}

Outcome wrapper_equivalence() {
  const metasearch::WrapperSpec lycos{"lycos", "http://lycos.test/?q={q}", "li", "font"};
  std::mt19937 rng(10000);
  const std::vector<std::string> names{"li", "font", "a", "b", "p", "/li", "/font", "/a", "td"};
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  std::uniform_int_distribution<int> len(0, 60);
  std::bernoulli_distribution has_href(0.9);
  std::size_t urls = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    metasearch::TagStream s;
    for (int i = len(rng); i > 0; --i) {
      metasearch::Tag t{names[pick(rng)], {}};
      if (t.name == "a" && has_href(rng)) t.attributes.emplace_back("href", "u" + std::to_string(i));
      s.push_back(std::move(t));
    }
    const auto got = metasearch::extract_urls(s, lycos);
    if (got != regex_reference(s, lycos)) return {false, "stream " + std::to_string(trial) + " differs"};
    urls += got.size();
  }
  const std::filesystem::path data(HCRAWL_TEST_DATA_DIR);
  std::vector<std::string> expected;
  std::istringstream lines(slurp(data / "lycos_expected.txt"));
  for (std::string line; std::getline(lines, line);) {
    if (!line.empty()) expected.push_back(line);
  }
  const auto fixture = metasearch::extract_urls(metasearch::lex_tags(slurp(data / "lycos_results.html")), lycos);
  return {fixture == expected, "10000 streams agree (" + std::to_string(urls) + " urls); fixture yields " +
                                   std::to_string(fixture.size()) + "/" + std::to_string(expected.size()) +
                                   " planted links"};
}

Outcome feedback_recovery() {
  const auto c = testing::make_feedback_corpus();
  feedback::FeedbackInput in;
  for (const auto& h : c.hot) in.good.push_back(text::tokenize(h, false));
  for (const auto& b : c.cold) in.bad.push_back(text::tokenize(b, false));
  in.query = c.query;
  in.k_prime = 1;
  const auto& noise = text::NoiseWordSet::english();
  const auto one = feedback::suggest(in, noise);
  if (one.size() != 1 || one[0].word != c.planted) return {false, "kPrime=1 did not return the planted word"};

  in.k_prime = 10;
  const auto base = feedback::suggest(in, noise);
  for (double scale : {0.25, 4.0, 40.0}) {
    ranking::RankParams rp;
    rp.k0 *= scale;
    const auto scaled = feedback::suggest(in, noise, rp);
    if (scaled.size() != base.size()) return {false, "k0 scaling changed the output size"};
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (scaled[i].word != base[i].word) return {false, "k0 x" + fmt(scale, 2) + " reordered the suggestions"};
    }
  }
  return {true, "kPrime=1 -> '" + one[0].word + "' (dp " + fmt(one[0].dp, 2) + "); order of " +
                    std::to_string(base.size()) + " suggestions stable under k0 x0.25, x4, x40"};
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = hcrawl::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Outcome end_to_end() {
  const std::string base = "http://corpus.test/";
  const auto corpus = testing::make_corpus();
  testing::TempDir dir;
  const auto site = dir.path() / "site";
  std::filesystem::create_directories(site);
  testing::write_corpus(corpus, site);
  testing::MockEngine engine({{"/lycos", "li", "font", {base + corpus.entry, base + corpus.decoys[0]}}});
  const auto wrappers = dir.path() / "wrappers.json";
  std::ofstream(wrappers) << json{{"engines",
                                   {{{"name", "lycos"}, {"template", engine.query_template("/lycos")}, {"t", "li"}, {"ft", "font"}}}}}
                                 .dump();

  auto search = [&](const std::filesystem::path& session) {
    return cli({"search", "sailing", "course", "--session", session.string(), "--corpus", site.string(),
                "--corpus-base", base, "--wrappers", wrappers.string(), "--politeness-ms", "0", "--json"});
  };
  const auto s1 = dir.path() / "a.json";
  const auto a = search(s1);
  const auto b = search(dir.path() / "b.json");
  if (a.code != 0) return {false, "search exited " + std::to_string(a.code) + ": " + a.err};
  const json shown = json::parse(a.out);
  if (a.out != b.out) return {false, "two searches displayed different sets"};
  if (shown.size() < 2) return {false, "search displayed fewer than two documents"};

  if (cli({"mark", "--session", s1.string(), "--doc", shown[0].at("docId"), "hot"}).code != 0 ||
      cli({"mark", "--session", s1.string(), "--doc", shown[shown.size() - 1].at("docId"), "cold"}).code != 0) {
    return {false, "mark failed"};
  }
  const auto fb = cli({"feedback", "--session", s1.string(), "--query", "1", "--k-prime", "3", "--json"});
  if (fb.code != 0) return {false, "feedback exited " + std::to_string(fb.code) + ": " + fb.err};
  const json dq = json::parse(fb.out);
  const auto node = dq.at("node").get<service::NodeId>();

  const std::string text = slurp(s1);
  const auto session = service::session_from_json(text);
  const auto copy = dir.path() / "copy.json";
  service::save_session(session, copy);
  const bool round_trip = slurp(copy) == text && session.tree.contains(node) && session.derived_queries.size() == 1;

  std::string words;
  for (const auto& w : session.tree.node(node).words) words += (words.empty() ? "" : " ") + w;
  return {round_trip, std::to_string(shown.size()) + " documents displayed identically twice; derived query " +
                          std::to_string(node) + " {" + words + "}; session round-trip " +
                          (round_trip ? "identical" : "differs")};
}

}  // namespace

int main() {
  check("similarity fidelity", similarity);
  check("combined-score worked example", combined_example);
  check("rank boundedness and zero case", rank_bounds);
  check("termination of both explorations", termination);
  check("single-visit miss witness", fig6_witness);
  // The revisit exploration compares M(v) against the parent's window, so a
  // happier parent with a worse continuation can block the promising route.
  check("revisit reaches every promising node", revisit_reachability, true);
  check("two-cycle revisit inflation", two_cycle);
  check("locality generator", locality);
  check("saving formula", saving_formula);
  check("crawl-level saving on fixture corpus", crawl_saving);
  check("wrapper oracle equivalence", wrapper_equivalence);
  check("feedback recovery", feedback_recovery);
  check("end-to-end without UI", end_to_end);
  std::cout << failures << " unexpected failures, " << known_failures << " known failures" << std::endl;
  return failures == 0 ? 0 : 1;
}
