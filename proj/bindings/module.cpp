#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "cli.hpp"
#include "hcrawl/concept/happiness.hpp"
#include "hcrawl/error.hpp"
#include "hcrawl/feedback/feedback.hpp"
#include "hcrawl/metasearch/tags.hpp"
#include "hcrawl/metasearch/wrapper.hpp"
#include "hcrawl/ranking/rank.hpp"
#include "hcrawl/service/session.hpp"
#include "hcrawl/sim/explore.hpp"
#include "hcrawl/sim/locality.hpp"
#include "hcrawl/sim/metrics.hpp"
#include "hcrawl/sim/promising.hpp"
#include "hcrawl/spider/spider.hpp"
#include "hcrawl/text/noise_words.hpp"
#include "hcrawl/text/similarity.hpp"
#include "hcrawl/text/tokenizer.hpp"

namespace py = pybind11;
using namespace hcrawl;

namespace {

std::vector<text::WordSeq> tokenize_all(const std::vector<std::string>& texts, bool markup) {
  std::vector<text::WordSeq> out;
  for (const auto& t : texts) out.push_back(text::tokenize(t, markup));
  return out;
}

py::dict trace_dict(const sim::ExploreTrace& t) {
  py::dict d;
  d["output"] = t.output;
  d["visits"] = t.visits;
  d["enqueues"] = t.enqueues;
  d["steps"] = t.steps;
  d["frontier_peak"] = t.frontier_peak;
  d["truncated"] = t.truncated;
  return d;
}

py::dict doc_dict(const spider::DisplayedDoc& doc) {
  py::dict d;
  d["url"] = doc.url;
  d["score"] = doc.score;
  d["combined"] = doc.combined;
  d["level"] = doc.level;
  d["depth"] = doc.depth;
  d["origin"] = doc.origin;
  d["title"] = doc.title;
  d["abstract"] = doc.abstract;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Focused meta-search crawler core";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<LookupError>(m, "LookupError", PyExc_KeyError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<MigrationError>(m, "MigrationError", PyExc_ValueError);

  m.def("tokenize", [](const std::string& s, bool markup) { return text::tokenize(s, markup).words; },
        py::arg("text"), py::arg("markup") = false);
  m.def("sim", &text::sim, py::arg("w1"), py::arg("w2"));

  py::class_<ranking::RankParams>(m, "RankParams")
      .def(py::init<>())
      .def_readwrite("k0", &ranking::RankParams::k0)
      .def_readwrite("k1", &ranking::RankParams::k1)
      .def_readwrite("k2", &ranking::RankParams::k2)
      .def_readwrite("k3", &ranking::RankParams::k3)
      .def_readwrite("k4", &ranking::RankParams::k4)
      .def_readwrite("k5", &ranking::RankParams::k5)
      .def_readwrite("ts", &ranking::RankParams::ts);

  m.def(
      "rank",
      [](const std::vector<std::string>& doc, const std::vector<std::string>& query, const ranking::RankParams& p) {
        text::WordSeq seq;
        seq.words = doc;
        return ranking::rank(seq, query, p);
      },
      py::arg("doc"), py::arg("query"), py::arg("params") = ranking::RankParams{});

  m.def(
      "combined_score",
      [](const std::vector<double>& ranks, double k6, double k7) {
        const auto s = concept_tree::combined_score(ranks, {k6, k7});
        return py::make_tuple(s.score, s.level);
      },
      py::arg("ranks"), py::arg("k6") = 2.0, py::arg("k7") = 100.0);

  py::class_<sim::Webgraph>(m, "Webgraph")
      .def(py::init<>())
      .def("add_node", &sim::Webgraph::add_node, py::arg("name"), py::arg("r"))
      .def("add_edge", py::overload_cast<sim::NodeIndex, sim::NodeIndex>(&sim::Webgraph::add_edge))
      .def("add_edge", py::overload_cast<std::string_view, std::string_view>(&sim::Webgraph::add_edge))
      .def("index_of", &sim::Webgraph::index_of)
      .def("name", &sim::Webgraph::name)
      .def("r", &sim::Webgraph::r)
      .def("successors",
           [](const sim::Webgraph& g, sim::NodeIndex n) {
             const auto s = g.successors(n);
             return std::vector<sim::NodeIndex>(s.begin(), s.end());
           })
      .def_property_readonly("node_count", &sim::Webgraph::node_count)
      .def_property_readonly("edge_count", &sim::Webgraph::edge_count);
  m.def("load_graph", [](const std::filesystem::path& p) { return sim::load_graph(p); });
  m.def(
      "generate_locality_graph",
      [](std::size_t nodes, double avg_degree, double rho, std::uint64_t seed, double skew) {
        return sim::generate_locality_graph({nodes, avg_degree, rho, seed, skew});
      },
      py::arg("nodes") = 1000, py::arg("avg_degree") = 8.0, py::arg("rho") = 0.54, py::arg("seed") = 1,
      py::arg("skew") = 3.0);
  m.def("linked_pair_correlation", &sim::linked_pair_correlation);
  m.def(
      "explore_single_visit",
      [](const sim::Webgraph& g, sim::NodeIndex start, double ht, double dt, std::size_t m, std::size_t max_steps) {
        return trace_dict(sim::explore_single_visit(g, start, {ht, dt, m, max_steps}));
      },
      py::arg("graph"), py::arg("start"), py::arg("ht"), py::arg("dt"), py::arg("m"), py::arg("max_steps") = 0);
  m.def(
      "explore_revisit",
      [](const sim::Webgraph& g, sim::NodeIndex start, double ht, double dt, std::size_t m, std::size_t max_steps) {
        return trace_dict(sim::explore_revisit(g, start, {ht, dt, m, max_steps}));
      },
      py::arg("graph"), py::arg("start"), py::arg("ht"), py::arg("dt"), py::arg("m"), py::arg("max_steps") = 0);
  m.def("exists_promising_path", &sim::exists_promising_path, py::arg("graph"), py::arg("source"),
        py::arg("target"), py::arg("ht"), py::arg("m"), py::arg("max_edges"));
  m.def("metrics_saving", &sim::metrics_saving, py::arg("total_docs"), py::arg("explored"));

  m.def(
      "extract_urls",
      [](const std::string& markup, const std::string& t, const std::string& ft) {
        metasearch::WrapperSpec w{"adhoc", "http://unused.invalid/?q={q}", t, ft};
        w.validate();
        return metasearch::extract_urls(metasearch::lex_tags(markup), w);
      },
      py::arg("markup"), py::arg("t"), py::arg("ft"));

  m.def(
      "suggest",
      [](const std::vector<std::string>& good, const std::vector<std::string>& bad,
         const std::vector<std::string>& query, std::size_t k, std::size_t k_prime, std::size_t window) {
        feedback::FeedbackInput in;
        in.good = tokenize_all(good, false);
        in.bad = tokenize_all(bad, false);
        in.query = query;
        in.k = k;
        in.k_prime = k_prime;
        in.window = window;
        std::vector<py::tuple> out;
        for (const auto& s : feedback::suggest(in, text::NoiseWordSet::english())) {
          out.push_back(py::make_tuple(s.word, s.dp, s.min_proximity));
        }
        return out;
      },
      py::arg("good"), py::arg("bad"), py::arg("query"), py::arg("k") = 50, py::arg("k_prime") = 10,
      py::arg("window") = 10);

  m.def(
      "crawl_directory",
      [](const std::filesystem::path& root, const std::vector<std::string>& query,
         const std::vector<std::string>& seeds, const std::string& profile) {
        web::LocalDirectoryFetcher f(root);
        spider::SearchRequest req;
        req.query = req.tree.add_query(req.tree.root(), query);
        req.config = spider::SpiderConfig::profile(profile);
        req.config.politeness = std::chrono::milliseconds(0);
        for (const auto& s : seeds) req.seeds.push_back({f.url_for(s).str(), "user"});
        spider::SearchReport report;
        {
          py::gil_scoped_release release;
          report = spider::run_search(req, f);
        }
        py::list results;
        for (const auto& d : report.results) results.append(doc_dict(d));
        py::dict out;
        out["results"] = results;
        out["fetched"] = report.fetched.size();
        return out;
      },
      py::arg("root"), py::arg("query"), py::arg("seeds"), py::arg("profile") = "pessimistic");

  m.def("normalize_session", [](const std::string& text) {
    return service::session_to_json(service::session_from_json(text));
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  });
}
