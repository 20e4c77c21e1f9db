#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "hcrawl/error.hpp"
#include "hcrawl/metasearch/dispatch.hpp"
#include "hcrawl/service/server.hpp"
#include "hcrawl/service/workspace.hpp"
#include "hcrawl/sim/explore.hpp"
#include "hcrawl/sim/locality.hpp"
#include "hcrawl/sim/metrics.hpp"
#include "hcrawl/sim/webgraph.hpp"

namespace hcrawl::cli {
namespace {

using nlohmann::json;
using service::NodeId;

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int) { g_interrupted = true; }

// Routes SIGINT and SIGTERM to g_interrupted for the lifetime of the object.
class InterruptScope {
 public:
  InterruptScope() {
    g_interrupted = false;
    previous_int_ = std::signal(SIGINT, on_sigint);
    previous_term_ = std::signal(SIGTERM, on_sigint);
  }
  ~InterruptScope() {
    std::signal(SIGINT, previous_int_);
    std::signal(SIGTERM, previous_term_);
  }

 private:
  void (*previous_int_)(int);
  void (*previous_term_)(int);
};

struct SourceOptions {
  std::string corpus;
  std::string corpus_base;
  bool live = false;
  std::string seeds_file;
  std::string wrappers_file;

  bool any() const { return !corpus.empty() || live || !seeds_file.empty() || !wrappers_file.empty(); }

  void add_to(CLI::App* app) {
    app->add_option("--corpus", corpus, "Directory of pages to crawl instead of the web")->check(CLI::ExistingDirectory);
    app->add_option("--corpus-base", corpus_base, "URL under which the corpus is served (default file://DIR/)");
    app->add_flag("--live", live, "Fetch documents over HTTP");
    app->add_option("--seeds", seeds_file, "File of seed URLs, one per line; relative ones resolve against the corpus")
        ->check(CLI::ExistingFile);
    app->add_option("--wrappers", wrappers_file, "Engine wrapper config (JSON)")->check(CLI::ExistingFile);
  }

  // Overlays the given options on `s`.
  service::Sources apply(service::Sources s) const {
    if (!corpus.empty()) {
      s.corpus_root = std::filesystem::absolute(corpus).string();
      s.corpus_base = corpus_base;
    }
    if (live) s.live = true;
    if (!wrappers_file.empty()) s.wrappers = metasearch::load_wrappers(wrappers_file);
    if (!seeds_file.empty()) {
      s.seeds.clear();
      std::ifstream in(seeds_file);
      web::Url base{"file", "", std::nullopt, "/", ""};
      if (!s.corpus_root.empty()) {
        base = web::LocalDirectoryFetcher(s.corpus_root).base();
        if (!s.corpus_base.empty()) base = web::normalize(s.corpus_base).value_or(base);
      }
      for (std::string line; std::getline(in, line);) {
        line = line.substr(0, line.find('#'));
        line.erase(0, line.find_first_not_of(" \t\r"));
        line.erase(line.find_last_not_of(" \t\r") + 1);
        if (line.empty()) continue;
        const auto u = web::resolve(base, line);
        if (!u) throw DomainError("bad seed '" + line + "'");
        s.seeds.push_back(u->str());
      }
    }
    return s;
  }
};

std::vector<std::string> split_words(const std::vector<std::string>& parts) {
  std::vector<std::string> out;
  for (const auto& p : parts) {
    std::istringstream in(p);
    for (std::string w; in >> w;) out.push_back(w);
  }
  return out;
}

void print_tree(std::ostream& out, const concept_tree::ConceptTree& t, NodeId id, int indent) {
  const auto& n = t.node(id);
  out << std::string(static_cast<std::size_t>(indent) * 2, ' ') << id << ' '
      << (n.kind == concept_tree::NodeKind::kQuery ? "query" : "concept") << ':';
  for (const auto& w : n.words) out << ' ' << w;
  out << '\n';
  for (NodeId c : t.children(id)) print_tree(out, t, c, indent + 1);
}

void print_results(std::ostream& out, const std::vector<spider::DisplayedDoc>& docs, bool as_json) {
  if (as_json) {
    json list = json::array();
    for (const auto& d : docs) list.push_back(service::doc_to_json(d));
    out << list.dump(2) << '\n';
    return;
  }
  for (const auto& d : docs) {
    out << std::fixed << std::setprecision(1) << std::setw(7) << d.score << "  depth " << d.depth << "  "
        << service::doc_id(d.url) << "  " << d.url;
    if (!d.title.empty()) out << "  " << d.title;
    out << '\n';
  }
}

std::unique_ptr<service::Workspace> open_workspace(const std::string& path) {
  if (!std::filesystem::exists(path)) return std::make_unique<service::Workspace>(service::Session{}, path);
  return std::make_unique<service::Workspace>(service::load_session(path), path);
}

// Runs a search on the calling thread; Ctrl-C stops it and keeps what was found.
service::SearchSummary search_interruptibly(service::Workspace& ws, NodeId q) {
  InterruptScope scope;
  std::atomic<bool> done{false};
  std::thread watcher([&] {
    while (!done) {
      if (g_interrupted.exchange(false)) ws.stop_search(q);
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
  });
  try {
    auto summary = ws.run_search(q);
    done = true;
    watcher.join();
    return summary;
  } catch (...) {
    done = true;
    watcher.join();
    throw;
  }
}

struct Cli {
  std::ostream& out;
  std::ostream& err;
  CLI::App app{"Focused meta-search crawler", "hcrawl"};
  std::function<int()> action;

  // search
  std::vector<std::string> search_words;
  std::string session_file;
  std::optional<NodeId> query_id;
  std::string profile;
  SourceOptions sources;
  std::optional<long> politeness_ms;
  std::optional<std::size_t> parallel;
  std::optional<std::size_t> max_fetches;
  bool json_out = false;

  // simulate / generate-graph
  std::string graph_file;
  std::string algo = "4.8";
  double ht = 0.5;
  double dt = 0.5;
  std::size_t m = 1;
  std::string start_node;
  std::size_t buckets = 10;
  std::size_t max_steps = 0;
  sim::LocalityParams gen;
  std::string out_file;

  // feedback
  std::size_t k = 50;
  std::size_t k_prime = 10;
  std::size_t window = 10;

  // serve / enqueue
  std::string bind = "127.0.0.1:8080";
  std::string token;
  std::string remote;
  std::optional<NodeId> parent;

  // tree / mark / schedule
  std::string kind = "query";
  std::vector<std::string> node_words;
  NodeId node_id = 0;
  std::string tree_file;
  std::string doc;
  std::string url;
  std::string mark_state;
  std::int64_t every = 3600;
  std::optional<std::int64_t> first_run;
  std::string metasearch_query;

  Cli(std::ostream& o, std::ostream& e) : out(o), err(e) {
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    add_search();
    add_simulate();
    add_generate();
    add_feedback();
    add_serve();
    add_metasearch();
    add_tree();
    add_mark();
    add_enqueue();
    add_schedule();
  }

  void add_search() {
    auto* c = app.add_subcommand("search", "Crawl for a query and print the displayed documents");
    c->add_option("words", search_words, "Query words (adds a query node when a session is given)");
    c->add_option("--session", session_file, "Session file to read and update");
    c->add_option("--query", query_id, "Existing query node id in the session");
    c->add_option("--profile", profile, "pessimistic or optimistic")->check(CLI::IsMember({"pessimistic", "optimistic"}));
    sources.add_to(c);
    c->add_option("--politeness-ms", politeness_ms, "Minimum gap between requests to one host");
    c->add_option("--parallel", parallel, "Documents fetched concurrently")->check(CLI::PositiveNumber);
    c->add_option("--max-fetches", max_fetches, "Stop after this many fetches");
    c->add_flag("--json", json_out, "Print results as JSON");
    c->callback([this] { action = [this] { return search(); }; });
  }

  int search() {
    std::unique_ptr<service::Workspace> ws;
    if (!session_file.empty()) {
      ws = open_workspace(session_file);
    } else {
      ws = std::make_unique<service::Workspace>(service::Session{});
    }
    const auto words = split_words(search_words);
    if (words.empty() == !query_id) throw CLI::ValidationError("search", "give either query words or --query");
    if (query_id && session_file.empty()) throw CLI::ValidationError("search", "--query needs --session");

    auto session = ws->snapshot();
    if (sources.any()) ws->set_sources(sources.apply(session.sources));
    service::Profile p = profile.empty() ? session.profile : service::Profile::named(profile);
    if (politeness_ms) p.spider.politeness = std::chrono::milliseconds(*politeness_ms);
    if (parallel) p.spider.max_parallel_fetches = *parallel;
    if (max_fetches) p.spider.max_fetches = *max_fetches;
    ws->set_profile(p);

    const NodeId q = query_id ? *query_id : ws->add_node(session.tree.root(), concept_tree::NodeKind::kQuery, words);
    const auto summary = search_interruptibly(*ws, q);
    for (const auto& e : summary.seed_errors) err << "engine failed: " << e << '\n';
    if (!json_out) {
      out << "query " << q << ": fetched " << summary.fetched << " documents, " << ws->results(q).size()
          << " displayed" << (summary.stopped ? " (stopped)" : "") << '\n';
    }
    print_results(out, ws->results(q), json_out);
    return 0;
  }

  void add_simulate() {
    auto* c = app.add_subcommand("simulate", "Run an exploration algorithm on a graph file; prints CSV");
    c->add_option("--graph", graph_file, "Graph file (node <id> <r> / edge <from> <to>)")->required()->check(CLI::ExistingFile);
    c->add_option("--algo", algo, "4.8 (single visit) or 4.12 (revisit)")->check(CLI::IsMember({"4.8", "4.12"}));
    c->add_option("--ht", ht, "Happiness threshold")->required();
    c->add_option("--dt", dt, "Display threshold")->required();
    c->add_option("-m", m, "Window length")->required()->check(CLI::PositiveNumber);
    c->add_option("--start", start_node, "Start node id (default: first node)");
    c->add_option("--buckets", buckets, "Histogram buckets over [0, 1]")->check(CLI::PositiveNumber);
    c->add_option("--max-steps", max_steps, "Abort after this many extractions (0: none)");
    c->callback([this] { action = [this] { return simulate(); }; });
  }

  int simulate() {
    const sim::Webgraph g = sim::load_graph(graph_file);
    if (g.node_count() == 0) throw DomainError("graph has no nodes");
    const sim::NodeIndex start = start_node.empty() ? 0 : g.index_of(start_node);
    const sim::ExploreConfig cfg{ht, dt, m, max_steps};
    const auto trace = algo == "4.8" ? sim::explore_single_visit(g, start, cfg) : sim::explore_revisit(g, start, cfg);
    out << "node,r,visits,enqueues,emitted\n";
    for (sim::NodeIndex n = 0; n < g.node_count(); ++n) {
      out << g.name(n) << ',' << g.r(n) << ',' << trace.visits[n] << ',' << trace.enqueues[n] << ','
          << (trace.emitted(n) ? 1 : 0) << '\n';
    }
    std::size_t visited = 0;
    for (sim::NodeIndex n = 0; n < g.node_count(); ++n) visited += trace.visited(n) ? 1 : 0;
    out << "\nmetric,value\n"
        << "algorithm," << algo << "\nnodes," << g.node_count() << "\nedges," << g.edge_count() << "\nvisited,"
        << visited << "\nemitted," << trace.output.size() << "\ntotal_visits," << trace.total_visits()
        << "\nsteps," << trace.steps << "\nfrontier_peak," << trace.frontier_peak << "\ntruncated,"
        << (trace.truncated ? 1 : 0) << "\nsaving," << sim::metrics_saving(g.node_count(), visited) << '\n';
    if (g.edge_count() > 0) {
      const auto h = sim::conditional_rank_histogram(g, sim::uniform_buckets(0.0, 1.0, buckets));
      out << "\nrow,bucket,probability\n";
      for (std::size_t b = 0; b < buckets; ++b) out << "marginal," << b << ',' << h.marginal[b] << '\n';
      for (std::size_t s = 0; s < buckets; ++s) {
        if (!h.rows[s]) continue;
        for (std::size_t b = 0; b < buckets; ++b) out << s << ',' << b << ',' << (*h.rows[s])[b] << '\n';
      }
    }
    return 0;
  }

  void add_generate() {
    auto* c = app.add_subcommand("generate-graph", "Write a synthetic graph with linked-rank correlation rho");
    c->add_option("--nodes", gen.nodes)->check(CLI::PositiveNumber);
    c->add_option("--avg-degree", gen.avg_degree)->check(CLI::PositiveNumber);
    c->add_option("--rho", gen.rho);
    c->add_option("--seed", gen.seed);
    c->add_option("--skew", gen.skew)->check(CLI::PositiveNumber);
    c->add_option("--out", out_file, "Output file (default: stdout)");
    c->callback([this] { action = [this] { return generate(); }; });
  }

  int generate() {
    const auto g = sim::generate_locality_graph(gen);
    if (out_file.empty()) {
      sim::write_graph(out, g);
    } else {
      std::ofstream f(out_file);
      sim::write_graph(f, g);
      out << "wrote " << g.node_count() << " nodes, " << g.edge_count() << " edges, correlation "
          << sim::linked_pair_correlation(g) << '\n';
    }
    return 0;
  }

  void add_feedback() {
    auto* c = app.add_subcommand("feedback", "Suggest a refined query from hot and cold marks");
    c->add_option("--session", session_file)->required()->check(CLI::ExistingFile);
    c->add_option("--query", query_id)->required();
    c->add_option("--k", k, "Candidate pool size")->check(CLI::PositiveNumber);
    c->add_option("--k-prime", k_prime, "Words to suggest")->check(CLI::PositiveNumber);
    c->add_option("--window", window, "Proximity radius in words")->check(CLI::PositiveNumber);
    c->add_flag("--json", json_out);
    c->callback([this] { action = [this] { return feedback(); }; });
  }

  int feedback() {
    auto ws = open_workspace(session_file);
    const auto dq = ws->run_feedback(*query_id, k, k_prime, window);
    if (json_out) {
      json words = json::array();
      for (const auto& w : dq.words) words.push_back({{"word", w.word}, {"dp", w.dp}, {"minProximity", w.min_proximity}});
      out << json{{"parentQuery", dq.parent_query}, {"node", dq.node}, {"words", words}}.dump(2) << '\n';
      return 0;
    }
    out << "derived query " << dq.node << " from " << dq.parent_query << ":\n";
    for (const auto& w : dq.words) {
      out << "  " << std::left << std::setw(20) << w.word << std::right << std::fixed << std::setprecision(2)
          << std::setw(10) << w.dp << "  proximity " << w.min_proximity << '\n';
    }
    return 0;
  }

  void add_serve() {
    auto* c = app.add_subcommand("serve", "Serve the JSON control API for a session");
    c->add_option("--bind", bind, "host:port");
    c->add_option("--session", session_file)->required();
    c->add_option("--token", token, "Bearer token for remote enqueue")->envname("HCRAWL_TOKEN");
    c->callback([this] { action = [this] { return serve(); }; });
  }

  int serve() {
    auto ws = open_workspace(session_file);
    service::Server server(*ws, token);
    const auto [host, port] = service::parse_bind(bind);
    const int bound = server.bind(host, port);
    out << "serving " << session_file << " on http://" << host << ':' << bound << '\n' << std::flush;
    InterruptScope scope;
    server.start();
    while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
    return 0;
  }

  void add_metasearch() {
    auto* c = app.add_subcommand("metasearch", "Query the configured engines and print candidate URLs");
    c->add_option("--query", metasearch_query)->required();
    c->add_option("--wrappers", sources.wrappers_file)->required()->check(CLI::ExistingFile);
    c->add_option("--corpus", sources.corpus)->check(CLI::ExistingDirectory);
    c->add_option("--corpus-base", sources.corpus_base);
    c->add_flag("--json", json_out);
    c->callback([this] { action = [this] { return metasearch(); }; });
  }

  int metasearch() {
    const auto src = sources.apply({});
    auto fetcher = service::make_engine_fetcher(src);
    const auto r = metasearch::dispatch(split_words({metasearch_query}), src.wrappers, *fetcher);
    for (const auto& f : r.failures) err << "engine failed: " << f.engine << ": " << f.reason << '\n';
    if (json_out) {
      json list = json::array();
      for (const auto& c : r.candidates) list.push_back({{"url", c.url}, {"engine", c.engine}});
      out << list.dump(2) << '\n';
    } else {
      for (const auto& c : r.candidates) out << c.engine << '\t' << c.url << '\n';
    }
    return r.all_failed ? 2 : 0;
  }

  void add_tree() {
    auto* t = app.add_subcommand("tree", "Edit the concept tree of a session");
    t->require_subcommand(1);
    auto* show = t->add_subcommand("show", "Print the tree");
    show->add_option("--session", session_file)->required()->check(CLI::ExistingFile);
    show->add_flag("--json", json_out);
    show->callback([this] {
      action = [this] {
        const auto s = service::load_session(session_file);
        if (json_out) {
          out << service::tree_to_json(s.tree).dump(2) << '\n';
        } else {
          print_tree(out, s.tree, s.tree.root(), 0);
        }
        return 0;
      };
    });
    auto* add = t->add_subcommand("add", "Add a concept or query node");
    add->add_option("--session", session_file)->required();
    add->add_option("--parent", parent, "Parent node id (default: root)");
    add->add_option("--kind", kind)->check(CLI::IsMember({"query", "concept"}));
    add->add_option("words", node_words)->required();
    add->callback([this] {
      action = [this] {
        auto ws = open_workspace(session_file);
        const auto k = kind == "query" ? concept_tree::NodeKind::kQuery : concept_tree::NodeKind::kConcept;
        out << ws->add_node(parent.value_or(ws->snapshot().tree.root()), k, split_words(node_words)) << '\n';
        return 0;
      };
    });
    auto* remove = t->add_subcommand("remove", "Remove a node and its subtree");
    remove->add_option("--session", session_file)->required()->check(CLI::ExistingFile);
    remove->add_option("id", node_id)->required();
    remove->callback([this] {
      action = [this] {
        open_workspace(session_file)->remove_node(node_id);
        return 0;
      };
    });
    auto* set = t->add_subcommand("set", "Replace the tree with a JSON document (as printed by show --json)");
    set->add_option("--session", session_file)->required();
    set->add_option("--file", tree_file)->required()->check(CLI::ExistingFile);
    set->callback([this] {
      action = [this] {
        std::ifstream in(tree_file);
        std::ostringstream text;
        text << in.rdbuf();
        json j;
        try {
          j = json::parse(text.str());
        } catch (const json::parse_error& e) {
          throw ParseError("tree file is not JSON", e.byte == 0 ? 0 : e.byte - 1);
        }
        open_workspace(session_file)->replace_tree(service::tree_from_json(j));
        return 0;
      };
    });
  }

  void add_mark() {
    auto* c = app.add_subcommand("mark", "Mark a result hot or cold, or clear the mark");
    c->add_option("--session", session_file)->required()->check(CLI::ExistingFile);
    auto* d = c->add_option("--doc", doc, "Result id");
    c->add_option("--url", url, "Result URL")->excludes(d);
    c->add_option("state", mark_state)->required()->check(CLI::IsMember({"hot", "cold", "clear"}));
    c->callback([this] {
      action = [this] {
        if (doc.empty() == url.empty()) throw CLI::ValidationError("mark", "give --doc or --url");
        std::string id = doc;
        if (!url.empty()) {
          const auto u = web::normalize(url);
          id = service::doc_id(u ? u->str() : url);
        }
        open_workspace(session_file)->mark(id, service::parse_mark(mark_state));
        return 0;
      };
    });
  }

  void add_enqueue() {
    auto* c = app.add_subcommand("enqueue", "Add a query and search it, locally or on a remote service");
    c->add_option("words", node_words)->required();
    auto* s = c->add_option("--session", session_file, "Local session");
    auto* r = c->add_option("--remote", remote, "Base URL of a running service")->excludes(s);
    c->add_option("--token", token, "Bearer token for --remote")->envname("HCRAWL_TOKEN");
    c->add_option("--parent", parent);
    c->add_flag("--json", json_out);
    (void)r;
    c->callback([this] { action = [this] { return enqueue(); }; });
  }

  int enqueue() {
    const auto words = split_words(node_words);
    if (!remote.empty()) {
      httplib::Client client(remote);
      json body{{"words", words}};
      if (parent) body["parent"] = *parent;
      const auto res = client.Post("/remote/enqueue", {{"Authorization", "Bearer " + token}}, body.dump(),
                                   "application/json");
      if (!res) throw std::runtime_error("cannot reach " + remote + ": " + httplib::to_string(res.error()));
      if (res->status != 202) throw std::runtime_error("remote refused: " + res->body);
      out << json::parse(res->body).at("query").get<NodeId>() << '\n';
      return 0;
    }
    if (session_file.empty()) throw CLI::ValidationError("enqueue", "give --session or --remote");
    auto ws = open_workspace(session_file);
    const NodeId q = ws->add_node(parent.value_or(ws->snapshot().tree.root()), concept_tree::NodeKind::kQuery, words);
    search_interruptibly(*ws, q);
    if (!json_out) out << "query " << q << '\n';
    print_results(out, ws->results(q), json_out);
    return 0;
  }

  void add_schedule() {
    auto* c = app.add_subcommand("schedule", "Manage periodic searches run by `serve`");
    c->require_subcommand(1);
    auto* add = c->add_subcommand("add");
    add->add_option("--session", session_file)->required()->check(CLI::ExistingFile);
    add->add_option("--query", query_id)->required();
    add->add_option("--every", every, "Interval in seconds (at least 60)");
    add->add_option("--first", first_run, "First run, unix seconds (default: now)");
    add->callback([this] {
      action = [this] {
        const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                             std::chrono::system_clock::now().time_since_epoch()).count();
        open_workspace(session_file)->add_schedule({*query_id, every, first_run.value_or(now), true});
        return 0;
      };
    });
    auto* remove = c->add_subcommand("remove");
    remove->add_option("--session", session_file)->required()->check(CLI::ExistingFile);
    remove->add_option("--query", query_id)->required();
    remove->callback([this] {
      action = [this] { return open_workspace(session_file)->remove_schedule(*query_id) ? 0 : 2; };
    });
    auto* list = c->add_subcommand("list");
    list->add_option("--session", session_file)->required()->check(CLI::ExistingFile);
    list->callback([this] {
      action = [this] {
        for (const auto& e : service::load_session(session_file).schedule) {
          out << "query " << e.query << " every " << e.interval_seconds << "s next " << e.next_run
              << (e.enabled ? "" : " (disabled)") << '\n';
        }
        return 0;
      };
    });
  }
};

void collect(const CLI::App* app, const std::string& prefix, std::vector<std::string>& out) {
  for (const auto* sub : app->get_subcommands({})) {
    const std::string path = prefix.empty() ? sub->get_name() : prefix + " " + sub->get_name();
    out.push_back(path);
    collect(sub, path, out);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli(out, err);
  std::vector<const char*> argv{"hcrawl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    cli.app.parse(static_cast<int>(argv.size()), argv.data());
    return cli.action ? cli.action() : 0;
  } catch (const CLI::ParseError& e) {
    const int code = cli.app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

std::vector<std::string> command_paths() {
  std::ostringstream sink;
  Cli cli(sink, sink);
  std::vector<std::string> out;
  collect(&cli.app, "", out);
  return out;
}

}  // namespace hcrawl::cli
