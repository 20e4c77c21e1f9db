#include "hcrawl/service/session.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hcrawl/error.hpp"

namespace hcrawl::service {

using nlohmann::json;

std::string_view to_string(Mark m) { return m == Mark::kHot ? "hot" : "cold"; }

std::optional<Mark> parse_mark(std::string_view s) {
  if (s == "hot") return Mark::kHot;
  if (s == "cold") return Mark::kCold;
  return std::nullopt;
}

std::string doc_id(std::string_view url) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : url) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void ScheduleEntry::validate() const {
  if (interval_seconds < 60) throw DomainError("schedule interval must be at least one minute");
}

Profile Profile::named(std::string_view name) {
  Profile p;
  p.name = std::string(name);
  p.spider = spider::SpiderConfig::profile(name);
  return p;
}

const spider::DisplayedDoc* Session::find_doc(std::string_view id) const {
  for (const auto& [q, docs] : results) {
    for (const auto& d : docs) {
      if (doc_id(d.url) == id) return &d;
    }
  }
  return nullptr;
}

json tree_to_json(const concept_tree::ConceptTree& t) {
  json nodes = json::array();
  for (const auto& [id, n] : t.nodes()) {
    json j{{"id", id},
           {"kind", n.kind == concept_tree::NodeKind::kQuery ? "query" : "concept"},
           {"words", n.words},
           {"parent", nullptr}};
    if (n.parent) j["parent"] = *n.parent;
    nodes.push_back(std::move(j));
  }
  return {{"nextId", t.next_id()}, {"nodes", nodes}};
}

concept_tree::ConceptTree tree_from_json(const json& j) {
  try {
    std::vector<concept_tree::Node> nodes;
    for (const auto& n : j.at("nodes")) {
      concept_tree::Node node;
      node.id = n.at("id").get<NodeId>();
      const auto kind = n.at("kind").get<std::string>();
      if (kind != "query" && kind != "concept") throw DomainError("unknown node kind '" + kind + "'");
      node.kind = kind == "query" ? concept_tree::NodeKind::kQuery : concept_tree::NodeKind::kConcept;
      node.words = n.at("words").get<std::vector<std::string>>();
      if (!n.at("parent").is_null()) node.parent = n.at("parent").get<NodeId>();
      nodes.push_back(std::move(node));
    }
    return concept_tree::ConceptTree::from_nodes(std::move(nodes), j.value("nextId", NodeId{0}));
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid tree: ") + e.what());
  }
}

json doc_to_json(const spider::DisplayedDoc& d) {
  return {{"docId", doc_id(d.url)}, {"url", d.url},     {"score", d.score},   {"combined", d.combined},
          {"level", d.level},       {"depth", d.depth}, {"origin", d.origin}, {"title", d.title},
          {"abstract", d.abstract}};
}

spider::DisplayedDoc doc_from_json(const json& j) {
  spider::DisplayedDoc d;
  d.url = j.at("url").get<std::string>();
  d.score = j.at("score").get<double>();
  d.combined = j.value("combined", 0.0);
  d.level = j.value("level", std::size_t{0});
  d.depth = j.value("depth", 0);
  d.origin = j.value("origin", std::string());
  d.title = j.value("title", std::string());
  d.abstract = j.value("abstract", std::string());
  return d;
}

namespace {

json spider_json(const spider::SpiderConfig& c) {
  return {{"maxDepth", c.max_depth},
          {"happinessThreshold", c.happiness_threshold},
          {"displayThreshold", c.display_threshold},
          {"initialHappiness", c.initial_happiness},
          {"windowSize", c.window_size},
          {"fetchTimeoutMs", c.fetch_timeout.count()},
          {"maxParallelFetches", c.max_parallel_fetches},
          {"politenessMs", c.politeness.count()},
          {"maxFetches", c.max_fetches}};
}

spider::SpiderConfig spider_from(const json& j) {
  spider::SpiderConfig c;
  c.max_depth = j.value("maxDepth", c.max_depth);
  c.happiness_threshold = j.value("happinessThreshold", c.happiness_threshold);
  c.display_threshold = j.value("displayThreshold", c.display_threshold);
  c.initial_happiness = j.value("initialHappiness", c.initial_happiness);
  c.window_size = j.value("windowSize", c.window_size);
  c.fetch_timeout = std::chrono::milliseconds(j.value("fetchTimeoutMs", c.fetch_timeout.count()));
  c.max_parallel_fetches = j.value("maxParallelFetches", c.max_parallel_fetches);
  c.politeness = std::chrono::milliseconds(j.value("politenessMs", c.politeness.count()));
  c.max_fetches = j.value("maxFetches", c.max_fetches);
  c.validate();
  return c;
}

json rank_json(const ranking::RankParams& p) {
  return {{"k0", p.k0}, {"k1", p.k1}, {"k2", p.k2}, {"k3", p.k3}, {"k4", p.k4}, {"k5", p.k5}, {"ts", p.ts}};
}

ranking::RankParams rank_from(const json& j) {
  ranking::RankParams p;
  p.k0 = j.value("k0", p.k0);
  p.k1 = j.value("k1", p.k1);
  p.k2 = j.value("k2", p.k2);
  p.k3 = j.value("k3", p.k3);
  p.k4 = j.value("k4", p.k4);
  p.k5 = j.value("k5", p.k5);
  p.ts = j.value("ts", p.ts);
  p.validate();
  return p;
}

}  // namespace

std::string session_to_json(const Session& s) {
  json marks = json::object();
  for (const auto& [url, m] : s.marks) marks[url] = std::string(to_string(m));
  json results = json::object();
  for (const auto& [q, docs] : s.results) {
    json list = json::array();
    for (const auto& d : docs) list.push_back(doc_to_json(d));
    results[std::to_string(q)] = std::move(list);
  }
  json derived = json::array();
  for (const auto& d : s.derived_queries) {
    json words = json::array();
    for (const auto& w : d.words) words.push_back({{"word", w.word}, {"dp", w.dp}, {"minProximity", w.min_proximity}});
    derived.push_back({{"parentQuery", d.parent_query}, {"node", d.node}, {"words", words}});
  }
  json schedule = json::array();
  for (const auto& e : s.schedule) {
    schedule.push_back(
        {{"query", e.query}, {"intervalSeconds", e.interval_seconds}, {"nextRun", e.next_run}, {"enabled", e.enabled}});
  }
  json wrappers = json::parse(metasearch::wrappers_to_json(s.sources.wrappers)).at("engines");
  json doc{{"version", kSessionVersion},
           {"conceptTree", tree_to_json(s.tree)},
           {"marks", marks},
           {"results", results},
           {"derivedQueries", derived},
           {"profile",
            {{"name", s.profile.name},
             {"spider", spider_json(s.profile.spider)},
             {"rank", rank_json(s.profile.rank)},
             {"combined", {{"k6", s.profile.combined.k6}, {"k7", s.profile.combined.k7}}}}},
           {"schedule", schedule},
           {"sources",
            {{"corpusRoot", s.sources.corpus_root},
             {"corpusBase", s.sources.corpus_base},
             {"live", s.sources.live},
             {"seeds", s.sources.seeds},
             {"wrappers", wrappers}}}};
  return doc.dump(2);
}

Session session_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("session is not valid JSON", e.byte == 0 ? 0 : e.byte - 1);
  }
  if (!doc.is_object() || !doc.contains("version") || !doc["version"].is_number_integer()) {
    throw ParseError("session has no version field", 0);
  }
  const int version = doc["version"].get<int>();
  if (version != kSessionVersion) throw MigrationError(version, kSessionVersion);

  Session s;
  try {
    s.tree = tree_from_json(doc.at("conceptTree"));
    const json marks = doc.value("marks", json::object());
    for (const auto& [url, m] : marks.items()) {
      auto mark = parse_mark(m.get<std::string>());
      if (!mark) throw DomainError("bad mark for " + url);
      s.marks[url] = *mark;
    }
    const json results = doc.value("results", json::object());
    for (const auto& [q, list] : results.items()) {
      auto& docs = s.results[std::stoull(q)];
      for (const auto& d : list) docs.push_back(doc_from_json(d));
    }
    for (const auto& d : doc.value("derivedQueries", json::array())) {
      DerivedQuery dq;
      dq.parent_query = d.at("parentQuery").get<NodeId>();
      dq.node = d.at("node").get<NodeId>();
      for (const auto& w : d.at("words")) {
        dq.words.push_back({w.at("word").get<std::string>(), w.at("dp").get<double>(),
                            w.at("minProximity").get<std::size_t>()});
      }
      s.derived_queries.push_back(std::move(dq));
    }
    if (doc.contains("profile")) {
      const auto& p = doc["profile"];
      s.profile.name = p.value("name", s.profile.name);
      s.profile.spider = spider_from(p.value("spider", json::object()));
      s.profile.rank = rank_from(p.value("rank", json::object()));
      const auto c = p.value("combined", json::object());
      s.profile.combined.k6 = c.value("k6", s.profile.combined.k6);
      s.profile.combined.k7 = c.value("k7", s.profile.combined.k7);
      s.profile.combined.validate();
    }
    for (const auto& e : doc.value("schedule", json::array())) {
      ScheduleEntry entry{e.at("query").get<NodeId>(), e.at("intervalSeconds").get<std::int64_t>(),
                          e.at("nextRun").get<std::int64_t>(), e.value("enabled", true)};
      entry.validate();
      s.schedule.push_back(entry);
    }
    if (doc.contains("sources")) {
      const auto& src = doc["sources"];
      s.sources.corpus_root = src.value("corpusRoot", std::string());
      s.sources.corpus_base = src.value("corpusBase", std::string());
      s.sources.live = src.value("live", false);
      s.sources.seeds = src.value("seeds", std::vector<std::string>());
      s.sources.wrappers =
          metasearch::parse_wrappers(json{{"engines", src.value("wrappers", json::array())}}.dump());
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid session: ") + e.what());
  }
  for (const auto& [url, m] : s.marks) {
    if (!s.find_doc(doc_id(url))) throw DomainError("mark on unknown result " + url);
  }
  return s;
}

void save_session(const Session& s, const std::filesystem::path& path) {
  // Write then rename, so a crash never leaves a truncated session.
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write " + tmp);
    out << session_to_json(s) << '\n';
    if (!out) throw DomainError("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Session load_session(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return session_from_json(s.str());
}

}  // namespace hcrawl::service
