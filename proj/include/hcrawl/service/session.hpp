#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hcrawl/concept/concept_tree.hpp"
#include "hcrawl/concept/happiness.hpp"
#include "hcrawl/feedback/feedback.hpp"
#include "hcrawl/metasearch/wrapper.hpp"
#include "hcrawl/ranking/rank.hpp"
#include "hcrawl/spider/spider.hpp"

namespace hcrawl::service {

using concept_tree::NodeId;

inline constexpr int kSessionVersion = 1;

enum class Mark { kHot, kCold };

std::string_view to_string(Mark m);
/// "hot" or "cold"; "clear" and anything else give nullopt.
std::optional<Mark> parse_mark(std::string_view s);

/// Stable identifier of a result URL (FNV-1a, 16 hex digits).
std::string doc_id(std::string_view url);

struct DerivedQuery {
  NodeId parent_query = 0;
  NodeId node = 0;  ///< the query node created for it
  std::vector<feedback::SuggestedWord> words;
  friend bool operator==(const DerivedQuery&, const DerivedQuery&) = default;
};

struct ScheduleEntry {
  NodeId query = 0;
  std::int64_t interval_seconds = 3600;  ///< at least 60
  std::int64_t next_run = 0;             ///< unix seconds
  bool enabled = true;

  void validate() const;
  friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

struct Profile {
  std::string name = "pessimistic";
  spider::SpiderConfig spider = spider::SpiderConfig::pessimistic();
  ranking::RankParams rank;
  concept_tree::CombinedParams combined;

  static Profile named(std::string_view name);
  friend bool operator==(const Profile&, const Profile&) = default;
};

/// Where documents come from: a local corpus directory served under a base
/// URL, live HTTP, or both.
struct Sources {
  std::string corpus_root;
  std::string corpus_base;  ///< empty means file://<root>/
  bool live = false;
  std::vector<std::string> seeds;
  std::vector<metasearch::WrapperSpec> wrappers;
  friend bool operator==(const Sources&, const Sources&) = default;
};

struct Session {
  concept_tree::ConceptTree tree;
  std::map<std::string, Mark> marks;  ///< url -> mark; unmarked urls are absent
  std::map<NodeId, std::vector<spider::DisplayedDoc>> results;
  std::vector<DerivedQuery> derived_queries;
  Profile profile;
  std::vector<ScheduleEntry> schedule;
  Sources sources;

  /// The result with this doc id in any query's list.
  const spider::DisplayedDoc* find_doc(std::string_view id) const;

  friend bool operator==(const Session&, const Session&) = default;
};

nlohmann::json doc_to_json(const spider::DisplayedDoc& d);
spider::DisplayedDoc doc_from_json(const nlohmann::json& j);
nlohmann::json tree_to_json(const concept_tree::ConceptTree& t);
/// Throws DomainError on invalid structure.
concept_tree::ConceptTree tree_from_json(const nlohmann::json& j);

std::string session_to_json(const Session& s);
/// Throws ParseError (with byte offset) on malformed JSON, MigrationError on a
/// different schema version and DomainError on invalid content.
Session session_from_json(std::string_view json);

void save_session(const Session& s, const std::filesystem::path& path);
Session load_session(const std::filesystem::path& path);

}  // namespace hcrawl::service
