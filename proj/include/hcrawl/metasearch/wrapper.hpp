#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hcrawl/metasearch/tags.hpp"

namespace hcrawl::metasearch {

/// Per-engine wrapper: where to send the query and which tag pattern
/// t ft* <a> marks a result link on the answer page.
struct WrapperSpec {
  std::string engine;
  std::string query_template;  ///< contains "{q}" exactly once
  std::string t;
  std::string ft;
  bool enabled = true;

  /// Throws DomainError on an empty engine name or tag, t or ft naming the
  /// anchor, or a template without exactly one placeholder.
  void validate() const;
  /// The template with the words percent-encoded and joined with '+'.
  std::string query_url(const std::vector<std::string>& words) const;

  friend bool operator==(const WrapperSpec&, const WrapperSpec&) = default;
};

/// hrefs of the anchors closing a t ft* <a> run, in page order. Any other tag
/// returns the automaton to its start state. Anchors without href are skipped.
std::vector<std::string> extract_urls(const TagStream& stream, const WrapperSpec& wrapper);

/// {"engines": [{"name", "template", "t", "ft", "enabled"?}, ...]}
std::vector<WrapperSpec> parse_wrappers(std::string_view json);
std::vector<WrapperSpec> load_wrappers(const std::filesystem::path& path);
std::string wrappers_to_json(const std::vector<WrapperSpec>& wrappers);

}  // namespace hcrawl::metasearch
