#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hcrawl::metasearch {

/// One tag of a page. Closing tags are kept, named with a leading '/'.
struct Tag {
  std::string name;  ///< lowercase
  std::vector<std::pair<std::string, std::string>> attributes;  ///< names lowercase, values entity-decoded

  std::optional<std::string> attribute(std::string_view key) const;
  friend bool operator==(const Tag&, const Tag&) = default;
};

using TagStream = std::vector<Tag>;

/// Lenient tag lexer. Text, comments, declarations and processing
/// instructions are skipped, the raw content of script and style is skipped,
/// and an unterminated tag at end of input is dropped.
TagStream lex_tags(std::string_view raw);

/// Decodes the common named entities and numeric references in attribute
/// values. Unknown entities are left as written.
std::string decode_entities(std::string_view text);

}  // namespace hcrawl::metasearch
