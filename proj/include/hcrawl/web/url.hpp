#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace hcrawl::web {

/// An absolute hierarchical URL. `port` is empty when the scheme default applies.
struct Url {
  std::string scheme;
  std::string host;
  std::optional<int> port;
  std::string path = "/";
  std::string query;  ///< without '?'; empty means absent

  std::string authority() const;
  std::string target() const;  ///< path plus "?query"
  std::string str() const;

  friend bool operator==(const Url&, const Url&) = default;
};

/// Parses an absolute URL with an authority part. Returns nullopt for
/// relative references and for opaque forms such as mailto:.
std::optional<Url> parse_url(std::string_view text);

/// Resolves `ref` against `base` as browsers do and normalizes the result:
/// scheme and host lowercased, default ports and fragments dropped, dot
/// segments removed. Returns nullopt when the result is not http, https or file.
std::optional<Url> resolve(const Url& base, std::string_view ref);

/// parse_url followed by the same normalization as resolve.
std::optional<Url> normalize(std::string_view text);

std::string remove_dot_segments(std::string_view path);

/// Percent-encodes everything except unreserved characters.
std::string percent_encode(std::string_view text);
std::string percent_decode(std::string_view text);

}  // namespace hcrawl::web
