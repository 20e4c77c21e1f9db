#include "hcrawl/web/url.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace hcrawl::web {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

int default_port(std::string_view scheme) {
  if (scheme == "http") return 80;
  if (scheme == "https") return 443;
  return -1;
}

bool valid_scheme(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '+' || c == '-' || c == '.';
  });
}

// Splits off "#fragment" and "?query".
void split_tail(std::string_view& rest, std::string& query, bool& has_query) {
  if (auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
  if (auto q = rest.find('?'); q != std::string_view::npos) {
    query = std::string(rest.substr(q + 1));
    has_query = true;
    rest = rest.substr(0, q);
  }
}

std::optional<Url> finish(Url u) {
  u.scheme = lower(u.scheme);
  u.host = lower(u.host);
  if (u.port && *u.port == default_port(u.scheme)) u.port.reset();
  u.path = remove_dot_segments(u.path.empty() ? "/" : u.path);
  if (u.path.empty() || u.path.front() != '/') u.path.insert(u.path.begin(), '/');
  if (u.scheme != "http" && u.scheme != "https" && u.scheme != "file") return std::nullopt;
  if (u.scheme != "file" && u.host.empty()) return std::nullopt;
  return u;
}

}  // namespace

std::string Url::authority() const {
  if (!port) return host;
  return host + ":" + std::to_string(*port);
}

std::string Url::target() const { return query.empty() ? path : path + "?" + query; }

std::string Url::str() const { return scheme + "://" + authority() + target(); }

std::optional<Url> parse_url(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto colon = text.find("://");
  if (colon == std::string_view::npos || !valid_scheme(text.substr(0, colon))) return std::nullopt;
  Url u;
  u.scheme = std::string(text.substr(0, colon));
  std::string_view rest = text.substr(colon + 3);
  bool has_query = false;
  split_tail(rest, u.query, has_query);
  const auto slash = rest.find('/');
  std::string_view authority = rest.substr(0, slash);
  u.path = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
  if (auto at = authority.rfind('@'); at != std::string_view::npos) authority = authority.substr(at + 1);
  if (auto pc = authority.rfind(':'); pc != std::string_view::npos && authority.find(']') == std::string_view::npos) {
    const std::string_view digits = authority.substr(pc + 1);
    authority = authority.substr(0, pc);
    if (!digits.empty()) {
      if (digits.size() > 5 || !std::all_of(digits.begin(), digits.end(), ::isdigit)) return std::nullopt;
      const int port = std::stoi(std::string(digits));
      if (port <= 0 || port > 65535) return std::nullopt;
      u.port = port;
    }
  }
  u.host = std::string(authority);
  return u;
}

std::optional<Url> normalize(std::string_view text) {
  auto u = parse_url(text);
  if (!u) return std::nullopt;
  return finish(std::move(*u));
}

std::optional<Url> resolve(const Url& base, std::string_view ref) {
  while (!ref.empty() && std::isspace(static_cast<unsigned char>(ref.front()))) ref.remove_prefix(1);
  while (!ref.empty() && std::isspace(static_cast<unsigned char>(ref.back()))) ref.remove_suffix(1);

  if (const auto colon = ref.find(':'); colon != std::string_view::npos) {
    const std::string_view scheme = ref.substr(0, colon);
    const bool before_path = ref.find_first_of("/?#") > colon;
    if (before_path && valid_scheme(scheme)) {
      if (ref.substr(colon + 1, 2) != "//") return std::nullopt;  // mailto:, javascript:
      return normalize(ref);
    }
  }
  if (ref.substr(0, 2) == "//") return normalize(base.scheme + ":" + std::string(ref));

  Url u = base;
  std::string query;
  bool has_query = false;
  split_tail(ref, query, has_query);
  if (ref.empty()) {
    if (has_query) u.query = query;
  } else if (ref.front() == '/') {
    u.path = std::string(ref);
    u.query = query;
  } else {
    const auto last = base.path.rfind('/');
    u.path = base.path.substr(0, last + 1) + std::string(ref);
    u.query = query;
  }
  return finish(std::move(u));
}

std::string remove_dot_segments(std::string_view path) {
  std::vector<std::string_view> out;
  const bool absolute = !path.empty() && path.front() == '/';
  bool trailing = false;
  std::size_t i = absolute ? 1 : 0;
  while (i <= path.size()) {
    const auto next = std::min(path.find('/', i), path.size());
    const std::string_view seg = path.substr(i, next - i);
    trailing = false;
    if (seg == "..") {
      if (!out.empty()) out.pop_back();
      trailing = true;
    } else if (seg == ".") {
      trailing = true;
    } else {
      out.push_back(seg);
    }
    i = next + 1;
  }
  std::string result = absolute ? "/" : "";
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (k) result += '/';
    result += out[k];
  }
  if (trailing && !out.empty() && out.back() != "") result += '/';
  return result;
}

std::string percent_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 15]);
    }
  }
  return out;
}

std::string percent_decode(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 2 < text.size() && std::isxdigit(static_cast<unsigned char>(text[i + 1])) &&
        std::isxdigit(static_cast<unsigned char>(text[i + 2]))) {
      out.push_back(static_cast<char>(std::stoi(std::string(text.substr(i + 1, 2)), nullptr, 16)));
      i += 2;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

}  // namespace hcrawl::web
