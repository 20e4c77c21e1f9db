#include "hcrawl/metasearch/tags.hpp"

#include <cctype>
#include <string>

#include "hcrawl/text/tokenizer.hpp"

namespace hcrawl::metasearch {
namespace {

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' || c == '.';
}

bool space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

// Case-insensitive search for `needle` (already lowercase) from `from`.
std::size_t ifind(std::string_view hay, std::string_view needle, std::size_t from) {
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < needle.size() && match; ++k) {
      match = std::tolower(static_cast<unsigned char>(hay[i + k])) == needle[k];
    }
    if (match) return i;
  }
  return std::string_view::npos;
}

// Finds the '>' closing the tag that starts at `from`, honouring quotes.
std::size_t tag_end(std::string_view raw, std::size_t from) {
  char quote = 0;
  for (std::size_t i = from; i < raw.size(); ++i) {
    const char c = raw[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      // Quotes only open after '=', as in attr="v".
      std::size_t k = i;
      while (k > from && space(raw[k - 1])) --k;
      if (k > from && raw[k - 1] == '=') quote = c;
    } else if (c == '>') {
      return i;
    }
  }
  return std::string_view::npos;
}

void parse_attributes(std::string_view body, Tag& tag) {
  std::size_t i = 0;
  while (i < body.size()) {
    while (i < body.size() && (space(body[i]) || body[i] == '/')) ++i;
    const std::size_t start = i;
    while (i < body.size() && !space(body[i]) && body[i] != '=' && body[i] != '/') ++i;
    if (i == start) {
      ++i;
      continue;
    }
    std::string key = lower(body.substr(start, i - start));
    while (i < body.size() && space(body[i])) ++i;
    std::string value;
    if (i < body.size() && body[i] == '=') {
      ++i;
      while (i < body.size() && space(body[i])) ++i;
      if (i < body.size() && (body[i] == '"' || body[i] == '\'')) {
        const char q = body[i++];
        const auto close = body.find(q, i);
        const auto stop = close == std::string_view::npos ? body.size() : close;
        value = decode_entities(body.substr(i, stop - i));
        i = stop + 1;
      } else {
        const std::size_t vstart = i;
        while (i < body.size() && !space(body[i])) ++i;
        value = decode_entities(body.substr(vstart, i - vstart));
      }
    }
    tag.attributes.emplace_back(std::move(key), std::move(value));
  }
}

}  // namespace

std::optional<std::string> Tag::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string decode_entities(std::string_view text) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    const auto semi = text.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back(text[i++]);
      continue;
    }
    const std::string_view name = text.substr(i + 1, semi - i - 1);
    char32_t cp = 0;
    if (name == "amp") cp = '&';
    else if (name == "lt") cp = '<';
    else if (name == "gt") cp = '>';
    else if (name == "quot") cp = '"';
    else if (name == "apos") cp = '\'';
    else if (name == "nbsp") cp = ' ';
    else if (name.size() > 1 && name[0] == '#') {
      try {
        const bool hex = name[1] == 'x' || name[1] == 'X';
        const unsigned long v = std::stoul(std::string(name.substr(hex ? 2 : 1)), nullptr, hex ? 16 : 10);
        if (v > 0 && v <= 0x10FFFF) cp = static_cast<char32_t>(v);
      } catch (const std::exception&) {
      }
    }
    if (cp == 0) {
      out.push_back(text[i++]);
      continue;
    }
    out += text::encode_utf8(std::u32string(1, cp));
    i = semi + 1;
  }
  return out;
}

TagStream lex_tags(std::string_view raw) {
  TagStream out;
  std::size_t i = 0;
  while (true) {
    const auto lt = raw.find('<', i);
    if (lt == std::string_view::npos || lt + 1 >= raw.size()) break;
    const char next = raw[lt + 1];
    if (raw.substr(lt, 4) == "<!--") {
      const auto close = raw.find("-->", lt + 4);
      if (close == std::string_view::npos) break;
      i = close + 3;
      continue;
    }
    if (next == '!' || next == '?') {
      const auto close = raw.find('>', lt);
      if (close == std::string_view::npos) break;
      i = close + 1;
      continue;
    }
    const bool closing = next == '/';
    std::size_t p = lt + (closing ? 2 : 1);
    const std::size_t name_start = p;
    while (p < raw.size() && name_char(raw[p])) ++p;
    if (p == name_start || !std::isalpha(static_cast<unsigned char>(raw[name_start]))) {
      i = lt + 1;  // a stray '<' in text
      continue;
    }
    const auto gt = tag_end(raw, p);
    if (gt == std::string_view::npos) break;
    Tag tag;
    tag.name = (closing ? "/" : "") + lower(raw.substr(name_start, p - name_start));
    if (!closing) parse_attributes(raw.substr(p, gt - p), tag);
    i = gt + 1;
    if (tag.name == "script" || tag.name == "style") {
      const auto close = ifind(raw, "</" + tag.name, i);
      out.push_back(std::move(tag));
      i = close == std::string_view::npos ? raw.size() : close;
      continue;
    }
    out.push_back(std::move(tag));
  }
  return out;
}

}  // namespace hcrawl::metasearch
