#include "hcrawl/text/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#include "hcrawl/error.hpp"

namespace hcrawl::text {

namespace {

std::u32string decode_utf8(std::string_view raw) {
  std::u32string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    const auto b0 = static_cast<unsigned char>(raw[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2, cp = b0 & 0x1F, min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3, cp = b0 & 0x0F, min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4, cp = b0 & 0x07, min = 0x10000;
    } else {
      throw DecodeError("invalid UTF-8 lead byte", i);
    }
    if (i + len > raw.size()) throw DecodeError("truncated UTF-8 sequence", i);
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(raw[i + k]);
      if ((b & 0xC0) != 0x80) throw DecodeError("invalid UTF-8 continuation byte", i + k);
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw DecodeError("invalid UTF-8 code point", i);
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

bool ascii_iequal(std::u32string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char32_t c = a[i];
    if (c >= 'A' && c <= 'Z') c += 32;
    if (c != static_cast<unsigned char>(b[i])) return false;
  }
  return true;
}

struct NamedEntity {
  std::string_view name;
  char32_t value;
};

constexpr std::array<NamedEntity, 12> kEntities{{
    {"amp", U'&'},
    {"lt", U'<'},
    {"gt", U'>'},
    {"quot", U'"'},
    {"apos", U'\''},
    {"nbsp", U' '},
    {"copy", 0xA9},
    {"reg", 0xAE},
    {"eacute", 0xE9},
    {"egrave", 0xE8},
    {"agrave", 0xE0},
    {"uuml", 0xFC},
}};

// Parses an entity starting at text[i] == '&'. Returns the number of code
// points consumed, or 0 when this is not an entity.
std::size_t parse_entity(std::u32string_view text, std::size_t i, char32_t& value) {
  const std::size_t limit = std::min(text.size(), i + 12);
  std::size_t j = i + 1;
  while (j < limit && text[j] != ';') ++j;
  if (j >= limit || j == i + 1) return 0;
  const std::u32string_view body = text.substr(i + 1, j - i - 1);
  if (body[0] == '#') {
    char32_t cp = 0;
    const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
    const std::size_t start = hex ? 2 : 1;
    if (start >= body.size()) return 0;
    for (std::size_t k = start; k < body.size(); ++k) {
      const char32_t c = body[k];
      unsigned digit;
      if (c >= '0' && c <= '9') {
        digit = c - '0';
      } else if (hex && c >= 'a' && c <= 'f') {
        digit = c - 'a' + 10;
      } else if (hex && c >= 'A' && c <= 'F') {
        digit = c - 'A' + 10;
      } else {
        return 0;
      }
      cp = cp * (hex ? 16 : 10) + digit;
      if (cp > 0x10FFFF) return 0;
    }
    value = cp;
    return j - i + 1;
  }
  for (const auto& e : kEntities) {
    if (body.size() == e.name.size() &&
        std::equal(body.begin(), body.end(), e.name.begin(),
                   [](char32_t a, char b) { return a == static_cast<unsigned char>(b); })) {
      value = e.value;
      return j - i + 1;
    }
  }
  // Unknown named entity: dropped, acts as a separator.
  value = U' ';
  return j - i + 1;
}

// Finds the case-insensitive closing tag `</name` starting from `from`.
std::size_t find_close(std::u32string_view text, std::size_t from, std::string_view name) {
  for (std::size_t i = from; i + name.size() + 2 <= text.size(); ++i) {
    if (text[i] == '<' && text[i + 1] == '/' &&
        ascii_iequal(text.substr(i + 2, name.size()), name)) {
      return i;
    }
  }
  return std::u32string_view::npos;
}

}  // namespace

std::u32string decode(std::string_view raw, Encoding encoding) {
  if (encoding == Encoding::kLatin1) {
    std::u32string out;
    out.reserve(raw.size());
    for (char c : raw) out.push_back(static_cast<unsigned char>(c));
    return out;
  }
  return decode_utf8(raw);
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

std::u32string strip_markup(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t c = text[i];
    if (c == '<') {
      if (text.substr(i, 4) == U"<!--") {
        const std::size_t end = text.find(U"-->", i + 4);
        i = end == std::u32string_view::npos ? text.size() : end + 3;
        out.push_back(U' ');
        continue;
      }
      const std::size_t close = text.find(U'>', i + 1);
      if (close == std::u32string_view::npos) {
        // Unterminated tag at end of input.
        break;
      }
      const std::u32string_view tag = text.substr(i + 1, close - i - 1);
      std::size_t next = close + 1;
      for (std::string_view raw_elem : {std::string_view("script"), std::string_view("style")}) {
        if (ascii_iequal(tag.substr(0, raw_elem.size()), raw_elem) &&
            (tag.size() == raw_elem.size() || !is_word_char(tag[raw_elem.size()]))) {
          const std::size_t end = find_close(text, next, raw_elem);
          if (end == std::u32string_view::npos) {
            next = text.size();
          } else {
            const std::size_t gt = text.find(U'>', end);
            next = gt == std::u32string_view::npos ? text.size() : gt + 1;
          }
        }
      }
      out.push_back(U' ');
      i = next;
      continue;
    }
    if (c == '&') {
      char32_t value = 0;
      const std::size_t used = parse_entity(text, i, value);
      if (used > 0) {
        out.push_back(value);
        i += used;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

bool is_word_char(char32_t c) noexcept {
  if (c < 0x80) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
  }
  if (c < 0xC0) return c == 0xAA || c == 0xB5 || c == 0xBA;
  if (c == 0xD7 || c == 0xF7) return false;
  // General punctuation, symbols and spaces outside Latin-1 separate words.
  if ((c >= 0x2000 && c <= 0x2BFF) || (c >= 0x3000 && c <= 0x303F) || c == 0xFEFF) {
    return false;
  }
  return true;
}

char32_t to_lower(char32_t c) noexcept {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  return c;
}

WordSeq tokenize_text(std::u32string_view text) {
  WordSeq seq;
  std::u32string current;
  for (char32_t c : text) {
    if (is_word_char(c)) {
      current.push_back(to_lower(c));
    } else if (!current.empty()) {
      seq.words.push_back(encode_utf8(current));
      current.clear();
    }
  }
  if (!current.empty()) seq.words.push_back(encode_utf8(current));
  return seq;
}

WordSeq tokenize(std::string_view raw, bool markup, Encoding encoding) {
  const std::u32string decoded = decode(raw, encoding);
  if (!markup) return tokenize_text(decoded);
  return tokenize_text(strip_markup(decoded));
}

}  // namespace hcrawl::text
