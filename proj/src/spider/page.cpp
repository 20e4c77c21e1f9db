#include "hcrawl/spider/page.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "hcrawl/error.hpp"
#include "hcrawl/metasearch/tags.hpp"

namespace hcrawl::spider {
namespace {

constexpr std::size_t kAbstractWords = 30;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Inner text of the first <name ...>...</name>, or empty.
std::string_view element_text(std::string_view markup, std::string_view lowered, std::string_view name) {
  const std::string open = "<" + std::string(name);
  std::size_t at = 0;
  while ((at = lowered.find(open, at)) != std::string_view::npos) {
    const std::size_t after = at + open.size();
    if (after < lowered.size() && (lowered[after] == '>' || std::isspace(static_cast<unsigned char>(lowered[after])))) break;
    at = after;
  }
  if (at == std::string_view::npos) return {};
  const auto gt = lowered.find('>', at);
  if (gt == std::string_view::npos) return {};
  const auto close = lowered.find("</" + std::string(name), gt);
  return markup.substr(gt + 1, (close == std::string_view::npos ? markup.size() : close) - gt - 1);
}

std::string collapse(std::u32string_view text, std::size_t max_words) {
  std::istringstream in(text::encode_utf8(text));
  std::string word;
  std::string out;
  for (std::size_t n = 0; n < max_words && in >> word; ++n) {
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

std::u32string decode_lenient(std::string_view raw, text::Encoding enc) {
  try {
    return text::decode(raw, enc);
  } catch (const DecodeError&) {
    return text::decode(raw, text::Encoding::kLatin1);
  }
}

}  // namespace

bool is_markup(std::string_view media_type) {
  const std::string t = lower(media_type.substr(0, media_type.find(';')));
  return t.find("html") != std::string::npos;
}

text::Encoding detect_encoding(std::string_view body, std::string_view media_type) {
  const std::string t = lower(media_type);
  if (const auto at = t.find("charset="); at != std::string::npos) {
    std::string cs = t.substr(at + 8);
    cs = cs.substr(0, cs.find_first_of("; "));
    std::erase(cs, '"');
    if (cs == "iso-8859-1" || cs == "latin1" || cs == "latin-1" || cs == "windows-1252") {
      return text::Encoding::kLatin1;
    }
  }
  try {
    text::decode(body, text::Encoding::kUtf8);
    return text::Encoding::kUtf8;
  } catch (const DecodeError&) {
    return text::Encoding::kLatin1;
  }
}

std::vector<web::Url> extract_links(std::string_view markup, const web::Url& base) {
  const auto tags = metasearch::lex_tags(markup);
  web::Url effective = base;
  for (const auto& tag : tags) {
    if (tag.name != "base") continue;
    if (auto href = tag.attribute("href")) {
      if (auto u = web::resolve(base, *href)) effective = *u;
    }
    break;
  }
  std::vector<web::Url> out;
  std::unordered_set<std::string> seen;
  for (const auto& tag : tags) {
    std::optional<std::string> target;
    if (tag.name == "a" || tag.name == "area") target = tag.attribute("href");
    else if (tag.name == "frame" || tag.name == "iframe") target = tag.attribute("src");
    if (!target || target->empty()) continue;
    auto u = web::resolve(effective, *target);
    if (u && seen.insert(u->str()).second) out.push_back(std::move(*u));
  }
  return out;
}

Page read_page(const web::FetchResult& fetched, const web::Url& url) {
  Page page;
  const text::Encoding enc = detect_encoding(fetched.body, fetched.media_type);
  const std::u32string decoded = decode_lenient(fetched.body, enc);
  if (!is_markup(fetched.media_type)) {
    page.words = text::tokenize_text(decoded);
    page.abstract = collapse(decoded, kAbstractWords);
    return page;
  }
  const std::u32string stripped = text::strip_markup(decoded);
  page.words = text::tokenize_text(stripped);

  // Title and body are located on the UTF-8 form so byte offsets line up.
  const std::string utf8 = text::encode_utf8(decoded);
  const std::string lowered = lower(utf8);
  std::string_view title = element_text(utf8, lowered, "title");
  for (const char* h : {"h1", "h2", "h3", "h4", "h5", "h6"}) {
    if (!title.empty()) break;
    title = element_text(utf8, lowered, h);
  }
  page.title = collapse(text::strip_markup(text::decode(title)), SIZE_MAX);

  std::string_view body = element_text(utf8, lowered, "body");
  if (body.empty()) {
    const auto head_end = lowered.find("</head>");
    body = head_end == std::string::npos ? std::string_view(utf8) : std::string_view(utf8).substr(head_end + 7);
  }
  page.abstract = collapse(text::strip_markup(text::decode(body)), kAbstractWords);

  page.links = extract_links(utf8, url);
  return page;
}

}  // namespace hcrawl::spider
