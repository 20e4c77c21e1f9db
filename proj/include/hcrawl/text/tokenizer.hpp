#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hcrawl::text {

/// A document as an ordered sequence of lowercase word tokens. Positions are
/// indices into `words`, so distances are measured in words.
struct WordSeq {
  std::vector<std::string> words;

  std::size_t size() const noexcept { return words.size(); }
  bool empty() const noexcept { return words.empty(); }
  const std::string& operator[](std::size_t i) const { return words[i]; }
  auto begin() const noexcept { return words.begin(); }
  auto end() const noexcept { return words.end(); }

  friend bool operator==(const WordSeq&, const WordSeq&) = default;
};

enum class Encoding { kUtf8, kLatin1 };

/// Decodes raw bytes to code points. Throws DecodeError with the offset of the
/// first invalid byte.
std::u32string decode(std::string_view raw, Encoding encoding = Encoding::kUtf8);

std::string encode_utf8(std::u32string_view text);

/// Replaces tags with a space, decodes character entities and drops comments
/// and the contents of script/style elements.
std::u32string strip_markup(std::u32string_view text);

/// Letters and digits are word characters. Anything else separates tokens.
bool is_word_char(char32_t c) noexcept;
char32_t to_lower(char32_t c) noexcept;

WordSeq tokenize(std::string_view raw, bool markup,
                 Encoding encoding = Encoding::kUtf8);

/// Splits already-decoded text into lowercase tokens.
WordSeq tokenize_text(std::u32string_view text);

}  // namespace hcrawl::text
