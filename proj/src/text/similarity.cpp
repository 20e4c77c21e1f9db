#include "hcrawl/text/similarity.hpp"

#include <algorithm>

#include "hcrawl/error.hpp"

namespace hcrawl::text {

namespace {

bool is_continuation(char c) noexcept {
  return (static_cast<unsigned char>(c) & 0xC0) == 0x80;
}

std::size_t common_prefix_bytes(std::string_view a, std::string_view b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  // A mismatch inside a multi-byte sequence must not leave half a code point.
  if (i < a.size() && i > 0 && is_continuation(a[i])) {
    while (i > 0 && is_continuation(a[i])) --i;
  }
  return i;
}

}  // namespace

std::size_t char_length(std::string_view word) noexcept {
  return static_cast<std::size_t>(
      std::count_if(word.begin(), word.end(), [](char c) { return !is_continuation(c); }));
}

std::string common_stem(std::string_view w1, std::string_view w2) {
  return std::string(w1.substr(0, common_prefix_bytes(w1, w2)));
}

double sim(std::string_view w1, std::string_view w2) {
  if (w1.empty()) throw DomainError("sim: first word must be nonempty");
  const std::size_t stem = common_prefix_bytes(w1, w2);
  if (stem == w1.size()) return 1.0;
  const double ratio = static_cast<double>(char_length(w1.substr(0, stem))) /
                       static_cast<double>(char_length(w1));
  const double sq = ratio * ratio;
  return sq * sq;
}

}  // namespace hcrawl::text
