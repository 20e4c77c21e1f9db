#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace hcrawl::text {

/// Longest common prefix of two UTF-8 words, cut at a code point boundary.
std::string common_stem(std::string_view w1, std::string_view w2);

/// Number of code points in a UTF-8 string.
std::size_t char_length(std::string_view word) noexcept;

/// Stem similarity weighted on the first word (the user keyword):
/// (|common_stem(w1, w2)| / |w1|)^4. Asymmetric. Throws DomainError when
/// `w1` is empty.
double sim(std::string_view w1, std::string_view w2);

}  // namespace hcrawl::text
