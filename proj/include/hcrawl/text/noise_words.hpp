#pragma once

#include <filesystem>
#include <initializer_list>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>

namespace hcrawl::text {

/// Stopword set. Membership is exact string equality after lowercasing.
class NoiseWordSet {
 public:
  NoiseWordSet() = default;
  NoiseWordSet(std::initializer_list<std::string_view> words);

  /// One token per line, UTF-8, '#' starts a comment.
  static NoiseWordSet parse(std::istream& in);
  static NoiseWordSet load(const std::filesystem::path& path);
  /// The bundled English list (data/noise_words_en.txt, embedded at build time).
  static const NoiseWordSet& english();

  void insert(std::string_view word);
  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

}  // namespace hcrawl::text
