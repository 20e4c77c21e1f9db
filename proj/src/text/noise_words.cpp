#include "hcrawl/text/noise_words.hpp"

#include <fstream>
#include <sstream>

#include "hcrawl/text/tokenizer.hpp"
#include "noise_words_en.inc"

namespace hcrawl::text {

namespace {

std::string lowercase(std::string_view word) {
  std::u32string cps = decode(word);
  for (auto& c : cps) c = to_lower(c);
  return encode_utf8(cps);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

NoiseWordSet::NoiseWordSet(std::initializer_list<std::string_view> words) {
  for (auto w : words) insert(w);
}

NoiseWordSet NoiseWordSet::parse(std::istream& in) {
  NoiseWordSet set;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    const std::string_view word = trim(std::string_view(line).substr(0, hash));
    if (!word.empty()) set.insert(word);
  }
  return set;
}

NoiseWordSet NoiseWordSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open noise word file " + path.string());
  return parse(in);
}

const NoiseWordSet& NoiseWordSet::english() {
  static const NoiseWordSet set = [] {
    std::istringstream in{std::string(kEnglishNoiseWords)};
    return parse(in);
  }();
  return set;
}

void NoiseWordSet::insert(std::string_view word) {
  const std::string w = lowercase(word);
  if (!w.empty()) words_.insert(w);
}

bool NoiseWordSet::contains(std::string_view word) const {
  return words_.contains(lowercase(word));
}

}  // namespace hcrawl::text
