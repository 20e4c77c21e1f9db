#include "hcrawl/metasearch/wrapper.hpp"

#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include <json.hpp>

#include "hcrawl/error.hpp"
#include "hcrawl/web/url.hpp"

namespace hcrawl::metasearch {
namespace {

constexpr std::string_view kPlaceholder = "{q}";

}  // namespace

void WrapperSpec::validate() const {
  if (engine.empty()) throw DomainError("wrapper needs an engine name");
  if (t.empty() || ft.empty()) throw DomainError("wrapper '" + engine + "' needs both t and ft");
  if (t == "a" || ft == "a") throw DomainError("wrapper '" + engine + "': t and ft must not be the anchor tag");
  const auto first = query_template.find(kPlaceholder);
  if (first == std::string::npos || query_template.find(kPlaceholder, first + 1) != std::string::npos) {
    throw DomainError("wrapper '" + engine + "': template must contain {q} exactly once");
  }
}

std::string WrapperSpec::query_url(const std::vector<std::string>& words) const {
  std::string q;
  for (const auto& w : words) {
    if (!q.empty()) q += '+';
    q += web::percent_encode(w);
  }
  std::string url = query_template;
  url.replace(url.find(kPlaceholder), kPlaceholder.size(), q);
  return url;
}

std::vector<std::string> extract_urls(const TagStream& stream, const WrapperSpec& wrapper) {
  std::vector<std::string> out;
  bool armed = false;  // seen t ft*
  for (const Tag& tag : stream) {
    if (armed && tag.name == "a") {
      if (auto href = tag.attribute("href")) {
        out.push_back(*href);
      } else {
        spdlog::debug("wrapper {}: anchor without href skipped", wrapper.engine);
      }
      armed = false;
    } else if (tag.name == wrapper.t) {
      armed = true;
    } else if (!(armed && tag.name == wrapper.ft)) {
      armed = false;
    }
  }
  return out;
}

std::vector<WrapperSpec> parse_wrappers(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
  std::vector<WrapperSpec> out;
  try {
    for (const auto& e : doc.at("engines")) {
      WrapperSpec w;
      w.engine = e.at("name").get<std::string>();
      w.query_template = e.at("template").get<std::string>();
      w.t = e.at("t").get<std::string>();
      w.ft = e.at("ft").get<std::string>();
      w.enabled = e.value("enabled", true);
      for (auto* s : {&w.t, &w.ft}) {
        for (auto& c : *s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      w.validate();
      out.push_back(std::move(w));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("wrapper config: ") + e.what());
  }
  return out;
}

std::vector<WrapperSpec> load_wrappers(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return parse_wrappers(s.str());
}

std::string wrappers_to_json(const std::vector<WrapperSpec>& wrappers) {
  nlohmann::json engines = nlohmann::json::array();
  for (const auto& w : wrappers) {
    engines.push_back({{"name", w.engine}, {"template", w.query_template}, {"t", w.t}, {"ft", w.ft},
                       {"enabled", w.enabled}});
  }
  return nlohmann::json{{"engines", engines}}.dump(2);
}

}  // namespace hcrawl::metasearch
