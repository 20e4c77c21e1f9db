#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hcrawl/text/tokenizer.hpp"
#include "hcrawl/web/fetcher.hpp"
#include "hcrawl/web/url.hpp"

namespace hcrawl::spider {

/// A fetched document prepared for ranking.
struct Page {
  text::WordSeq words;
  std::string title;     ///< title element, else first heading, else empty
  std::string abstract;  ///< first 30 words of body text
  std::vector<web::Url> links;
};

/// Absolute, normalized targets of a, area, frame and iframe elements, in
/// document order without duplicates. A base element overrides `base`.
std::vector<web::Url> extract_links(std::string_view markup, const web::Url& base);

/// Charset from a media type parameter, else UTF-8 with a Latin-1 fallback
/// for bytes that do not decode.
text::Encoding detect_encoding(std::string_view body, std::string_view media_type);

bool is_markup(std::string_view media_type);

/// Builds a Page from an ok fetch result.
Page read_page(const web::FetchResult& fetched, const web::Url& url);

}  // namespace hcrawl::spider
