#pragma once

#include <array>
#include <string_view>

namespace hcrawl::service {

/// The HTTP surface. Every route that changes state names the CLI command
/// that performs the same change.
struct RouteSpec {
  std::string_view method;
  std::string_view path;  ///< {id}-style placeholders
  bool mutating;
  std::string_view cli;  ///< space-separated subcommand path; empty for reads
};

inline constexpr std::array kRoutes{
    RouteSpec{"GET", "/health", false, ""},
    RouteSpec{"GET", "/session", false, ""},
    RouteSpec{"GET", "/tree", false, ""},
    RouteSpec{"PUT", "/tree", true, "tree set"},
    RouteSpec{"POST", "/tree/node", true, "tree add"},
    RouteSpec{"DELETE", "/tree/node/{id}", true, "tree remove"},
    RouteSpec{"POST", "/search/{queryId}/start", true, "search"},
    RouteSpec{"POST", "/search/{queryId}/stop", true, "search"},  // interrupting a CLI search stops it
    RouteSpec{"GET", "/search/{queryId}/results", false, ""},
    RouteSpec{"GET", "/search/{queryId}/events", false, ""},
    RouteSpec{"POST", "/results/{docId}/mark", true, "mark"},
    RouteSpec{"POST", "/feedback/{queryId}", true, "feedback"},
    RouteSpec{"POST", "/remote/enqueue", true, "enqueue"},
};

}  // namespace hcrawl::service
