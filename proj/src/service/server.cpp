#include "hcrawl/service/server.hpp"

#include <chrono>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "hcrawl/error.hpp"
#include "hcrawl/service/routes.hpp"

namespace hcrawl::service {
namespace {

using nlohmann::json;

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ParseError("request body is not JSON", e.byte == 0 ? 0 : e.byte - 1);
  }
}

NodeId id_arg(const httplib::Request& req) {
  try {
    return std::stoull(req.matches[1].str());
  } catch (const std::exception&) {
    throw DomainError("bad id '" + req.matches[1].str() + "'");
  }
}

std::int64_t unix_now() {
  return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch()).count();
}

}  // namespace

std::pair<std::string, int> parse_bind(const std::string& text) {
  std::string host = "127.0.0.1";
  std::string port = text;
  if (const auto colon = text.rfind(':'); colon != std::string::npos) {
    if (colon > 0) host = text.substr(0, colon);
    port = text.substr(colon + 1);
  }
  try {
    std::size_t used = 0;
    const int p = std::stoi(port, &used);
    if (used != port.size() || p < 0 || p > 65535) throw DomainError("");
    return {host, p};
  } catch (const std::exception&) {
    throw DomainError("bad bind address '" + text + "'");
  }
}

Server::Server(Workspace& workspace, std::string token)
    : ws_(workspace), token_(std::move(token)), http_(std::make_unique<httplib::Server>()) {
  // The library default adds SO_REUSEPORT, which lets a second server bind
  // the same port silently.
  http_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  routes();
}

Server::~Server() { stop(); }

void Server::routes() {
  auto& s = *http_;
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const ParseError& e) {
      reply(res, 400, {{"error", e.what()}, {"offset", e.offset()}});
    } catch (const LookupError& e) {
      reply(res, 404, {{"error", e.what()}});
    } catch (const ConflictError& e) {
      reply(res, 409, {{"error", e.what()}});
    } catch (const DomainError& e) {
      reply(res, 400, {{"error", e.what()}});
    } catch (const json::exception& e) {
      reply(res, 400, {{"error", e.what()}});
    } catch (const std::exception& e) {
      reply(res, 500, {{"error", e.what()}});
    }
  });

  s.Get("/health", [](const httplib::Request&, httplib::Response& res) { reply(res, 200, {{"status", "ok"}}); });

  s.Get("/session", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(session_to_json(ws_.snapshot()), "application/json");
  });

  s.Get("/tree", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, 200, tree_to_json(ws_.snapshot().tree));
  });

  s.Put("/tree", [this](const httplib::Request& req, httplib::Response& res) {
    ws_.replace_tree(tree_from_json(parse_body(req)));
    reply(res, 200, tree_to_json(ws_.snapshot().tree));
  });

  s.Post("/tree/node", [this](const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    const auto kind_name = body.value("kind", std::string("query"));
    if (kind_name != "query" && kind_name != "concept") throw DomainError("kind must be query or concept");
    const auto kind = kind_name == "query" ? concept_tree::NodeKind::kQuery : concept_tree::NodeKind::kConcept;
    const NodeId parent = body.contains("parent") ? body["parent"].get<NodeId>() : ws_.snapshot().tree.root();
    const NodeId id = ws_.add_node(parent, kind, body.at("words").get<std::vector<std::string>>());
    reply(res, 201, {{"id", id}});
  });

  s.Delete(R"(/tree/node/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
    ws_.remove_node(id_arg(req));
    reply(res, 200, {{"removed", id_arg(req)}});
  });

  s.Post(R"(/search/(\d+)/start)", [this](const httplib::Request& req, httplib::Response& res) {
    ws_.start_search(id_arg(req));
    reply(res, 202, {{"query", id_arg(req)}, {"running", true}});
  });

  s.Post(R"(/search/(\d+)/stop)", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, 200, {{"query", id_arg(req)}, {"stopping", ws_.stop_search(id_arg(req))}});
  });

  s.Get(R"(/search/(\d+)/results)", [this](const httplib::Request& req, httplib::Response& res) {
    const NodeId q = id_arg(req);
    const auto session = ws_.snapshot();
    json list = json::array();
    for (const auto& d : ws_.results(q)) {
      json j = doc_to_json(d);
      const auto m = session.marks.find(d.url);
      j["mark"] = m == session.marks.end() ? "unmarked" : std::string(to_string(m->second));
      list.push_back(std::move(j));
    }
    reply(res, 200, {{"query", q}, {"running", ws_.running(q)}, {"results", list}});
  });

  s.Get(R"(/search/(\d+)/events)", [this](const httplib::Request& req, httplib::Response& res) {
    const NodeId q = id_arg(req);
    ws_.results(q);  // 404 for unknown queries before the stream opens
    std::uint64_t after = 0;
    const std::string resume = req.has_header("Last-Event-ID") ? req.get_header_value("Last-Event-ID")
                                                                : req.get_param_value("after");
    if (!resume.empty()) after = std::stoull(resume);
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider("text/event-stream", [this, q, after](std::size_t, httplib::DataSink& sink) mutable {
      while (!stopping_) {
        const auto batch = ws_.events(q, after, std::chrono::milliseconds(250));
        for (const auto& e : batch) {
          const std::string frame =
              "id: " + std::to_string(e.seq) + "\nevent: " + e.type + "\ndata: " + e.data.dump() + "\n\n";
          if (!sink.write(frame.data(), frame.size())) return false;
          after = e.seq;
        }
        if (batch.empty() && !ws_.running(q)) break;
        if (!batch.empty()) return true;  // let the library flush, then call again
      }
      sink.done();
      return true;
    });
  });

  s.Post(R"(/results/([0-9a-f]+)/mark)", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string state = parse_body(req).at("mark").get<std::string>();
    if (state != "hot" && state != "cold" && state != "clear") throw DomainError("mark must be hot, cold or clear");
    ws_.mark(req.matches[1].str(), parse_mark(state));
    reply(res, 200, {{"docId", req.matches[1].str()}, {"mark", state == "clear" ? "unmarked" : state}});
  });

  s.Post(R"(/feedback/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    const auto dq = ws_.run_feedback(id_arg(req), body.value("k", std::size_t{50}),
                                     body.value("kPrime", std::size_t{10}), body.value("window", std::size_t{10}));
    json words = json::array();
    for (const auto& w : dq.words) words.push_back({{"word", w.word}, {"dp", w.dp}, {"minProximity", w.min_proximity}});
    reply(res, 201, {{"parentQuery", dq.parent_query}, {"node", dq.node}, {"words", words}});
  });

  s.Post("/remote/enqueue", [this](const httplib::Request& req, httplib::Response& res) {
    if (token_.empty()) return reply(res, 403, {{"error", "remote control is disabled"}});
    if (req.get_header_value("Authorization") != "Bearer " + token_) {
      return reply(res, 401, {{"error", "bad or missing bearer token"}});
    }
    const json body = parse_body(req);
    std::optional<NodeId> parent;
    if (body.contains("parent")) parent = body["parent"].get<NodeId>();
    const NodeId q = ws_.enqueue(body.at("words").get<std::vector<std::string>>(), parent);
    reply(res, 202, {{"query", q}});
  });
}

int Server::bind(const std::string& host, int port) {
  port_ = port == 0 ? http_->bind_to_any_port(host) : (http_->bind_to_port(host, port) ? port : -1);
  if (port_ < 0) throw DomainError("cannot bind " + host + ":" + std::to_string(port));
  return port_;
}

void Server::listen() {
  clock_ = std::thread([this] {
    while (!stopping_) {
      ws_.tick(unix_now());
      for (int i = 0; i < 10 && !stopping_; ++i) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
  });
  http_->listen_after_bind();
}

void Server::start() {
  thread_ = std::thread([this] { listen(); });
  http_->wait_until_ready();
}

void Server::stop() {
  stopping_ = true;
  http_->stop();
  if (thread_.joinable()) thread_.join();
  if (clock_.joinable()) clock_.join();
}

}  // namespace hcrawl::service
