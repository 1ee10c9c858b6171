#include "su/http.hpp"

#include <functional>
#include <mutex>

#include <httplib.h>

#include "su/error.hpp"

namespace su {

using nlohmann::json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound:
    case ErrorCode::UnknownUnit:
      return 404;
    case ErrorCode::InvalidRequest:
    case ErrorCode::ParseError:
      return 400;
    default:
      return 422;
  }
}

std::pair<std::string, int> parse_listen_addr(const std::string& addr) {
  auto colon = addr.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw Error(ErrorCode::InvalidRequest, "listen address must be host:port, got " + addr);
  }
  try {
    std::size_t used = 0;
    int port = std::stoi(addr.substr(colon + 1), &used);
    if (used != addr.size() - colon - 1 || port < 0 || port > 65535) throw std::out_of_range("port");
    return {addr.substr(0, colon), port};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidRequest, "bad port in " + addr);
  }
}

namespace {

void reply(httplib::Response& res, const std::function<json()>& handler) {
  try {
    res.set_content(handler().dump(), "application/json");
  } catch (const Error& e) {
    res.status = http_status(e.code());
    res.set_content(error_json(e.code(), e.what()).dump(), "application/json");
  } catch (const json::exception& e) {
    res.status = 400;
    res.set_content(error_json(ErrorCode::InvalidRequest, e.what()).dump(), "application/json");
  }
}

json body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

}  // namespace

HttpServer::HttpServer(Service& service) : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  // SO_REUSEPORT (httplib's default) would let a second server share the port
  s.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });

  auto get = [&s, this](const std::string& pattern, std::function<json(const httplib::Request&)> fn) {
    s.Get(pattern, [&svc = service_, fn](const httplib::Request& req, httplib::Response& res) {
      std::shared_lock lock(svc.mutex());
      reply(res, [&] { return fn(req); });
    });
  };
  auto post = [&s, this](const std::string& pattern, std::function<json(const httplib::Request&)> fn) {
    s.Post(pattern, [&svc = service_, fn](const httplib::Request& req, httplib::Response& res) {
      std::unique_lock lock(svc.mutex());
      reply(res, [&] { return fn(req); });
    });
  };

  get(R"(/units/(.+)/label)", [&svc = service_](const httplib::Request& req) { return svc.unit_label(req.matches[1]); });
  get(R"(/units/(.+))", [&svc = service_](const httplib::Request& req) { return svc.unit(req.matches[1]); });
  get("/maps", [&svc = service_](const httplib::Request&) { return svc.maps(); });
  get(R"(/maps/(.+)/junctions)", [&svc = service_](const httplib::Request& req) { return svc.junctions(req.matches[1]); });
  get(R"(/maps/(.+))", [&svc = service_](const httplib::Request& req) { return svc.map(req.matches[1]); });
  get(R"(/nanopub/(.+))", [&svc = service_](const httplib::Request& req) { return svc.nanopub(req.matches[1]); });

  post(R"(/maps/(.+)/perspective)",
       [&svc = service_](const httplib::Request& req) { return svc.perspective(req.matches[1], body(req)); });
  post("/dsep", [&svc = service_](const httplib::Request& req) { return svc.dsep(body(req)); });
  post("/identify", [&svc = service_](const httplib::Request& req) { return svc.identify(body(req)); });
  post("/estimate", [&svc = service_](const httplib::Request& req) { return svc.estimate(body(req)); });
  post("/mediate", [&svc = service_](const httplib::Request& req) { return svc.mediate(body(req)); });
  post("/whatif", [&svc = service_](const httplib::Request& req) { return svc.whatif(body(req)); });
  post("/validate", [&svc = service_](const httplib::Request& req) { return svc.validate(body(req)); });
  post("/ingest", [&svc = service_](const httplib::Request& req) {
    auto b = body(req);
    if (!b.contains("nquads") || !b["nquads"].is_string()) {
      throw Error(ErrorCode::InvalidRequest, "missing field 'nquads'");
    }
    return svc.ingest(b["nquads"].get<std::string>());
  });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error(ErrorCode::AddressInUse, "cannot listen on " + host + ":" + std::to_string(port));
  }
  return bound;
}

void HttpServer::run() { server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

}  // namespace su
