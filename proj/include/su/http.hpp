#pragma once

#include <memory>
#include <string>

#include "su/service.hpp"

namespace httplib {
class Server;
}

namespace su {

// JSON service over the endpoint table. GET handlers share the service
// lock; POST handlers hold it exclusively.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  // Binds host:port (port 0 picks a free one) and returns the bound port.
  // Throws AddressInUse.
  int bind(const std::string& host, int port);
  void run();  // blocks until stop()
  void stop();

 private:
  Service& service_;
  std::unique_ptr<httplib::Server> server_;
};

// Splits "host:port". Throws InvalidRequest.
std::pair<std::string, int> parse_listen_addr(const std::string& addr);

// Status for an error code: 404 unknown, 400 malformed request, 422 otherwise.
int http_status(ErrorCode code);

}  // namespace su
