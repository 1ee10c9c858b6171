#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "su/cli.hpp"
#include "su/http.hpp"
#include "su/service.hpp"
#include "testing.hpp"

using namespace su;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("su_ws_" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) +
                                       "_" + std::to_string(counter()++));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string store() const { return (dir / "store.nq").string(); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const Workspace& ws, std::vector<std::string> args) {
  std::vector<std::string> full = {"--store", ws.store(), "--deterministic"};
  full.insert(full.end(), args.begin(), args.end());
  std::ostringstream out, err;
  int code = run_cli(full, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli exit codes") {
  Workspace ws;
  auto r = cli(ws, {"frobnicate"});
  CHECK(r.code == 2);
  CHECK(cli(ws, {"dsep", "--x", "A"}).code == 2);
  auto missing = cli(ws, {"ingest", (ws.dir / "nope.nq").string()});
  CHECK(missing.code == 1);
  CHECK(json::parse(missing.err)["error"]["code"] == "NOT_FOUND");
  std::ofstream(ws.dir / "bad.nq") << "<http://a> <http://b> .\n";
  auto bad = cli(ws, {"ingest", (ws.dir / "bad.nq").string()});
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.err)["error"]["code"] == "PARSE_ERROR");
  CHECK(cli(ws, {"--help"}).code == 0);
}

TEST_CASE("cli pipeline over the invasion fixture") {
  Workspace ws;
  auto ing = cli(ws, {"ingest", fx::source_path("fixtures/invasion.nq")});
  REQUIRE(ing.code == 0);
  auto ingested = json::parse(ing.out);
  CHECK(ingested["units"].size() == 4);
  REQUIRE(ingested["maps"].size() == 1);
  std::string map = ingested["maps"][0];

  auto j = json::parse(cli(ws, {"junctions", "--map", map}).out);
  CHECK(j["junctions"].size() == 4);
  CHECK(cli(ws, {"dsep", "--map", map, "--x", "CS", "--y", "FIT", "--given", "ND"}).out ==
        "{\"d_separated\":true}\n");
  CHECK(cli(ws, {"dsep", "--x", "CS", "--y", "FIT"}).out == "{\"d_separated\":false}\n");

  auto id = json::parse(cli(ws, {"identify", "--map", map, "--cause", "CS", "--effect", "IS"}).out);
  CHECK(id["text"] == "sum_{FIT} P(IS|CS,FIT) * P(FIT)");
  CHECK(id["backdoor_sets"].size() == 2);

  auto per = cli(ws, {"perspective", "--cause", "CS", "--effect", "IS"});
  REQUIRE(per.code == 0);
  CHECK(json::parse(per.out)["paths"].size() == 2);

  auto bad = cli(ws, {"dsep", "--x", "CS", "--y", "Nothing"});
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.err)["error"]["code"] == "UNKNOWN_VARIABLE");

  auto text = cli(ws, {"--format", "text", "junctions"});
  CHECK(text.out.find("invasion success") != std::string::npos);

  auto unit = ingested["units"][0].get<std::string>();
  auto np = json::parse(cli(ws, {"export-nanopub", unit}).out);
  CHECK(np["nanopubs"].size() == 1);
  auto all = json::parse(cli(ws, {"export-nanopub", map}).out);
  CHECK(all["nanopubs"].size() == 5);
}

TEST_CASE("compose chains the first two statement units in file order") {
  Workspace ws;
  auto r = cli(ws, {"compose", "--from", fx::source_path("fixtures/compose_ba.nq")});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["nodes"].size() == 3);
  CHECK(j["edges"].size() == 2);
  CHECK(j["composite_content"].get<std::string>().find("A/every-CS") == std::string::npos);
}

TEST_CASE("validate with the shape directory") {
  Workspace ws;
  REQUIRE(cli(ws, {"ingest", fx::source_path("fixtures/golden.nq")}).code == 0);
  auto r = cli(ws, {"--shapes", fx::source_path("shapes"), "validate", "--all"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["conforms"] == true);
  CHECK(j["reports"].size() == 7);
}

TEST_CASE("scm commands") {
  Workspace ws;
  auto scm = [](const std::string& f) { return fx::source_path("fixtures/scm/" + f); };
  auto e = json::parse(cli(ws, {"estimate", "backdoor", "--scm", scm("confounded.json"), "--cause", "X", "--effect", "Y"}).out);
  CHECK(e["set"] == json::array({"Z"}));
  CHECK(e["estimand"] == "sum_{Z} P(Y|X,Z) * P(Z)");
  auto f = cli(ws, {"estimate", "frontdoor", "--scm", scm("frontdoor.json"), "--cause", "X", "--effect", "Y"});
  CHECK(f.code == 0);
  auto m = json::parse(cli(ws, {"mediate", "--scm", scm("mediation.json"), "--cause", "C", "--mediator", "M", "--effect", "Y"}).out);
  CHECK(m["nde"] == 0.25);
  auto w = json::parse(cli(ws, {"whatif", "--scm", scm("deterministic_copy.json"), "--observe", "X=1,Y=1", "--do", "X=0", "--query", "Y"}).out);
  CHECK(w["mode"] == "counterfactual");
  CHECK(w["distribution"]["Y=0"] == 1.0);
  auto i = json::parse(cli(ws, {"whatif", "--scm", scm("confounded.json"), "--do", "X=1", "--query", "Y"}).out);
  CHECK(i["mode"] == "intervention");
  CHECK(i["distribution"]["Y=1"] == 0.6875);
  auto bad = cli(ws, {"estimate", "backdoor", "--scm", scm("confounded.json"), "--cause", "X", "--effect", "Y", "--set", "Y"});
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.err)["error"]["code"] == "INVALID_ADJUSTMENT_SET");
}

TEST_CASE("http service") {
  Workspace ws;
  WorkspaceConfig cfg;
  cfg.store_path = ws.store();
  cfg.deterministic_ids = true;
  Service svc(cfg);
  HttpServer server(svc);
  int port = server.bind("127.0.0.1", 0);
  std::thread t([&] { server.run(); });
  httplib::Client client("127.0.0.1", port);

  auto maps = client.Get("/maps");
  REQUIRE(maps);
  CHECK(maps->body == "{\"maps\":[]}");

  std::ifstream in(fx::source_path("fixtures/invasion.nq"));
  std::stringstream ss;
  ss << in.rdbuf();
  auto ing = client.Post("/ingest", json{{"nquads", ss.str()}}.dump(), "application/json");
  REQUIRE(ing);
  CHECK(ing->status == 200);
  std::string map = json::parse(ing->body)["maps"][0];

  auto before = fs::last_write_time(ws.store());
  auto got = client.Get("/maps/" + httplib::detail::encode_url(map));
  REQUIRE(got);
  CHECK(json::parse(got->body)["nodes"].size() == 4);
  auto junctions = client.Get("/maps/" + httplib::detail::encode_url(map) + "/junctions");
  REQUIRE(junctions);
  CHECK(json::parse(junctions->body)["junctions"].size() == 4);
  CHECK(fs::last_write_time(ws.store()) == before);

  auto unit = json::parse(ing->body)["units"][0].get<std::string>();
  auto u = client.Get("/units/" + httplib::detail::encode_url(unit));
  REQUIRE(u);
  CHECK(json::parse(u->body)["type"] == "statement");
  auto label = client.Get("/units/" + httplib::detail::encode_url(unit) + "/label");
  REQUIRE(label);
  CHECK(json::parse(label->body)["id"] == unit);
  auto np = client.Get("/nanopub/" + httplib::detail::encode_url(unit));
  REQUIRE(np);
  CHECK(json::parse(np->body)["nanopubs"].size() == 1);

  auto persp = client.Post("/maps/" + httplib::detail::encode_url(map) + "/perspective",
                           json{{"cause", "CS"}, {"effect", "IS"}}.dump(), "application/json");
  REQUIRE(persp);
  CHECK(persp->status == 200);

  auto missing = client.Get("/units/urn:su:none");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  auto malformed = client.Post("/dsep", "{not json", "application/json");
  REQUIRE(malformed);
  CHECK(malformed->status == 400);
  auto unknown = client.Post("/dsep", json{{"x", "CS"}, {"y", "Q"}}.dump(), "application/json");
  REQUIRE(unknown);
  CHECK(unknown->status == 422);
  CHECK(json::parse(unknown->body)["error"]["code"] == "UNKNOWN_VARIABLE");

  server.stop();
  t.join();

  // restart from the persisted store answers the same
  Service again(cfg);
  CHECK(again.junctions(map).dump() == json::parse(junctions->body).dump());
}

TEST_CASE("listen address parsing and port conflicts") {
  CHECK(parse_listen_addr("127.0.0.1:8080") == std::pair<std::string, int>{"127.0.0.1", 8080});
  CHECK(fx::error_of([] { parse_listen_addr("nohost"); }) == ErrorCode::InvalidRequest);
  CHECK(fx::error_of([] { parse_listen_addr("h:99999"); }) == ErrorCode::InvalidRequest);
  Workspace ws;
  WorkspaceConfig cfg;
  cfg.store_path = ws.store();
  Service svc(cfg);
  HttpServer a(svc), b(svc);
  int port = a.bind("127.0.0.1", 0);
  CHECK(fx::error_of([&] { b.bind("127.0.0.1", port); }) == ErrorCode::AddressInUse);
}

TEST_CASE("store load failure") {
  Workspace ws;
  std::ofstream(ws.store()) << "garbage\n";
  WorkspaceConfig cfg;
  cfg.store_path = ws.store();
  CHECK(fx::error_of([&] { Service s(cfg); }) == ErrorCode::StoreLoadError);
}
