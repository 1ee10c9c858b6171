#include "su/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "su/error.hpp"
#include "su/http.hpp"
#include "su/service.hpp"

namespace su {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_iri(const std::string& s) {
  return (s.rfind("http://", 0) == 0 || s.rfind("https://", 0) == 0 || s.rfind("urn:", 0) == 0) &&
         s.find(' ') == std::string::npos;
}

void render_text(const json& j, const Service& svc, std::ostream& out, int indent) {
  std::string pad(indent * 2, ' ');
  auto scalar = [&](const json& v) {
    if (v.is_string()) {
      auto s = v.get<std::string>();
      return looks_like_iri(s) ? svc.display(s) : s;
    }
    return v.dump();
  };
  auto nested = [](const json& v) {
    return (v.is_object() || v.is_array()) && !v.empty() &&
           std::any_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); });
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
        out << pad << k << ":\n" << v.get<std::string>();
      } else if (v.is_object() || nested(v)) {
        out << pad << k << ":\n";
        render_text(v, svc, out, indent + 1);
      } else if (v.is_array()) {
        out << pad << k << ":";
        for (const auto& e : v) out << " " << scalar(e);
        out << "\n";
      } else {
        out << pad << k << ": " << scalar(v) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (e.is_structured()) {
        out << pad << "-\n";
        render_text(e, svc, out, indent + 1);
      } else {
        out << pad << "- " << scalar(e) << "\n";
      }
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semantic units and causal identification over a named-graph store", "sucausal"};
  app.require_subcommand(1);

  WorkspaceConfig config;
  std::string shapes_dir;
  std::string doi_prefix;
  std::string format = "json";
  app.add_option("--store", config.store_path, "N-Quads store file")->capture_default_str();
  app.add_option("--shapes", shapes_dir, "directory of shape and label template JSON files");
  app.add_flag("--deterministic", config.deterministic_ids, "content-hash identifiers and fixed timestamps");
  app.add_option("--max-adjustment-size", config.max_adjustment_size)->capture_default_str()->check(
      CLI::NonNegativeNumber);
  app.add_option("--doi-prefix", doi_prefix, "prefix for exported nanopublication ids");
  app.add_option("--format", format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  std::function<json(Service&)> action;
  bool serving = false;

  std::string file, unit, shape, map_id, cause, effect, mediator, context, x, y, given, scm, set;
  std::string baseline, treated, observe, intervention, query, method;
  bool all = false;

  auto* ingest = app.add_subcommand("ingest", "add an N-Quads file to the store");
  ingest->add_option("file", file)->required();
  ingest->callback([&] { action = [&](Service& s) { return s.ingest(read_file(file)); }; });

  auto* validate = app.add_subcommand("validate", "check statement units against their shapes");
  validate->add_option("unit", unit);
  validate->add_flag("--all", all);
  validate->add_option("--shape", shape, "shape id or JSON file");
  validate->callback([&] {
    if (unit.empty() == !all) throw CLI::ValidationError("validate", "give a unit or --all");
    action = [&](Service& s) {
      json r = {{"all", all}};
      if (!all) r["unit"] = unit;
      if (!shape.empty()) r["shape"] = shape;
      return s.validate(r);
    };
  });

  auto* compose = app.add_subcommand("compose", "chain two causal statement units");
  compose->add_option("--from", file)->required();
  compose->callback([&] { action = [&](Service& s) { return s.compose(read_file(file)); }; });

  auto* map = app.add_subcommand("map", "causal maps");
  map->require_subcommand(1);
  auto* build = map->add_subcommand("build", "compose all universal causal statements");
  build->callback([&] { action = [](Service& s) { return s.build_map(); }; });
  auto* show = map->add_subcommand("show", "print a causal map");
  show->add_option("--map", map_id);
  show->callback([&] { action = [&](Service& s) { return s.map(map_id); }; });
  auto* list = map->add_subcommand("list", "list causal map ids");
  list->callback([&] { action = [](Service& s) { return s.maps(); }; });

  auto* junctions = app.add_subcommand("junctions", "classify chain, fork and collider junctions");
  junctions->add_option("--map", map_id);
  junctions->callback([&] { action = [&](Service& s) { return s.junctions(map_id); }; });

  auto* perspective = app.add_subcommand("perspective", "extract the paths between two variables");
  perspective->add_option("--map", map_id);
  perspective->add_option("--cause", cause)->required();
  perspective->add_option("--effect", effect)->required();
  perspective->add_option("--context", context, "JSON file of context requirements");
  perspective->callback([&] {
    action = [&](Service& s) {
      json r = {{"cause", cause}, {"effect", effect}};
      if (!context.empty()) {
        try {
          r["context"] = json::parse(read_file(context));
        } catch (const json::exception& e) {
          throw Error(ErrorCode::InvalidRequest, context + ": " + e.what());
        }
      }
      return s.perspective(map_id, r);
    };
  });

  auto* dsep = app.add_subcommand("dsep", "test d-separation");
  dsep->add_option("--map", map_id);
  dsep->add_option("--x", x)->required();
  dsep->add_option("--y", y)->required();
  dsep->add_option("--given", given, "comma-separated conditioning set");
  dsep->callback([&] {
    action = [&](Service& s) {
      json r = {{"x", x}, {"y", y}, {"given", given}};
      if (!map_id.empty()) r["map"] = map_id;
      return s.dsep(r);
    };
  });

  auto* identify = app.add_subcommand("identify", "find an estimand for P(effect | do(cause))");
  identify->add_option("--map", map_id);
  identify->add_option("--cause", cause)->required();
  identify->add_option("--effect", effect)->required();
  identify->callback([&] {
    action = [&](Service& s) {
      json r = {{"cause", cause}, {"effect", effect}};
      if (!map_id.empty()) r["map"] = map_id;
      return s.identify(r);
    };
  });

  auto* estimate = app.add_subcommand("estimate", "evaluate an adjustment formula on a model");
  estimate->add_option("method", method)->required()->check(CLI::IsMember({"backdoor", "frontdoor"}));
  estimate->add_option("--scm", scm)->required();
  estimate->add_option("--cause", cause)->required();
  estimate->add_option("--effect", effect)->required();
  auto* set_opt = estimate->add_option("--set", set, "comma-separated adjustment or mediator set");
  estimate->callback([&] {
    action = [&, set_opt](Service& s) {
      json r = {{"scm", scm}, {"method", method}, {"cause", cause}, {"effect", effect}};
      if (set_opt->count() > 0) r["set"] = set;
      return s.estimate(r);
    };
  });

  auto* mediate = app.add_subcommand("mediate", "natural direct and indirect effects");
  mediate->add_option("--scm", scm)->required();
  mediate->add_option("--cause", cause)->required();
  mediate->add_option("--mediator", mediator)->required();
  mediate->add_option("--effect", effect)->required();
  mediate->add_option("--baseline", baseline);
  mediate->add_option("--treated", treated);
  mediate->callback([&] {
    action = [&](Service& s) {
      json r = {{"scm", scm}, {"cause", cause}, {"mediator", mediator}, {"effect", effect}};
      if (!baseline.empty()) r["baseline"] = baseline;
      if (!treated.empty()) r["treated"] = treated;
      return s.mediate(r);
    };
  });

  auto* whatif = app.add_subcommand("whatif", "interventional or counterfactual query");
  whatif->add_option("--scm", scm)->required();
  whatif->add_option("--observe", observe, "evidence, e.g. X=1,Y=0");
  whatif->add_option("--do", intervention, "intervention, e.g. X=0")->required();
  whatif->add_option("--query", query)->required();
  whatif->callback([&] {
    action = [&](Service& s) {
      return s.whatif({{"scm", scm}, {"observe", observe}, {"do", intervention}, {"query", query}});
    };
  });

  auto* unit_cmd = app.add_subcommand("unit", "print a semantic unit");
  unit_cmd->add_option("id", unit)->required();
  unit_cmd->callback([&] { action = [&](Service& s) { return s.unit(unit); }; });

  auto* label = app.add_subcommand("label", "print the dynamic label of a unit");
  label->add_option("id", unit)->required();
  label->callback([&] { action = [&](Service& s) { return s.unit_label(unit); }; });

  auto* nanopub = app.add_subcommand("export-nanopub", "export a unit as nanopublications");
  nanopub->add_option("unit", unit)->required();
  nanopub->callback([&] { action = [&](Service& s) { return s.nanopub(unit); }; });

  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->add_option("--listen", config.listen_addr, "host:port")->capture_default_str();
  serve->callback([&] { serving = true; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_json(ErrorCode::InvalidRequest, e.what()).dump() << "\n";
    return 2;
  }
  if (!shapes_dir.empty()) config.shapes_dir = shapes_dir;
  if (!doi_prefix.empty()) config.doi_prefix = doi_prefix;

  try {
    Service service(config);
    if (serving) {
      auto [host, port] = parse_listen_addr(config.listen_addr);
      HttpServer server(service);
      int bound = server.bind(host, port);
      out << json{{"listening", host + ":" + std::to_string(bound)}}.dump() << std::endl;
      server.run();
      return 0;
    }
    json result = action(service);
    if (format == "text") {
      render_text(result, service, out, 0);
    } else {
      out << result.dump() << "\n";
    }
    return 0;
  } catch (const Error& e) {
    err << error_json(e.code(), e.what()).dump() << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << error_json(ErrorCode::InvalidRequest, e.what()).dump() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << error_json(ErrorCode::StoreLoadError, e.what()).dump() << "\n";
    return 1;
  }
}

}  // namespace su
