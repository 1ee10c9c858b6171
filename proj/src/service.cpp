#include "su/service.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "su/error.hpp"
#include "su/statement_logic.hpp"
#include "su/vocab.hpp"

namespace su {

using nlohmann::json;
namespace fs = std::filesystem;

json error_json(ErrorCode code, const std::string& message) {
  return {{"error", {{"code", error_code_name(code)}, {"message", message}}}};
}

namespace {

const json& field(const json& request, const char* key) {
  if (!request.is_object() || !request.contains(key)) {
    throw Error(ErrorCode::InvalidRequest, std::string("missing field '") + key + "'");
  }
  return request.at(key);
}

std::string text_field(const json& request, const char* key) {
  const auto& v = field(request, key);
  if (!v.is_string()) throw Error(ErrorCode::InvalidRequest, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> list_field(const json& request, const char* key) {
  if (!request.contains(key) || request[key].is_null()) return {};
  const auto& v = request[key];
  if (v.is_array()) return v.get<std::vector<std::string>>();
  if (!v.is_string()) throw Error(ErrorCode::InvalidRequest, std::string("field '") + key + "' must be a list");
  std::vector<std::string> out;
  auto s = v.get<std::string>();
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    auto part = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!part.empty()) out.push_back(part);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

Assignment assignment_field(const json& request, const char* key) {
  if (!request.contains(key) || request[key].is_null()) return {};
  const auto& v = request[key];
  if (v.is_string()) return parse_assignment(v.get<std::string>());
  if (!v.is_object()) throw Error(ErrorCode::InvalidRequest, std::string("field '") + key + "' must be an object");
  Assignment a;
  for (const auto& [k, val] : v.items()) a[k] = val.is_string() ? val.get<std::string>() : val.dump();
  return a;
}

json assignment_json(const Assignment& a) {
  json j = json::object();
  for (const auto& [k, v] : a) j[k] = v;
  return j;
}

json iri_list(const std::vector<Iri>& ids) {
  json a = json::array();
  for (const auto& i : ids) a.push_back(i.value);
  return a;
}

// Unit ids whose meta graphs appear in `quads`, in order of first mention.
std::vector<Iri> units_in(const std::vector<Quad>& quads) {
  std::vector<Iri> out;
  for (const auto& q : quads) {
    if (q.p != vocab::kType || q.g != meta_graph_of(q.s) || !q.o.is_iri()) continue;
    if (q.o.iri() != vocab::kStatementUnit && q.o.iri() != vocab::kCompoundUnit) continue;
    if (std::find(out.begin(), out.end(), q.s) == out.end()) out.push_back(q.s);
  }
  return out;
}

}  // namespace

Service::Service(WorkspaceConfig config)
    : config_(std::move(config)), kg_(config_.deterministic_ids) {
  if (config_.max_adjustment_size < 0) {
    throw Error(ErrorCode::InvalidRequest, "max adjustment size must be >= 0");
  }
  if (fs::exists(config_.store_path)) {
    try {
      kg_ = KnowledgeGraph(load_nquads_file(config_.store_path), config_.deterministic_ids);
    } catch (const ParseError& e) {
      throw Error(ErrorCode::StoreLoadError, config_.store_path + ": " + e.what());
    }
  }
  load_shapes();
}

void Service::load_shapes() {
  if (!config_.shapes_dir) return;
  if (!fs::is_directory(*config_.shapes_dir)) {
    throw Error(ErrorCode::NotFound, "no shapes directory " + *config_.shapes_dir);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(*config_.shapes_dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidRequest, f.string() + ": " + e.what());
    }
    if (j.contains("pattern")) {
      auto t = label_template_from_json(j);
      templates_[t.shape_id] = t;
    } else {
      auto s = shape_from_json(j);
      shapes_[s.shape_id] = s;
    }
  }
}

void Service::save() const {
  fs::path target(config_.store_path);
  fs::path tmp = target;
  tmp += ".tmp";
  save_nquads_file(kg_.store(), tmp.string());
  fs::rename(tmp, target);
}

std::string Service::display(const std::string& iri) const { return kg_.display_label(Iri(iri)); }

Iri Service::resolve_map_id(const std::string& id) const {
  if (!id.empty()) return Iri(id);
  auto ids = causal_map_ids(kg_);
  if (ids.size() == 1) return ids.front();
  if (ids.empty()) throw Error(ErrorCode::NotFound, "the store holds no causal map");
  throw Error(ErrorCode::InvalidRequest, "several causal maps; name one with 'map'");
}

Iri Service::resolve_map(const json& request) const {
  std::string id;
  if (request.contains("map") && request["map"].is_string()) id = request["map"].get<std::string>();
  return resolve_map_id(id);
}

CausalNetwork Service::network(const Iri& map_id) const { return load_causal_network(kg_, map_id); }

DiscreteScm Service::scm(const json& request) const {
  const auto& s = field(request, "scm");
  if (s.is_string()) return load_scm_file(s.get<std::string>());
  if (s.is_object()) return scm_from_json(s);
  throw Error(ErrorCode::InvalidRequest, "'scm' must be a file path or a model object");
}

json Service::unit(const std::string& id) const {
  Iri iri(id);
  json j;
  j["id"] = id;
  if (kg_.is_statement_unit(iri)) {
    auto u = kg_.statement_unit(iri);
    j["type"] = "statement";
    j["classes"] = iri_list(u.unit_classes);
    j["content"] = write_nquads(u.content);
    j["meta"] = write_nquads(u.meta);
    try {
      j["category"] = category_name(categorize(u, &kg_.store()));
    } catch (const Error&) {
      j["category"] = nullptr;
    }
  } else if (kg_.is_compound_unit(iri)) {
    auto u = kg_.compound_unit(iri);
    j["type"] = "compound";
    j["classes"] = iri_list(u.unit_classes);
    j["members"] = iri_list(u.members);
    j["meta"] = write_nquads(u.meta);
  } else {
    throw Error(ErrorCode::NotFound, "no unit " + id);
  }
  j["label"] = unit_label(id)["label"];
  return j;
}

json Service::unit_label(const std::string& id) const {
  Iri iri(id);
  std::string label;
  if (kg_.is_statement_unit(iri)) {
    auto u = kg_.statement_unit(iri);
    std::optional<Iri> shape;
    for (const auto& q : u.meta) {
      if (q.s == iri && q.p == vocab::kConformsToShape && q.o.is_iri()) shape = q.o.iri();
    }
    if (shape && templates_.count(*shape)) {
      label = render_dynamic_label(u, templates_.at(*shape), kg_);
    } else if (auto p = u.primary()) {
      label = kg_.display_label(p->s) + " " + kg_.display_label(p->p) + " " +
              (p->o.is_iri() ? kg_.display_label(p->o.iri()) : p->o.literal().lexical);
    } else {
      label = kg_.display_label(iri);
    }
  } else if (kg_.is_compound_unit(iri)) {
    auto u = kg_.compound_unit(iri);
    label = kg_.label(iri).value_or(local_name(iri) + " (" + std::to_string(u.members.size()) + " members)");
  } else {
    throw Error(ErrorCode::NotFound, "no unit " + id);
  }
  return {{"id", id}, {"label", label}};
}

json Service::maps() const { return {{"maps", iri_list(causal_map_ids(kg_))}}; }

json Service::map(const std::string& id) const {
  auto map_id = resolve_map_id(id);
  auto net = network(map_id);
  json j = network_to_json(net);
  json labels = json::object();
  for (const auto& v : net.variables) labels[v.value] = kg_.display_label(v);
  j["labels"] = labels;
  auto acyclic = check_acyclic(net);
  j["acyclic"] = acyclic.acyclic;
  if (acyclic.cycle) {
    json c = json::array();
    for (const auto& v : *acyclic.cycle) c.push_back(v.value);
    j["cycle"] = c;
  }
  return j;
}

json Service::junctions(const std::string& map_id) const {
  auto id = resolve_map_id(map_id);
  auto list = classify_junctions(network(id));
  json a = json::array();
  for (const auto& jn : list) a.push_back(junction_to_json(jn));
  return {{"map", id.value}, {"junctions", a}};
}

json Service::dsep(const json& request) const {
  auto net = network(resolve_map(request));
  auto dag = dag_from_network(net);
  auto x = resolve_variable(kg_, net, text_field(request, "x"));
  auto y = resolve_variable(kg_, net, text_field(request, "y"));
  VarSet z;
  for (const auto& g : list_field(request, "given")) z.insert(resolve_variable(kg_, net, g).value);
  return {{"d_separated", d_separated(dag, x.value, y.value, z)}};
}

json Service::validate(const json& request) const {
  std::optional<Shape> explicit_shape;
  if (request.contains("shape") && request["shape"].is_string()) {
    auto s = request["shape"].get<std::string>();
    if (shapes_.count(Iri(s))) explicit_shape = shapes_.at(Iri(s));
    else if (fs::exists(s)) explicit_shape = load_shape_file(s);
    else throw Error(ErrorCode::NotFound, "no shape " + s);
  }
  std::vector<Iri> ids;
  bool all = request.value("all", false);
  if (all) {
    for (const auto& id : kg_.unit_ids()) {
      if (kg_.is_statement_unit(id)) ids.push_back(id);
    }
  } else {
    Iri id(text_field(request, "unit"));
    if (!kg_.is_statement_unit(id)) throw Error(ErrorCode::NotFound, "no statement unit " + id.value);
    ids.push_back(id);
  }
  json reports = json::array();
  bool conforms = true;
  for (const auto& id : ids) {
    auto u = kg_.statement_unit(id);
    std::optional<Shape> shape = explicit_shape;
    if (!shape) {
      for (const auto& q : u.meta) {
        if (q.s == id && q.p == vocab::kConformsToShape && q.o.is_iri() && shapes_.count(q.o.iri())) {
          shape = shapes_.at(q.o.iri());
        }
      }
    }
    if (!shape) {
      if (all) continue;
      throw Error(ErrorCode::NotFound, id.value + " names no known shape");
    }
    auto report = validate_shape(u, *shape, &kg_.store());
    conforms = conforms && report.conforms();
    reports.push_back(report_to_json(report));
  }
  return {{"conforms", conforms}, {"reports", reports}};
}

json Service::estimate(const json& request) const {
  auto model = scm(request);
  auto method = text_field(request, "method");
  auto cause = text_field(request, "cause");
  auto effect = text_field(request, "effect");
  auto listed = list_field(request, "set");
  bool given_set = request.contains("set") && !request["set"].is_null();
  VarSet set(listed.begin(), listed.end());
  auto dag = model.dag();
  EffectTable table;
  Expr expr;
  if (method == "backdoor") {
    if (!given_set) {
      auto sets = backdoor_sets(dag, cause, effect, config_.max_adjustment_size);
      if (sets.empty()) throw Error(ErrorCode::InvalidAdjustmentSet, "no back-door set within the size bound");
      set = sets.front().variables;
    }
    table = estimate_backdoor(model, cause, effect, set);
    expr = backdoor_expr(cause, effect, set);
  } else if (method == "frontdoor") {
    if (!given_set) {
      auto m = frontdoor_check(dag, cause, effect);
      if (!m) throw Error(ErrorCode::InvalidMediatorSet, "no front-door mediator set");
      set = *m;
    }
    table = estimate_frontdoor(model, cause, effect, set);
    expr = frontdoor_expr(cause, effect, set);
  } else {
    throw Error(ErrorCode::InvalidRequest, "method must be 'backdoor' or 'frontdoor'");
  }
  json j = effect_table_to_json(table);
  j["method"] = method;
  j["set"] = set;
  j["estimand"] = render(expr, [](const std::string& s) { return s; });
  return j;
}

json Service::mediate(const json& request) const {
  auto model = scm(request);
  auto cause = text_field(request, "cause");
  const auto& domain = model.variable(cause).domain;
  if (domain.size() < 2) throw Error(ErrorCode::InvalidRequest, cause + " needs two values");
  std::string baseline = request.contains("baseline") ? text_field(request, "baseline") : domain[0];
  std::string treated = request.contains("treated") ? text_field(request, "treated") : domain[1];
  auto r = mediation_effects(model, cause, text_field(request, "mediator"), text_field(request, "effect"),
                             baseline, treated);
  json j = mediation_to_json(r);
  j["cause"] = cause;
  j["mediator"] = text_field(request, "mediator");
  j["effect"] = text_field(request, "effect");
  return j;
}

json Service::whatif(const json& request) const {
  auto model = scm(request);
  auto observe = assignment_field(request, "observe");
  auto action = assignment_field(request, "do");
  auto query = text_field(request, "query");
  Distribution result;
  std::string mode;
  if (observe.empty()) {
    mode = "intervention";
    result = marginal(joint(intervene(model, action)), {query});
  } else {
    mode = "counterfactual";
    auto canonical = is_canonical_form(model) ? model : to_canonical_form(model);
    result = counterfactual(canonical, {observe, action, query});
  }
  return {{"query", query},
          {"observe", assignment_json(observe)},
          {"do", assignment_json(action)},
          {"mode", mode},
          {"distribution", distribution_to_json(result)}};
}

json Service::nanopub(const std::string& id) const {
  Iri iri(id);
  if (!kg_.is_unit(iri)) throw Error(ErrorCode::NotFound, "no unit " + id);
  auto nps = export_unit(kg_, iri, {config_.doi_prefix, config_.deterministic_ids});
  json j = bundle_index(nps);
  j["unit"] = id;
  j["nquads"] = bundle_nquads(nps);
  return j;
}

json Service::ingest(const std::string& nquads) {
  auto quads = parse_nquads(nquads);
  std::size_t added = 0;
  for (const auto& q : quads) added += kg_.store().insert(q) ? 1 : 0;
  auto units = units_in(quads);
  bool causal = std::any_of(units.begin(), units.end(), [&](const Iri& id) {
    return kg_.is_statement_unit(id) && (kg_.statement_unit(id).has_class(vocab::kCausalStatementUnit) ||
                                         kg_.statement_unit(id).has_class(vocab::kCorrelationStatementUnit));
  });
  json j = {{"quads", quads.size()}, {"added", added}, {"units", iri_list(units)}};
  if (added > 0 && causal) {
    if (auto id = rebuild_map()) j["map"] = id->value;
  }
  save();
  j["maps"] = iri_list(causal_map_ids(kg_));
  return j;
}

json Service::compose(const std::string& nquads) {
  auto quads = parse_nquads(nquads);
  for (const auto& q : quads) kg_.store().insert(q);
  std::vector<Iri> statements;
  for (const auto& id : units_in(quads)) {
    if (kg_.is_statement_unit(id)) statements.push_back(id);
  }
  if (statements.size() != 2) {
    throw Error(ErrorCode::InvalidRequest,
                "compose needs exactly two statement units, got " + std::to_string(statements.size()));
  }
  auto net = compose_chain(causal_statement(kg_, statements[0]), causal_statement(kg_, statements[1]));
  auto id = persist_network(kg_, net);
  std::vector<Quad> composite;
  for (const auto& t : composite_content(kg_, net)) composite.push_back({t.s, t.p, t.o, id});
  save();
  json j = network_to_json(net);
  j["composite_content"] = write_nquads(composite);
  return j;
}

std::optional<Iri> Service::rebuild_map() {
  std::set<Iri> candidates;
  for (const auto& cls : {vocab::kCausalStatementUnit, vocab::kCorrelationStatementUnit}) {
    for (const auto& id : kg_.units_of_class(cls)) candidates.insert(id);
  }
  std::vector<CausalStatement> statements;
  for (const auto& id : candidates) {
    if (!kg_.is_statement_unit(id)) continue;
    auto u = kg_.statement_unit(id);
    try {
      if (categorize(u, &kg_.store()) != StatementCategory::Universal) continue;
    } catch (const Error&) {
      continue;
    }
    statements.push_back(causal_statement(kg_, id));
  }
  if (statements.empty()) return std::nullopt;
  auto net = build_causal_map(statements);
  return persist_network(kg_, net);
}

json Service::build_map() {
  auto id = rebuild_map();
  if (!id) throw Error(ErrorCode::NotFound, "no universal causal statement units");
  save();
  return map(id->value);
}

json Service::perspective(const std::string& map_id, const json& request) {
  auto id = resolve_map_id(map_id);
  auto net = network(id);
  auto cause = resolve_variable(kg_, net, text_field(request, "cause"));
  auto effect = resolve_variable(kg_, net, text_field(request, "effect"));
  std::optional<ContextFilter> context;
  if (request.contains("context") && !request["context"].is_null()) {
    context = context_filter_from_json(request["context"]);
  }
  auto p = extract_perspective(kg_, net, cause, effect, context);
  persist_perspective(kg_, p);
  save();
  return perspective_to_json(kg_, p);
}

json Service::identify(const json& request) {
  auto net = network(resolve_map(request));
  auto dag = dag_from_network(net);
  auto cause = resolve_variable(kg_, net, text_field(request, "cause"));
  auto effect = resolve_variable(kg_, net, text_field(request, "effect"));
  NameFn name = [](const std::string& s) { return local_name(Iri(s)); };
  auto est = identify_effect(dag, cause.value, effect.value, config_.max_adjustment_size);
  record_identification(kg_, net, est, name);
  save();
  json j = estimand_to_json(est, name);
  json sets = json::array();
  for (const auto& s : backdoor_sets(dag, cause.value, effect.value, config_.max_adjustment_size)) {
    sets.push_back(s.variables);
  }
  j["backdoor_sets"] = sets;
  return j;
}

}  // namespace su
