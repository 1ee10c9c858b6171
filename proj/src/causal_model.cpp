#include "su/causal_model.hpp"

#include <algorithm>
#include <functional>

#include "su/error.hpp"
#include "su/vocab.hpp"

namespace su {

using nlohmann::json;

std::string_view polarity_name(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::Unsigned: return "unsigned";
  }
  return "unsigned";
}

Polarity polarity_of(const Iri& predicate) {
  if (predicate == vocab::kNegativelyRegulatesCharacteristic ||
      predicate == vocab::kNegativelyCorrelatedWith || predicate == vocab::kUpstreamNegativeEffect) {
    return Polarity::Negative;
  }
  if (predicate == vocab::kCausallyInfluencesPositive) return Polarity::Positive;
  return Polarity::Unsigned;
}

namespace {

bool is_correlation_predicate(const Iri& p) {
  return p == vocab::kCorrelatedWith || p == vocab::kNegativelyCorrelatedWith;
}

CausalVariableRef variable_ref(const KnowledgeGraph& kg, const Iri& resource,
                               const std::vector<Quad>& content) {
  auto info = describe_resource(resource, content, &kg.store());
  CausalVariableRef ref;
  ref.resource = resource;
  ref.kind = info.kind;
  if (kg.is_unit(resource)) ref.unit_proxy = resource;
  for (const auto& c : info.classes) {
    if (!kg.is_known_unit_class(c)) {
      ref.variable_class = c;
      break;
    }
  }
  if (ref.variable_class.empty()) {
    throw Error(ErrorCode::UnclassedInstance, resource.value + " has no variable class");
  }
  return ref;
}

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

CausalStatement causal_statement(const KnowledgeGraph& kg, const Iri& unit_id) {
  auto unit = kg.statement_unit(unit_id);
  auto primary = unit.primary();
  if (!primary || !primary->o.is_iri()) {
    throw Error(ErrorCode::ShapeMismatch, unit_id.value + " is not a binary variable relation");
  }
  CausalStatement st;
  st.unit_id = unit_id;
  st.predicate = primary->p;
  st.source = variable_ref(kg, primary->s, unit.content);
  st.target = variable_ref(kg, primary->o.iri(), unit.content);
  st.category = categorize(unit, &kg.store());

  if (unit.has_class(vocab::kCorrelationStatementUnit)) st.mode = CausalMode::Correlative;
  else if (unit.has_class(vocab::kCausalStatementUnit)) st.mode = CausalMode::Causal;
  else st.mode = is_correlation_predicate(st.predicate) ? CausalMode::Correlative : CausalMode::Causal;

  if (unit.has_class(vocab::kNecessaryAndSufficientCausalStatementUnit)) {
    st.strength = CausalStrength::NecessaryAndSufficient;
  } else if (unit.has_class(vocab::kNecessaryCausalStatementUnit)) {
    st.strength = CausalStrength::Necessary;
  } else if (unit.has_class(vocab::kSufficientCausalStatementUnit)) {
    st.strength = CausalStrength::Sufficient;
  }
  return st;
}

bool composable(const CausalStatement& first, const CausalStatement& second) {
  if (first.category != StatementCategory::Universal ||
      second.category != StatementCategory::Universal || first.mode != second.mode) {
    return false;
  }
  bool same_variable = first.target.variable_class == second.source.variable_class ||
                       (first.target.unit_proxy && first.target.unit_proxy == second.source.unit_proxy);
  if (!same_variable) return false;
  if (first.target.kind == ResourceKind::SomeInstance &&
      second.source.kind != ResourceKind::EveryInstance) {
    return false;
  }
  return true;
}

CausalNetwork compose_chain(const CausalStatement& first, const CausalStatement& second) {
  if (!composable(first, second)) {
    throw Error(ErrorCode::NotComposable,
                first.unit_id.value + " cannot be chained into " + second.unit_id.value);
  }
  CausalNetwork net;
  net.statements = {first.unit_id, second.unit_id};
  sort_unique(net.statements);
  net.edges = {
      {first.source.variable_class, first.target.variable_class, first.unit_id,
       polarity_of(first.predicate)},
      {second.source.variable_class, second.target.variable_class, second.unit_id,
       polarity_of(second.predicate)},
  };
  std::sort(net.edges.begin(), net.edges.end());
  for (const auto& e : net.edges) {
    net.variables.insert(e.source);
    net.variables.insert(e.target);
  }
  if (second.source.resource != first.target.resource) {
    net.substitutions.emplace(second.source.resource, first.target.resource);
  }
  return net;
}

std::vector<Triple> composite_content(const KnowledgeGraph& kg, const CausalNetwork& net) {
  auto subst = [&](const Iri& r) {
    auto it = net.substitutions.find(r);
    return it == net.substitutions.end() ? r : it->second;
  };
  std::vector<Triple> out;
  for (const auto& id : net.statements) {
    for (const auto& q : kg.store().graph(id)) {
      Triple t{subst(q.s), q.p, q.o};
      if (t.o.is_iri()) t.o = subst(t.o.iri());
      out.push_back(t);
    }
  }
  sort_unique(out);
  return out;
}

CausalNetwork build_causal_map(const std::vector<CausalStatement>& statements) {
  std::map<Iri, const CausalStatement*> by_id;
  for (const auto& s : statements) {
    if (s.category != StatementCategory::Universal) {
      throw Error(ErrorCode::NotUniversal, s.unit_id.value + " is not a universal statement");
    }
    by_id.emplace(s.unit_id, &s);
  }
  bool any_causal = std::any_of(by_id.begin(), by_id.end(),
                                [](const auto& kv) { return kv.second->mode == CausalMode::Causal; });

  CausalNetwork net;
  for (const auto& [id, s] : by_id) {
    CausalEdge edge{s->source.variable_class, s->target.variable_class, id, polarity_of(s->predicate)};
    bool main = !any_causal || s->mode == CausalMode::Causal;
    if (main) {
      net.statements.push_back(id);
      net.edges.push_back(edge);
      net.variables.insert(edge.source);
      net.variables.insert(edge.target);
    } else {
      net.correlations.push_back(edge);
    }
  }
  std::sort(net.edges.begin(), net.edges.end());
  std::sort(net.correlations.begin(), net.correlations.end());
  if (any_causal) {
    for (const auto& e : net.edges) {
      for (const auto& c : net.correlations) {
        if (e.source == c.source && e.target == c.target) net.interpretations.emplace_back(e.unit, c.unit);
      }
    }
  }
  return net;
}

Iri persist_network(KnowledgeGraph& kg, CausalNetwork& net) {
  std::vector<Iri> members = net.statements;
  for (const auto& c : net.correlations) members.push_back(c.unit);
  auto unit = kg.mint_compound_unit(members, {vocab::kCausalNetworkCompoundUnit});
  for (const auto& [causal, corr] : net.interpretations) {
    kg.annotate(causal, vocab::kCausalInterpretationOf, corr);
  }
  net.id = unit.id;
  return unit.id;
}

CausalNetwork load_causal_network(const KnowledgeGraph& kg, const Iri& map_id) {
  if (!kg.is_compound_unit(map_id)) throw Error(ErrorCode::NotFound, "no causal map " + map_id.value);
  auto unit = kg.compound_unit(map_id);
  if (!unit.has_class(vocab::kCausalNetworkCompoundUnit)) {
    throw Error(ErrorCode::NotFound, map_id.value + " is not a causal network compound unit");
  }
  std::vector<CausalStatement> statements;
  for (const auto& m : unit.members) statements.push_back(causal_statement(kg, m));
  auto net = build_causal_map(statements);
  net.id = map_id;
  return net;
}

std::vector<Iri> causal_map_ids(const KnowledgeGraph& kg) {
  return kg.units_of_class(vocab::kCausalNetworkCompoundUnit);
}

void mark_alternative(KnowledgeGraph& kg, const Iri& map_a, const Iri& map_b,
                      const std::optional<std::string>& assumption) {
  kg.annotate(map_a, vocab::kAlternativeTo, map_b);
  kg.annotate(map_b, vocab::kAlternativeTo, map_a);
  if (assumption) kg.annotate(map_a, vocab::su("assumption"), plain_literal(*assumption));
}

AcyclicityResult check_acyclic(const CausalNetwork& net) {
  std::map<Iri, std::vector<Iri>> out;
  for (const auto& e : net.edges) out[e.source].push_back(e.target);
  for (auto& [_, v] : out) sort_unique(v);

  enum class Color { White, Grey, Black };
  std::map<Iri, Color> color;
  for (const auto& v : net.variables) color[v] = Color::White;
  std::vector<Iri> stack;
  std::optional<std::vector<Iri>> cycle;

  std::function<bool(const Iri&)> visit = [&](const Iri& v) {
    color[v] = Color::Grey;
    stack.push_back(v);
    for (const auto& w : out[v]) {
      if (color[w] == Color::Grey) {
        auto start = std::find(stack.begin(), stack.end(), w);
        std::vector<Iri> c(start, stack.end());
        c.push_back(w);
        cycle = c;
        return true;
      }
      if (color[w] == Color::White && visit(w)) return true;
    }
    stack.pop_back();
    color[v] = Color::Black;
    return false;
  };

  for (const auto& v : net.variables) {
    if (color[v] == Color::White && visit(v)) return {false, cycle};
  }
  return {true, std::nullopt};
}

std::string_view junction_kind_name(JunctionKind k) {
  switch (k) {
    case JunctionKind::Chain: return "chain";
    case JunctionKind::Fork: return "fork";
    case JunctionKind::Collider: return "collider";
  }
  return "chain";
}

std::vector<JunctionUnit> classify_junctions(const CausalNetwork& net) {
  if (!check_acyclic(net).acyclic) throw Error(ErrorCode::CyclicGraph, "causal map has a cycle");
  std::vector<JunctionUnit> out;
  const auto& edges = net.edges;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t k = i + 1; k < edges.size(); ++k) {
      const auto& a = edges[i];
      const auto& b = edges[k];
      std::set<Iri> va{a.source, a.target};
      std::vector<Iri> shared;
      for (const auto& v : {b.source, b.target}) {
        if (va.count(v)) shared.push_back(v);
      }
      if (shared.size() != 1 || b.source == b.target || a.source == a.target) continue;
      const Iri& mid = shared.front();
      JunctionUnit j;
      j.v2 = mid;
      bool a_in = a.target == mid;
      bool b_in = b.target == mid;
      if (a_in && !b_in) {
        j = {std::nullopt, JunctionKind::Chain, a.source, mid, b.target, {a.unit, b.unit}};
      } else if (!a_in && b_in) {
        j = {std::nullopt, JunctionKind::Chain, b.source, mid, a.target, {b.unit, a.unit}};
      } else {
        const CausalEdge* first = &a;
        const CausalEdge* second = &b;
        auto end_of = [&](const CausalEdge* e) { return a_in ? e->source : e->target; };
        if (end_of(second) < end_of(first)) std::swap(first, second);
        j = {std::nullopt, a_in ? JunctionKind::Collider : JunctionKind::Fork, end_of(first), mid,
             end_of(second), {first->unit, second->unit}};
      }
      out.push_back(j);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void persist_junctions(KnowledgeGraph& kg, std::vector<JunctionUnit>& junctions) {
  for (auto& j : junctions) {
    const Iri& cls = j.kind == JunctionKind::Chain  ? vocab::kChainJunctionUnit
                     : j.kind == JunctionKind::Fork ? vocab::kForkJunctionUnit
                                                    : vocab::kColliderJunctionUnit;
    auto unit = kg.mint_compound_unit({j.member_edges[0], j.member_edges[1]}, {cls},
                                      {{vocab::kJunctionFirst, j.v1},
                                       {vocab::kJunctionMiddle, j.v2},
                                       {vocab::kJunctionLast, j.v3}});
    j.id = unit.id;
  }
}

ContextFilter context_filter_from_json(const json& j) {
  ContextFilter f;
  const json& reqs = j.contains("requirements") ? j["requirements"] : j;
  for (const auto& r : reqs) {
    Iri p(r.at("predicate").get<std::string>());
    if (r.contains("iri")) f.requirements.emplace_back(p, Iri(r["iri"].get<std::string>()));
    else f.requirements.emplace_back(p, plain_literal(r.at("literal").get<std::string>()));
  }
  return f;
}

std::string_view perspective_kind_name(PerspectiveKind k) {
  switch (k) {
    case PerspectiveKind::Causal: return "causal";
    case PerspectiveKind::Contextual: return "contextual";
    case PerspectiveKind::BackDoor: return "back-door";
    case PerspectiveKind::FrontDoor: return "front-door";
    case PerspectiveKind::InstrumentalVariable: return "instrumental-variable";
  }
  return "causal";
}

const Iri& perspective_class(PerspectiveKind k) {
  switch (k) {
    case PerspectiveKind::Causal: return vocab::kCausalPerspectiveUnit;
    case PerspectiveKind::Contextual: return vocab::kContextualCausalPerspectiveUnit;
    case PerspectiveKind::BackDoor: return vocab::kBackDoorPerspectiveUnit;
    case PerspectiveKind::FrontDoor: return vocab::kFrontDoorPerspectiveUnit;
    case PerspectiveKind::InstrumentalVariable: return vocab::kInstrumentalVariablePerspectiveUnit;
  }
  return vocab::kCausalPerspectiveUnit;
}

namespace {

bool passes(const KnowledgeGraph& kg, const Iri& unit, const ContextFilter& filter) {
  return std::all_of(filter.requirements.begin(), filter.requirements.end(), [&](const auto& r) {
    return kg.store().contains({unit, r.first, r.second, meta_graph_of(unit)});
  });
}

}  // namespace

PerspectiveUnit extract_perspective(const KnowledgeGraph& kg, const CausalNetwork& net,
                                    const Iri& cause, const Iri& effect,
                                    const std::optional<ContextFilter>& context) {
  for (const auto& v : {cause, effect}) {
    if (!net.variables.count(v)) throw Error(ErrorCode::UnknownVariable, "no variable " + v.value);
  }
  std::vector<CausalEdge> edges;
  for (const auto& e : net.edges) {
    if (!context || passes(kg, e.unit, *context)) edges.push_back(e);
  }

  PerspectiveUnit p;
  p.kind = context ? PerspectiveKind::Contextual : PerspectiveKind::Causal;
  p.focus_cause = cause;
  p.focus_effect = effect;

  PerspectivePath current;
  current.nodes.push_back(cause);
  std::set<Iri> on_path{cause};
  std::function<void(const Iri&)> walk = [&](const Iri& at) {
    if (at == effect) {
      PerspectivePath done = current;
      done.causal = std::all_of(done.forward.begin(), done.forward.end(), [](bool f) { return f; });
      p.paths.push_back(done);
      return;
    }
    for (const auto& e : edges) {
      std::optional<Iri> next;
      bool forward = false;
      if (e.source == at) {
        next = e.target;
        forward = true;
      } else if (e.target == at) {
        next = e.source;
      }
      if (!next || on_path.count(*next)) continue;
      on_path.insert(*next);
      current.nodes.push_back(*next);
      current.units.push_back(e.unit);
      current.forward.push_back(forward);
      walk(*next);
      current.forward.pop_back();
      current.units.pop_back();
      current.nodes.pop_back();
      on_path.erase(*next);
    }
  };
  if (cause != effect) walk(cause);

  for (const auto& path : p.paths) {
    p.member_statements.insert(p.member_statements.end(), path.units.begin(), path.units.end());
  }
  sort_unique(p.member_statements);
  if (context) {
    for (const auto& r : context->requirements) p.annotations.emplace_back(vocab::kContextRequirement,
                                                                           plain_literal(r.first.value + " " + to_nquads(r.second)));
  }
  return p;
}

std::string path_text(const KnowledgeGraph& kg, const PerspectivePath& path) {
  std::string out = kg.display_label(path.nodes.front());
  for (std::size_t i = 0; i < path.units.size(); ++i) {
    out += path.forward[i] ? " -> " : " <- ";
    out += kg.display_label(path.nodes[i + 1]);
  }
  return out;
}

std::optional<Iri> persist_perspective(KnowledgeGraph& kg, PerspectiveUnit& p) {
  if (p.member_statements.empty()) return std::nullopt;
  std::vector<std::pair<Iri, Term>> meta{{vocab::kFocusCause, p.focus_cause},
                                         {vocab::kFocusEffect, p.focus_effect}};
  for (const auto& path : p.paths) {
    std::string text = (path.causal ? "causal: " : "biasing: ");
    for (std::size_t i = 0; i < path.nodes.size(); ++i) {
      if (i > 0) text += path.forward[i - 1] ? " -> " : " <- ";
      text += path.nodes[i].value;
    }
    meta.emplace_back(vocab::kHasPath, plain_literal(text));
  }
  meta.insert(meta.end(), p.annotations.begin(), p.annotations.end());
  auto unit = kg.mint_compound_unit(p.member_statements, {perspective_class(p.kind)}, meta);
  p.id = unit.id;
  return unit.id;
}

void pin_annotation(KnowledgeGraph& kg, const Iri& unit, const Iri& predicate, const Term& value) {
  kg.annotate(unit, predicate, value);
}

Iri resolve_variable(const KnowledgeGraph& kg, const CausalNetwork& net, const std::string& name) {
  Iri exact(name);
  if (net.variables.count(exact)) return exact;
  std::vector<Iri> hits;
  for (const auto& v : net.variables) {
    if (local_name(v) == name || kg.label(v) == name) hits.push_back(v);
  }
  if (hits.size() == 1) return hits.front();
  if (hits.empty()) throw Error(ErrorCode::UnknownVariable, "no variable named " + name);
  throw Error(ErrorCode::UnknownVariable, "ambiguous variable name " + name);
}

json network_to_json(const CausalNetwork& net) {
  json j;
  if (net.id) j["id"] = net.id->value;
  j["nodes"] = json::array();
  for (const auto& v : net.variables) j["nodes"].push_back(v.value);
  j["edges"] = json::array();
  for (const auto& e : net.edges) {
    j["edges"].push_back({{"src", e.source.value},
                          {"dst", e.target.value},
                          {"unit", e.unit.value},
                          {"polarity", polarity_name(e.polarity)}});
  }
  if (!net.correlations.empty()) {
    j["correlations"] = json::array();
    for (const auto& e : net.correlations) {
      j["correlations"].push_back({{"src", e.source.value},
                                   {"dst", e.target.value},
                                   {"unit", e.unit.value},
                                   {"polarity", polarity_name(e.polarity)}});
    }
  }
  if (!net.interpretations.empty()) {
    j["interpretations"] = json::array();
    for (const auto& [c, r] : net.interpretations) {
      j["interpretations"].push_back({{"causal", c.value}, {"correlation", r.value}});
    }
  }
  if (!net.substitutions.empty()) {
    j["substitutions"] = json::object();
    for (const auto& [from, to] : net.substitutions) j["substitutions"][from.value] = to.value;
  }
  return j;
}

json junction_to_json(const JunctionUnit& jn) {
  json j{{"kind", junction_kind_name(jn.kind)},
         {"v1", jn.v1.value},
         {"v2", jn.v2.value},
         {"v3", jn.v3.value},
         {"members", {jn.member_edges[0].value, jn.member_edges[1].value}}};
  if (jn.id) j["id"] = jn.id->value;
  return j;
}

json perspective_to_json(const KnowledgeGraph& kg, const PerspectiveUnit& p) {
  json j;
  if (p.id) j["id"] = p.id->value;
  j["kind"] = perspective_kind_name(p.kind);
  j["cause"] = p.focus_cause.value;
  j["effect"] = p.focus_effect.value;
  j["members"] = json::array();
  for (const auto& m : p.member_statements) j["members"].push_back(m.value);
  j["paths"] = json::array();
  for (const auto& path : p.paths) {
    json units = json::array();
    for (const auto& u : path.units) units.push_back(u.value);
    json nodes = json::array();
    for (const auto& n : path.nodes) nodes.push_back(n.value);
    j["paths"].push_back({{"kind", path.causal ? "causal" : "biasing"},
                          {"nodes", nodes},
                          {"units", units},
                          {"text", path_text(kg, path)}});
  }
  return j;
}

}  // namespace su
