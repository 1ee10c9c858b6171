#include "su/statement_logic.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "su/error.hpp"
#include "su/vocab.hpp"

namespace su {

namespace {

const std::string kSomeSuffix = "/some-instance";
const std::string kMostSuffix = "/most-instances";

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Quantified twins of a resource share one base IRI, so deriving along
// different routes (universal -> contingent, universal -> prototypical ->
// contingent) lands on identical content.
std::string base_iri(const Iri& r) {
  for (const auto* suffix : {&kSomeSuffix, &kMostSuffix}) {
    if (ends_with(r.value, *suffix)) return r.value.substr(0, r.value.size() - suffix->size());
  }
  return r.value;
}

Iri twin_iri(const Iri& r, ResourceKind kind) {
  return Iri(base_iri(r) + (kind == ResourceKind::MostInstances ? kMostSuffix : kSomeSuffix));
}

const Iri& quantifier_class(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::SomeInstance: return vocab::kSomeInstanceResource;
    case ResourceKind::EveryInstance: return vocab::kEveryInstanceResource;
    case ResourceKind::MostInstances: return vocab::kMostInstancesResource;
    default: break;
  }
  throw Error(ErrorCode::InvalidRequest, "not a quantifier kind");
}

bool is_category_class(const Iri& c) {
  return c == vocab::kAssertionalStatementUnit || c == vocab::kContingentStatementUnit ||
         c == vocab::kPrototypicalStatementUnit || c == vocab::kUniversalStatementUnit ||
         c == vocab::kClassAxiomUnit || c == vocab::kStatementUnit;
}

// Resources in subject/object position of proposition triples.
std::vector<Iri> proposition_resources(const std::vector<Quad>& content) {
  std::set<Iri> out;
  for (const auto& q : content) {
    if (q.p == vocab::kType || q.p == vocab::kLabel) continue;
    out.insert(q.s);
    if (q.o.is_iri()) out.insert(q.o.iri());
  }
  return {out.begin(), out.end()};
}

bool subclass_of(const Iri& sub, const Iri& super, const QuadStore* store) {
  if (sub == super) return true;
  if (store == nullptr) return false;
  std::set<Iri> seen{sub};
  std::vector<Iri> frontier{sub};
  while (!frontier.empty()) {
    Iri c = frontier.back();
    frontier.pop_back();
    for (const auto& t : store->objects(c, vocab::kSubClassOf)) {
      if (!t.is_iri()) continue;
      if (t.iri() == super) return true;
      if (seen.insert(t.iri()).second) frontier.push_back(t.iri());
    }
  }
  return false;
}

// Every class the universal resource quantifies over is (a superclass of)
// some class of the token resource.
bool token_instantiates(const ResourceInfo& token, const ResourceInfo& type,
                        const QuadStore* store) {
  if (type.classes.empty()) return false;
  return std::all_of(type.classes.begin(), type.classes.end(), [&](const Iri& target) {
    return std::any_of(token.classes.begin(), token.classes.end(),
                       [&](const Iri& c) { return subclass_of(c, target, store); });
  });
}

}  // namespace

std::string_view category_name(StatementCategory c) {
  switch (c) {
    case StatementCategory::Assertional: return "Assertional";
    case StatementCategory::Contingent: return "Contingent";
    case StatementCategory::Prototypical: return "Prototypical";
    case StatementCategory::Universal: return "Universal";
  }
  return "Assertional";
}

const Iri& category_class(StatementCategory c) {
  switch (c) {
    case StatementCategory::Assertional: return vocab::kAssertionalStatementUnit;
    case StatementCategory::Contingent: return vocab::kContingentStatementUnit;
    case StatementCategory::Prototypical: return vocab::kPrototypicalStatementUnit;
    case StatementCategory::Universal: return vocab::kUniversalStatementUnit;
  }
  return vocab::kAssertionalStatementUnit;
}

StatementCategory categorize(const StatementUnit& unit, const QuadStore* store) {
  if (unit.has_class(vocab::kCounterfactualStatementUnit)) return StatementCategory::Contingent;
  auto primary = unit.primary();
  if (!primary) throw Error(ErrorCode::MixedQuantifiers, "unit has no primary triple");

  auto subject = describe_resource(primary->s, unit.content, store);
  std::optional<ResourceKind> object;
  if (primary->o.is_iri()) object = describe_resource(primary->o.iri(), unit.content, store).kind;

  auto object_is = [&](std::initializer_list<ResourceKind> kinds) {
    if (!object) return true;  // literal objects fit every category
    return std::find(kinds.begin(), kinds.end(), *object) != kinds.end();
  };

  switch (subject.kind) {
    case ResourceKind::Instance:
      if (object_is({ResourceKind::Instance, ResourceKind::OntologyClass})) {
        return StatementCategory::Assertional;
      }
      break;
    case ResourceKind::SomeInstance:
      if (object_is({ResourceKind::SomeInstance, ResourceKind::Instance, ResourceKind::OntologyClass})) {
        return StatementCategory::Contingent;
      }
      break;
    case ResourceKind::MostInstances:
      if (object_is({ResourceKind::SomeInstance})) return StatementCategory::Prototypical;
      break;
    case ResourceKind::EveryInstance:
      if (object_is({ResourceKind::SomeInstance})) return StatementCategory::Universal;
      break;
    case ResourceKind::OntologyClass:
      break;
  }
  throw Error(ErrorCode::MixedQuantifiers,
              "subject " + std::string(resource_kind_name(subject.kind)) +
                  " with object " +
                  (object ? std::string(resource_kind_name(*object)) : std::string("Literal")) +
                  " matches no statement category");
}

namespace {

// Rewrites every resource of kind `from` into a twin of kind `to`.
std::vector<Triple> requantify(const StatementUnit& unit, const QuadStore* store,
                               ResourceKind from, ResourceKind to) {
  std::map<Iri, Iri> rename;
  std::vector<Triple> extra;
  for (const auto& r : proposition_resources(unit.content)) {
    auto info = describe_resource(r, unit.content, store);
    if (info.kind != from) continue;
    if (info.classes.empty()) {
      throw Error(ErrorCode::UnclassedInstance, r.value + " has no target class");
    }
    Iri twin = twin_iri(r, to);
    rename.emplace(r, twin);
    extra.push_back({twin, vocab::kType, quantifier_class(to)});
    for (const auto& c : info.classes) extra.push_back({twin, vocab::kType, c});
  }

  std::vector<Triple> out;
  for (const auto& q : unit.content) {
    auto s_it = rename.find(q.s);
    if (s_it != rename.end() && q.p == vocab::kType) continue;  // rebuilt in `extra`
    Triple t = q.triple();
    if (s_it != rename.end()) t.s = s_it->second;
    if (t.o.is_iri()) {
      if (auto o_it = rename.find(t.o.iri()); o_it != rename.end()) t.o = o_it->second;
    }
    out.push_back(t);
  }
  out.insert(out.end(), extra.begin(), extra.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StatementUnit mint_twin(KnowledgeGraph& kg, const StatementUnit& source,
                        const std::vector<Triple>& content, StatementCategory category,
                        const Iri& rule) {
  std::vector<Iri> classes{category_class(category)};
  for (const auto& c : source.unit_classes) {
    if (!is_category_class(c) && kg.is_known_unit_class(c)) classes.push_back(c);
  }
  return kg.mint_statement_unit(content, classes,
                                {{vocab::kDerivedBy, rule}, {vocab::kDerivedFrom, source.id}});
}

}  // namespace

std::vector<StatementUnit> derive_entailed(KnowledgeGraph& kg, const StatementUnit& unit) {
  const QuadStore* store = &kg.store();
  std::vector<StatementUnit> out;
  switch (categorize(unit, store)) {
    case StatementCategory::Assertional: {
      auto content = requantify(unit, store, ResourceKind::Instance, ResourceKind::SomeInstance);
      out.push_back(mint_twin(kg, unit, content, StatementCategory::Contingent,
                              vocab::kRuleAssertionalToContingent));
      break;
    }
    case StatementCategory::Prototypical: {
      auto content = requantify(unit, store, ResourceKind::MostInstances, ResourceKind::SomeInstance);
      out.push_back(mint_twin(kg, unit, content, StatementCategory::Contingent,
                              vocab::kRulePrototypicalToContingent));
      break;
    }
    case StatementCategory::Universal: {
      auto proto = requantify(unit, store, ResourceKind::EveryInstance, ResourceKind::MostInstances);
      auto contingent = requantify(unit, store, ResourceKind::EveryInstance, ResourceKind::SomeInstance);
      out.push_back(mint_twin(kg, unit, proto, StatementCategory::Prototypical,
                              vocab::kRuleUniversalEntailment));
      out.push_back(mint_twin(kg, unit, contingent, StatementCategory::Contingent,
                              vocab::kRuleUniversalEntailment));
      break;
    }
    case StatementCategory::Contingent:
      break;
  }
  return out;
}

bool check_satisfies(const StatementUnit& assertional, const StatementUnit& universal,
                     const QuadStore* store) {
  auto token = assertional.primary();
  auto type = universal.primary();
  if (!token || !type) throw Error(ErrorCode::ShapeMismatch, "unit without primary triple");
  if (token->o.is_literal() != type->o.is_literal()) {
    throw Error(ErrorCode::ShapeMismatch, "resource object compared against literal object");
  }
  if (categorize(assertional, store) != StatementCategory::Assertional) return false;
  if (categorize(universal, store) != StatementCategory::Universal) return false;
  if (token->p != type->p) return false;

  auto token_subject = describe_resource(token->s, assertional.content, store);
  auto type_subject = describe_resource(type->s, universal.content, store);
  if (!token_instantiates(token_subject, type_subject, store)) return false;

  if (token->o.is_literal()) {
    return token->o.literal().datatype == type->o.literal().datatype;
  }
  auto token_object = describe_resource(token->o.iri(), assertional.content, store);
  auto type_object = describe_resource(type->o.iri(), universal.content, store);
  return token_instantiates(token_object, type_object, store);
}

void link_satisfies(KnowledgeGraph& kg, const Iri& assertional, const Iri& universal) {
  auto a = kg.statement_unit(assertional);
  auto u = kg.statement_unit(universal);
  if (!check_satisfies(a, u, &kg.store())) {
    throw Error(ErrorCode::SatisfactionFails,
                assertional.value + " does not satisfy " + universal.value);
  }
  kg.annotate(assertional, vocab::kSatisfies, universal);
}

Evidence evidence_for(const Iri& universal, const QuadStore& store) {
  Evidence e;
  for (const auto& q : store.match({.p = vocab::kSatisfies, .o = Term(universal)})) {
    if (q.g == meta_graph_of(q.s)) e.supporting.push_back(q.s);
  }
  for (const auto& q : store.match({.p = vocab::kContradicts, .o = Term(universal)})) {
    if (q.g == meta_graph_of(q.s)) e.contradicting.push_back(q.s);
  }
  for (auto* v : {&e.supporting, &e.contradicting}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return e;
}

}  // namespace su
