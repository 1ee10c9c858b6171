#include "su/semantic_units.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>

#include "su/error.hpp"
#include "su/vocab.hpp"

namespace su {

namespace {

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool is_quantifier_class(const Iri& cls) {
  return cls == vocab::kSomeInstanceResource || cls == vocab::kEveryInstanceResource ||
         cls == vocab::kMostInstancesResource;
}

bool is_structural_predicate(const Iri& p) { return p == vocab::kType || p == vocab::kLabel; }

}  // namespace

std::string_view resource_kind_name(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::OntologyClass: return "OntologyClass";
    case ResourceKind::Instance: return "Instance";
    case ResourceKind::SomeInstance: return "SomeInstance";
    case ResourceKind::EveryInstance: return "EveryInstance";
    case ResourceKind::MostInstances: return "MostInstances";
  }
  return "Instance";
}

std::optional<ResourceKind> parse_resource_kind(std::string_view name) {
  for (auto k : {ResourceKind::OntologyClass, ResourceKind::Instance, ResourceKind::SomeInstance,
                 ResourceKind::EveryInstance, ResourceKind::MostInstances}) {
    if (resource_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

bool ResourceInfo::instantiates(const Iri& cls) const {
  return std::binary_search(classes.begin(), classes.end(), cls);
}

std::optional<Iri> ResourceInfo::target_class() const {
  if (classes.empty()) return std::nullopt;
  return classes.front();
}

ResourceInfo describe_resource(const Iri& resource, const std::vector<Quad>& content,
                               const QuadStore* store) {
  ResourceInfo info;
  info.iri = resource;
  std::vector<Iri> types;
  bool subclass_subject = false;
  for (const auto& q : content) {
    if (q.s != resource) continue;
    if (q.p == vocab::kType && q.o.is_iri()) types.push_back(q.o.iri());
    if (q.p == vocab::kSubClassOf) subclass_subject = true;
  }
  if (types.empty() && store != nullptr) {
    for (const auto& t : store->objects(resource, vocab::kType)) {
      if (t.is_iri()) types.push_back(t.iri());
    }
    if (!store->objects(resource, vocab::kSubClassOf).empty()) subclass_subject = true;
  }
  sort_unique(types);

  info.kind = ResourceKind::Instance;
  for (const auto& t : types) {
    if (t == vocab::kSomeInstanceResource) info.kind = ResourceKind::SomeInstance;
    else if (t == vocab::kEveryInstanceResource) info.kind = ResourceKind::EveryInstance;
    else if (t == vocab::kMostInstancesResource) info.kind = ResourceKind::MostInstances;
    else if (t == vocab::kOwlClass) info.kind = ResourceKind::OntologyClass;
    else info.classes.push_back(t);
  }
  if (info.kind == ResourceKind::Instance && subclass_subject) {
    info.kind = ResourceKind::OntologyClass;
  }
  return info;
}

std::optional<Triple> primary_triple(const std::vector<Quad>& content) {
  std::vector<Quad> props;
  for (const auto& q : content) {
    if (!is_structural_predicate(q.p)) props.push_back(q);
  }
  if (props.empty()) return std::nullopt;
  std::sort(props.begin(), props.end(), [](const Quad& a, const Quad& b) {
    return std::tie(a.s, a.p, a.o) < std::tie(b.s, b.p, b.o);
  });
  std::set<Iri> objects;
  for (const auto& q : props) {
    if (q.o.is_iri()) objects.insert(q.o.iri());
  }
  for (const auto& q : props) {
    if (!objects.count(q.s)) return q.triple();
  }
  return props.front().triple();
}

Iri meta_graph_of(const Iri& unit_id) { return Iri(unit_id.value + "#meta"); }

bool StatementUnit::has_class(const Iri& cls) const {
  return std::binary_search(unit_classes.begin(), unit_classes.end(), cls);
}

bool CompoundUnit::has_class(const Iri& cls) const {
  return std::binary_search(unit_classes.begin(), unit_classes.end(), cls);
}

const Iri& unit_id(const SemanticUnit& unit) {
  return std::visit([](const auto& u) -> const Iri& { return u.id; }, unit);
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr);
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string uuid_v4(std::mt19937_64& rng) {
  std::array<unsigned char, 16> b{};
  for (std::size_t i = 0; i < b.size(); i += 8) {
    auto r = rng();
    for (std::size_t k = 0; k < 8; ++k) b[i + k] = static_cast<unsigned char>(r >> (8 * k));
  }
  b[6] = static_cast<unsigned char>((b[6] & 0x0F) | 0x40);
  b[8] = static_cast<unsigned char>((b[8] & 0x3F) | 0x80);
  std::string out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i == 4 || i == 6 || i == 8 || i == 10) out += '-';
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", b[i]);
    out += buf;
  }
  return out;
}

IdMinter::IdMinter(bool deterministic, std::uint64_t seed)
    : deterministic_(deterministic), rng_(seed) {}

Iri IdMinter::mint(std::string_view canonical) {
  if (deterministic_) return Iri("urn:su:" + sha256_hex(canonical));
  return Iri("urn:su:" + uuid_v4(rng_));
}

std::string canonical_content(const std::vector<Triple>& content) {
  static const Iri placeholder("urn:su:content");
  std::vector<Quad> quads;
  quads.reserve(content.size());
  for (const auto& t : content) quads.push_back({t.s, t.p, t.o, placeholder});
  return write_nquads(quads);
}

KnowledgeGraph::KnowledgeGraph(bool deterministic_ids) : minter_(deterministic_ids) {}

KnowledgeGraph::KnowledgeGraph(QuadStore store, bool deterministic_ids)
    : store_(std::move(store)), minter_(deterministic_ids) {}

bool KnowledgeGraph::is_known_unit_class(const Iri& cls) const {
  const auto& builtin = vocab::builtin_unit_classes();
  if (std::find(builtin.begin(), builtin.end(), cls) != builtin.end()) return true;
  return !store_.match({.s = cls, .p = vocab::kSubClassOf, .g = vocab::kVocabularyGraph}).empty();
}

void KnowledgeGraph::declare_unit_class(const Iri& cls, const Iri& parent) {
  store_.insert({cls, vocab::kSubClassOf, parent, vocab::kVocabularyGraph});
}

void KnowledgeGraph::add_label(const Iri& resource, const std::string& text) {
  store_.insert({resource, vocab::kLabel, plain_literal(text), vocab::kVocabularyGraph});
}

std::optional<std::string> KnowledgeGraph::label(const Iri& resource) const {
  std::optional<std::string> best;
  for (const auto& t : store_.objects(resource, vocab::kLabel)) {
    if (!t.is_literal()) continue;
    if (!best || t.literal().lexical < *best) best = t.literal().lexical;
  }
  return best;
}

std::string KnowledgeGraph::display_label(const Iri& resource) const {
  if (auto l = label(resource)) return *l;
  return local_name(resource);
}

StatementUnit KnowledgeGraph::mint_statement_unit(
    const std::vector<Triple>& content, const std::vector<Iri>& unit_classes,
    const std::vector<std::pair<Iri, Term>>& meta_pairs) {
  if (content.empty()) throw Error(ErrorCode::EmptyContent, "statement unit needs content");
  if (unit_classes.empty()) {
    throw Error(ErrorCode::UnknownUnitClass, "statement unit needs at least one unit class");
  }
  for (const auto& c : unit_classes) {
    if (!is_known_unit_class(c)) {
      throw Error(ErrorCode::UnknownUnitClass, "unknown unit class " + c.value);
    }
  }

  Iri id = minter_.mint(canonical_content(content));
  Iri meta = meta_graph_of(id);
  for (const auto& t : content) store_.insert({t.s, t.p, t.o, id});

  store_.insert({id, vocab::kType, vocab::kStatementUnit, meta});
  for (const auto& c : unit_classes) store_.insert({id, vocab::kType, c, meta});

  bool has_framework = false;
  for (const auto& [p, o] : meta_pairs) {
    store_.insert({id, p, o, meta});
    has_framework = has_framework || p == vocab::kHasLogicalFramework;
  }
  if (!has_framework) {
    bool quantified = false;
    for (const auto& t : content) {
      if (t.p == vocab::kType && t.o.is_iri() && is_quantifier_class(t.o.iri())) quantified = true;
    }
    store_.insert({id, vocab::kHasLogicalFramework,
                   quantified ? vocab::kFirstOrderLogic : vocab::kDescriptionLogics, meta});
  }
  return statement_unit(id);
}

CompoundUnit KnowledgeGraph::mint_compound_unit(
    const std::vector<Iri>& members, const std::vector<Iri>& unit_classes,
    const std::vector<std::pair<Iri, Term>>& meta_pairs) {
  if (members.empty()) throw Error(ErrorCode::EmptyMembers, "compound unit needs members");
  for (const auto& m : members) {
    if (!is_unit(m)) throw Error(ErrorCode::DanglingMember, "no unit " + m.value);
  }
  for (const auto& c : unit_classes) {
    if (!is_known_unit_class(c)) {
      throw Error(ErrorCode::UnknownUnitClass, "unknown unit class " + c.value);
    }
  }

  std::string canonical = "compound\n";
  auto sorted_classes = unit_classes;
  sort_unique(sorted_classes);
  for (const auto& c : sorted_classes) canonical += "class " + c.value + "\n";
  for (const auto& m : members) canonical += "member " + m.value + "\n";
  std::vector<std::pair<std::string, std::string>> extra;
  for (const auto& [p, o] : meta_pairs) extra.emplace_back(p.value, to_nquads(o));
  std::sort(extra.begin(), extra.end());
  for (const auto& [p, o] : extra) canonical += "meta " + p + " " + o + "\n";

  Iri id = minter_.mint(canonical);
  Iri meta = meta_graph_of(id);
  store_.insert({id, vocab::kType, vocab::kCompoundUnit, meta});
  for (const auto& c : unit_classes) store_.insert({id, vocab::kType, c, meta});
  for (std::size_t i = 0; i < members.size(); ++i) {
    store_.insert({id, vocab::kHasAssociatedUnit, members[i], meta});
    store_.insert({id, vocab::rdf_member(i + 1), members[i], meta});
  }
  for (const auto& [p, o] : meta_pairs) store_.insert({id, p, o, meta});
  return compound_unit(id);
}

std::vector<Iri> KnowledgeGraph::types_in_meta(const Iri& id) const {
  std::vector<Iri> out;
  for (const auto& t : store_.objects(id, vocab::kType, meta_graph_of(id))) {
    if (t.is_iri()) out.push_back(t.iri());
  }
  return out;
}

bool KnowledgeGraph::is_statement_unit(const Iri& id) const {
  return store_.contains({id, vocab::kType, vocab::kStatementUnit, meta_graph_of(id)});
}

bool KnowledgeGraph::is_compound_unit(const Iri& id) const {
  return store_.contains({id, vocab::kType, vocab::kCompoundUnit, meta_graph_of(id)});
}

bool KnowledgeGraph::is_unit(const Iri& id) const {
  return is_statement_unit(id) || is_compound_unit(id);
}

void KnowledgeGraph::require_unit(const Iri& id) const {
  if (!is_unit(id)) throw Error(ErrorCode::UnknownUnit, "no unit " + id.value);
}

StatementUnit KnowledgeGraph::statement_unit(const Iri& id) const {
  if (!is_statement_unit(id)) throw Error(ErrorCode::UnknownUnit, "no statement unit " + id.value);
  StatementUnit u;
  u.id = id;
  u.content = store_.graph(id);
  u.meta = store_.graph(meta_graph_of(id));
  u.unit_classes = types_in_meta(id);
  return u;
}

CompoundUnit KnowledgeGraph::compound_unit(const Iri& id) const {
  if (!is_compound_unit(id)) throw Error(ErrorCode::UnknownUnit, "no compound unit " + id.value);
  CompoundUnit u;
  u.id = id;
  u.meta = store_.graph(meta_graph_of(id));
  u.unit_classes = types_in_meta(id);

  std::vector<std::pair<std::size_t, Iri>> ordered;
  std::set<Iri> seen;
  for (const auto& q : u.meta) {
    std::size_t index = 0;
    if (q.s == id && q.o.is_iri() && vocab::is_rdf_member(q.p, index)) {
      ordered.emplace_back(index, q.o.iri());
    }
  }
  std::sort(ordered.begin(), ordered.end());
  for (const auto& [index, m] : ordered) {
    if (seen.insert(m).second) u.members.push_back(m);
  }
  // Members linked without a position go last, in IRI order.
  for (const auto& t : store_.objects(id, vocab::kHasAssociatedUnit, u.meta_graph())) {
    if (t.is_iri() && seen.insert(t.iri()).second) u.members.push_back(t.iri());
  }
  return u;
}

SemanticUnit KnowledgeGraph::unit(const Iri& id) const {
  if (is_statement_unit(id)) return statement_unit(id);
  return compound_unit(id);
}

std::vector<Iri> KnowledgeGraph::unit_ids() const {
  std::vector<Iri> out = units_of_class(vocab::kStatementUnit);
  auto compounds = units_of_class(vocab::kCompoundUnit);
  out.insert(out.end(), compounds.begin(), compounds.end());
  sort_unique(out);
  return out;
}

std::vector<Iri> KnowledgeGraph::units_of_class(const Iri& cls) const {
  std::vector<Iri> out;
  for (const auto& q : store_.match({.p = vocab::kType, .o = Term(cls)})) {
    if (q.g == meta_graph_of(q.s) && (is_unit(q.s))) out.push_back(q.s);
  }
  sort_unique(out);
  return out;
}

void KnowledgeGraph::assemble_into(const Iri& unit, std::vector<Iri>& stack,
                                   std::vector<Quad>& out) const {
  if (std::find(stack.begin(), stack.end(), unit) != stack.end()) {
    throw Error(ErrorCode::CyclicComposition, "unit " + unit.value + " contains itself");
  }
  require_unit(unit);
  if (is_statement_unit(unit)) {
    auto content = store_.graph(unit);
    out.insert(out.end(), content.begin(), content.end());
    return;
  }
  stack.push_back(unit);
  for (const auto& m : compound_unit(unit).members) assemble_into(m, stack, out);
  stack.pop_back();
}

std::vector<Quad> KnowledgeGraph::assemble_content(const Iri& unit) const {
  std::vector<Iri> stack;
  std::vector<Quad> out;
  assemble_into(unit, stack, out);
  sort_unique(out);
  return out;
}

void KnowledgeGraph::set_dual_type(const Iri& unit, const Iri& extra_class,
                                   const std::optional<Iri>& represents) {
  require_unit(unit);
  store_.insert({unit, vocab::kType, extra_class, meta_graph_of(unit)});
  if (represents) store_.insert({unit, vocab::kIsAbout, *represents, meta_graph_of(unit)});
}

void KnowledgeGraph::annotate_method(const Iri& unit, const Iri& method) {
  annotate(unit, vocab::kMeasuredApplyingMethod, method);
}

void KnowledgeGraph::annotate(const Iri& unit, const Iri& predicate, const Term& value) {
  require_unit(unit);
  store_.insert({unit, predicate, value, meta_graph_of(unit)});
}

void KnowledgeGraph::insert_unit(const SemanticUnit& unit) {
  std::visit(
      [this](const auto& u) {
        Iri meta = meta_graph_of(u.id);
        if constexpr (std::is_same_v<std::decay_t<decltype(u)>, StatementUnit>) {
          for (const auto& q : u.content) store_.insert({q.s, q.p, q.o, u.id});
          store_.insert({u.id, vocab::kType, vocab::kStatementUnit, meta});
        } else {
          store_.insert({u.id, vocab::kType, vocab::kCompoundUnit, meta});
          for (std::size_t i = 0; i < u.members.size(); ++i) {
            store_.insert({u.id, vocab::kHasAssociatedUnit, u.members[i], meta});
            store_.insert({u.id, vocab::rdf_member(i + 1), u.members[i], meta});
          }
        }
        for (const auto& q : u.meta) store_.insert({q.s, q.p, q.o, meta});
        for (const auto& c : u.unit_classes) store_.insert({u.id, vocab::kType, c, meta});
      },
      unit);
}

}  // namespace su
