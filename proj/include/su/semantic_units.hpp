#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "su/quad_store.hpp"
#include "su/rdf.hpp"

namespace su {

enum class ResourceKind { OntologyClass, Instance, SomeInstance, EveryInstance, MostInstances };

std::string_view resource_kind_name(ResourceKind kind);
std::optional<ResourceKind> parse_resource_kind(std::string_view name);

// What a resource is, as far as its rdf:type assertions tell.
struct ResourceInfo {
  Iri iri;
  ResourceKind kind = ResourceKind::Instance;
  std::vector<Iri> classes;  // rdf:type objects minus quantifier classes, sorted

  bool instantiates(const Iri& cls) const;
  std::optional<Iri> target_class() const;
};

// Classifies `resource` using rdf:type quads in `content`; when the content
// says nothing about it, falls back to any graph of `store`.
ResourceInfo describe_resource(const Iri& resource, const std::vector<Quad>& content,
                               const QuadStore* store = nullptr);

// The proposition-carrying triple of a unit's content: the first
// non-type, non-label triple (canonical order) whose subject is not the
// object of another such triple.
std::optional<Triple> primary_triple(const std::vector<Quad>& content);

Iri meta_graph_of(const Iri& unit_id);

struct StatementUnit {
  Iri id;
  std::vector<Quad> content;       // all with g == id
  std::vector<Quad> meta;          // all with g == meta_graph_of(id)
  std::vector<Iri> unit_classes;   // sorted; includes su:StatementUnit

  bool has_class(const Iri& cls) const;
  Iri meta_graph() const { return meta_graph_of(id); }
  std::optional<Triple> primary() const { return primary_triple(content); }
};

struct CompoundUnit {
  Iri id;
  std::vector<Iri> members;        // ordered
  std::vector<Iri> unit_classes;   // sorted; includes su:CompoundUnit
  std::vector<Quad> meta;

  bool has_class(const Iri& cls) const;
  Iri meta_graph() const { return meta_graph_of(id); }
};

using SemanticUnit = std::variant<StatementUnit, CompoundUnit>;

const Iri& unit_id(const SemanticUnit& unit);

// Mints unit identifiers: random `urn:su:{uuid4}` by default, or
// `urn:su:{sha256(canonical)}` in deterministic mode.
class IdMinter {
 public:
  explicit IdMinter(bool deterministic = false, std::uint64_t seed = std::random_device{}());

  bool deterministic() const { return deterministic_; }
  Iri mint(std::string_view canonical);

 private:
  bool deterministic_;
  std::mt19937_64 rng_;
};

std::string sha256_hex(std::string_view data);
std::string uuid_v4(std::mt19937_64& rng);

// Canonical text for a content set, independent of its graph name.
std::string canonical_content(const std::vector<Triple>& content);

// A quad store viewed as a collection of semantic units. Each statement unit
// keeps its content in the graph named by its id and its metadata in
// `{id}#meta`; compound units own only a meta graph.
class KnowledgeGraph {
 public:
  explicit KnowledgeGraph(bool deterministic_ids = false);
  KnowledgeGraph(QuadStore store, bool deterministic_ids);

  const QuadStore& store() const { return store_; }
  QuadStore& store() { return store_; }
  IdMinter& minter() { return minter_; }
  bool deterministic() const { return minter_.deterministic(); }

  StatementUnit mint_statement_unit(const std::vector<Triple>& content,
                                    const std::vector<Iri>& unit_classes,
                                    const std::vector<std::pair<Iri, Term>>& meta_pairs = {});
  CompoundUnit mint_compound_unit(const std::vector<Iri>& members,
                                  const std::vector<Iri>& unit_classes,
                                  const std::vector<std::pair<Iri, Term>>& meta_pairs = {});

  // Statement unit: its content. Compound unit: union of the members'
  // assembled contents, transitively.
  std::vector<Quad> assemble_content(const Iri& unit) const;

  void set_dual_type(const Iri& unit, const Iri& extra_class,
                     const std::optional<Iri>& represents = std::nullopt);
  void annotate_method(const Iri& unit, const Iri& method);
  // Adds `unit predicate value` to the unit's meta graph.
  void annotate(const Iri& unit, const Iri& predicate, const Term& value);

  void declare_unit_class(const Iri& cls, const Iri& parent);
  bool is_known_unit_class(const Iri& cls) const;
  void add_label(const Iri& resource, const std::string& text);
  std::optional<std::string> label(const Iri& resource) const;
  // Label if present, IRI local name otherwise.
  std::string display_label(const Iri& resource) const;

  bool is_unit(const Iri& id) const;
  bool is_statement_unit(const Iri& id) const;
  bool is_compound_unit(const Iri& id) const;
  StatementUnit statement_unit(const Iri& id) const;
  CompoundUnit compound_unit(const Iri& id) const;
  SemanticUnit unit(const Iri& id) const;
  std::vector<Iri> unit_ids() const;
  std::vector<Iri> units_of_class(const Iri& cls) const;

  // Writes a unit reconstructed elsewhere (e.g. an imported nanopub).
  void insert_unit(const SemanticUnit& unit);

 private:
  std::vector<Iri> types_in_meta(const Iri& id) const;
  void require_unit(const Iri& id) const;
  void assemble_into(const Iri& unit, std::vector<Iri>& stack, std::vector<Quad>& out) const;

  QuadStore store_;
  IdMinter minter_;
};

}  // namespace su
