#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "su/semantic_units.hpp"

namespace su {

inline constexpr const char* kExporterVersion = "sucausal 0.1.0";

struct ExportOptions {
  std::optional<std::string> doi_prefix;  // namespaces nanopub ids
  bool deterministic = false;             // fixed timestamp
};

// Four named graphs: head, assertion, provenance, publication info.
struct Nanopub {
  Iri id;
  Iri head_graph;
  Iri assertion_graph;
  Iri provenance_graph;
  Iri pubinfo_graph;
  std::vector<Quad> head;
  std::vector<Quad> assertion;
  std::vector<Quad> provenance;
  std::vector<Quad> pubinfo;

  std::vector<Quad> quads() const;
};

Iri nanopub_id(const Iri& unit, const ExportOptions& opts);

// Assertion graph = the unit's content graph; provenance = its metadata.
Nanopub export_nanopub(const StatementUnit& unit, const ExportOptions& opts = {});

// Member nanopubs (recursively, depth first) followed by the nested one,
// whose assertion graph is empty and whose head lists the members.
std::vector<Nanopub> export_nested(const CompoundUnit& compound, const KnowledgeGraph& kg,
                                   const ExportOptions& opts = {});

std::vector<Nanopub> export_unit(const KnowledgeGraph& kg, const Iri& unit,
                                 const ExportOptions& opts = {});

std::string bundle_nquads(const std::vector<Nanopub>& nanopubs);
nlohmann::json bundle_index(const std::vector<Nanopub>& nanopubs);

// Units serialized by every head graph in `quads`, ordered by nanopub id.
// Throws MalformedHead.
std::vector<SemanticUnit> import_nanopub(const std::vector<Quad>& quads);

}  // namespace su
