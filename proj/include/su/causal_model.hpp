#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "su/semantic_units.hpp"
#include "su/statement_logic.hpp"

namespace su {

enum class Polarity { Positive, Negative, Unsigned };
enum class CausalMode { Correlative, Causal };
enum class CausalStrength { Necessary, Sufficient, NecessaryAndSufficient };

std::string_view polarity_name(Polarity p);

// Fixed predicate table; unknown predicates are Unsigned.
Polarity polarity_of(const Iri& predicate);

struct CausalVariableRef {
  Iri resource;                   // the ID resource used in the statement
  ResourceKind kind = ResourceKind::Instance;
  Iri variable_class;             // node identity in causal maps
  std::optional<Iri> unit_proxy;  // compound unit standing in for the variable
};

struct CausalStatement {
  Iri unit_id;
  CausalVariableRef source;
  Iri predicate;
  CausalVariableRef target;
  CausalMode mode = CausalMode::Causal;
  std::optional<CausalStrength> strength;
  StatementCategory category = StatementCategory::Universal;
};

// Reads the correlative/causal reading of a statement unit from the store.
CausalStatement causal_statement(const KnowledgeGraph& kg, const Iri& unit);

struct CausalEdge {
  Iri source;
  Iri target;
  Iri unit;
  Polarity polarity = Polarity::Unsigned;

  auto operator<=>(const CausalEdge&) const = default;
};

struct CausalNetwork {
  std::optional<Iri> id;                 // set once persisted as a compound unit
  std::vector<Iri> statements;           // member statement units, sorted
  std::set<Iri> variables;               // variable classes
  std::vector<CausalEdge> edges;         // sorted
  std::vector<CausalEdge> correlations;  // parallel correlative network
  std::vector<std::pair<Iri, Iri>> interpretations;  // (causal unit, correlation unit)
  // Resource substitutions applied when chaining (every-instance resource of
  // the later statement -> some-instance resource of the earlier one).
  std::map<Iri, Iri> substitutions;
};

// Combination rules for two universal statements chained first -> second.
bool composable(const CausalStatement& first, const CausalStatement& second);

// Three-node chain network; throws NotComposable.
CausalNetwork compose_chain(const CausalStatement& first, const CausalStatement& second);

// Union of the member contents with the chain substitutions applied.
std::vector<Triple> composite_content(const KnowledgeGraph& kg, const CausalNetwork& net);

// One network over all universal statements, nodes merged by variable class.
// Causal statements form the edges; correlative ones form the parallel
// network (or the main one when no causal statement is given).
CausalNetwork build_causal_map(const std::vector<CausalStatement>& statements);

// Mints the network as a causal network compound unit and records
// 'causal interpretation of' links on the causal members.
Iri persist_network(KnowledgeGraph& kg, CausalNetwork& net);

// Rebuilds the network behind a persisted causal map compound unit.
CausalNetwork load_causal_network(const KnowledgeGraph& kg, const Iri& map_id);

// Causal maps in the store (compound units typed as causal networks).
std::vector<Iri> causal_map_ids(const KnowledgeGraph& kg);

// Links two alternative maps of one referent system, with an optional
// assumption note on the first.
void mark_alternative(KnowledgeGraph& kg, const Iri& map_a, const Iri& map_b,
                      const std::optional<std::string>& assumption = std::nullopt);

struct AcyclicityResult {
  bool acyclic = true;
  std::optional<std::vector<Iri>> cycle;  // closed walk, first == last
};

AcyclicityResult check_acyclic(const CausalNetwork& net);

enum class JunctionKind { Chain, Fork, Collider };
std::string_view junction_kind_name(JunctionKind k);

struct JunctionUnit {
  std::optional<Iri> id;
  JunctionKind kind = JunctionKind::Chain;
  Iri v1, v2, v3;                      // v2 is the shared variable
  std::array<Iri, 2> member_edges;     // statement unit ids

  auto operator<=>(const JunctionUnit&) const = default;
};

// One junction per unordered pair of distinct edges sharing exactly one
// variable. Chains are oriented v1 -> v2 -> v3; forks and colliders order
// v1 < v3. Throws CyclicGraph on cyclic networks.
std::vector<JunctionUnit> classify_junctions(const CausalNetwork& net);
void persist_junctions(KnowledgeGraph& kg, std::vector<JunctionUnit>& junctions);

// Metadata requirements a statement must meet to stay in a contextual
// perspective (taxon, ecosystem type, evidence source, ...).
struct ContextFilter {
  std::vector<std::pair<Iri, Term>> requirements;
};

ContextFilter context_filter_from_json(const nlohmann::json& j);

struct PerspectivePath {
  std::vector<Iri> nodes;     // cause ... effect
  std::vector<Iri> units;     // one statement per hop
  std::vector<bool> forward;  // hop i points from nodes[i] to nodes[i+1]
  bool causal = false;        // every hop forward
};

enum class PerspectiveKind { Causal, Contextual, BackDoor, FrontDoor, InstrumentalVariable };
std::string_view perspective_kind_name(PerspectiveKind k);
const Iri& perspective_class(PerspectiveKind k);

struct PerspectiveUnit {
  std::optional<Iri> id;
  PerspectiveKind kind = PerspectiveKind::Causal;
  Iri focus_cause;
  Iri focus_effect;
  std::vector<Iri> member_statements;  // sorted
  std::vector<PerspectivePath> paths;
  std::vector<std::pair<Iri, Term>> annotations;
};

// All simple paths (any edge direction) between the focus pair; with a
// context, statements failing the filter are dropped first.
PerspectiveUnit extract_perspective(const KnowledgeGraph& kg, const CausalNetwork& net,
                                    const Iri& cause, const Iri& effect,
                                    const std::optional<ContextFilter>& context = std::nullopt);

// Mints the perspective as a compound unit. Perspectives without members
// stay unpersisted.
std::optional<Iri> persist_perspective(KnowledgeGraph& kg, PerspectiveUnit& perspective);

void pin_annotation(KnowledgeGraph& kg, const Iri& unit, const Iri& predicate, const Term& value);

// Resolves a user-supplied variable name against the network nodes: exact
// IRI, local name, or rdfs:label.
Iri resolve_variable(const KnowledgeGraph& kg, const CausalNetwork& net, const std::string& name);

std::string path_text(const KnowledgeGraph& kg, const PerspectivePath& path);

nlohmann::json network_to_json(const CausalNetwork& net);
nlohmann::json junction_to_json(const JunctionUnit& j);
nlohmann::json perspective_to_json(const KnowledgeGraph& kg, const PerspectiveUnit& p);

}  // namespace su
