#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "su/semantic_units.hpp"
#include "su/shapes.hpp"
#include "su/vocab.hpp"

// Knowledge-graph fixtures built from the worked examples: the invasion
// biology causal network, the soil sample measurement and item unit, and
// the wetland class axiom with its token statement.
namespace fx {

using su::Iri;

inline const std::string kEx = "http://example.org/eco/";
inline Iri ex(const std::string& local) { return Iri(kEx + local); }

// Variable classes of the invasion network.
inline const Iri kCS = ex("CS");    // competitive suppression of resident on non-native species
inline const Iri kIS = ex("IS");    // invasion success
inline const Iri kND = ex("ND");    // niche differentiation between non-native and native species
inline const Iri kFIT = ex("FIT");  // non-native species fit to the habitat

inline const Iri kWetlandArea = su::vocab::obo("ENVO_00000043");
inline const Iri kWetlandEcosystem = su::vocab::obo("ENVO_01001209");
inline const Iri kMassDensity = su::vocab::obo("PATO_0001019");
inline const Iri kGramPerCc = su::vocab::obo("UO_0000084");

inline const Iri kMeasurementShape = ex("shape/measurement");
inline const Iri kUniversalCausalShape = ex("shape/universal-causal");

struct Invasion {
  Iri a;  // CS -> IS
  Iri b;  // ND -> CS
  Iri c;  // FIT -> IS
  Iri d;  // ND -> FIT
};

void add_invasion_labels(su::KnowledgeGraph& kg);

// Universal causal statement unit: every-instance of `from` `predicate`
// some-instance of `to`.
su::StatementUnit universal_causal(su::KnowledgeGraph& kg, const std::string& tag, const Iri& from,
                                   const Iri& predicate, const Iri& to);

// Statements A-D with labels.
Invasion add_invasion_statements(su::KnowledgeGraph& kg);

// Token causal statement: an instance of CS negatively regulates an
// instance of IS, optionally with a different predicate.
su::StatementUnit add_token_causal(su::KnowledgeGraph& kg, const Iri& predicate);

struct Wetland {
  Iri universal;    // every wetland area overlaps some wetland ecosystem
  Iri assertional;  // wetlandArea_123 overlaps wetland ecosystem_456
};
Wetland add_wetland(su::KnowledgeGraph& kg, const Iri& token_predicate = su::vocab::kOverlaps);

struct Soil {
  Iri density;
  Iri ph;
  Iri colour;
  Iri item;  // compound of the three
};
Soil add_soil_sample(su::KnowledgeGraph& kg);

su::Shape measurement_shape();
su::Shape universal_causal_shape();
su::LabelTemplate measurement_template();
nlohmann::json measurement_template_json();

// Every fixture above in one deterministic graph.
su::KnowledgeGraph golden_graph();

}  // namespace fx
