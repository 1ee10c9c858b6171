#include "fixtures.hpp"

#include "su/vocab.hpp"

namespace fx {

using su::Triple;
using su::vocab::kType;
namespace v = su::vocab;

void add_invasion_labels(su::KnowledgeGraph& kg) {
  kg.add_label(kCS, "competitive suppression of resident species on non-native species");
  kg.add_label(kIS, "invasion success");
  kg.add_label(kND, "niche differentiation between non-native and native species");
  kg.add_label(kFIT, "non-native species fit to the habitat");
  kg.add_label(v::kNegativelyRegulatesCharacteristic, "negatively regulates characteristic");
  kg.add_label(v::kUpstreamNegativeEffect, "causally upstream of or within, negative effect");
  kg.add_label(v::kCausallyInfluencesPositive, "causally influences, positive effect");
}

su::StatementUnit universal_causal(su::KnowledgeGraph& kg, const std::string& tag, const Iri& from,
                                   const Iri& predicate, const Iri& to) {
  Iri s = ex(tag + "/every-" + su::local_name(from));
  Iri o = ex(tag + "/some-" + su::local_name(to));
  std::vector<Triple> content = {{s, kType, from},
                                 {s, kType, v::kEveryInstanceResource},
                                 {s, predicate, o},
                                 {o, kType, to},
                                 {o, kType, v::kSomeInstanceResource}};
  return kg.mint_statement_unit(content, {v::kCausalStatementUnit, v::kUniversalStatementUnit},
                                {{v::kConformsToShape, kUniversalCausalShape}});
}

Invasion add_invasion_statements(su::KnowledgeGraph& kg) {
  add_invasion_labels(kg);
  Invasion inv;
  inv.a = universal_causal(kg, "A", kCS, v::kNegativelyRegulatesCharacteristic, kIS).id;
  inv.b = universal_causal(kg, "B", kND, v::kUpstreamNegativeEffect, kCS).id;
  inv.c = universal_causal(kg, "C", kFIT, v::kCausallyInfluencesPositive, kIS).id;
  inv.d = universal_causal(kg, "D", kND, v::kNegativelyRegulatesCharacteristic, kFIT).id;
  return inv;
}

su::StatementUnit add_token_causal(su::KnowledgeGraph& kg, const Iri& predicate) {
  Iri s = ex("cs_plot7");
  Iri o = ex("is_plot7");
  std::vector<Triple> content = {{s, kType, kCS}, {s, predicate, o}, {o, kType, kIS}};
  return kg.mint_statement_unit(content, {v::kCausalStatementUnit, v::kAssertionalStatementUnit});
}

Wetland add_wetland(su::KnowledgeGraph& kg, const Iri& token_predicate) {
  kg.add_label(kWetlandArea, "wetland area");
  kg.add_label(kWetlandEcosystem, "wetland ecosystem");
  kg.add_label(v::kOverlaps, "overlaps");
  Iri every = ex("u6/every-wetlandArea");
  Iri some = ex("u6/some-wetlandEcosystem");
  auto universal = kg.mint_statement_unit(
      {{every, kType, kWetlandArea},
       {every, kType, v::kEveryInstanceResource},
       {every, v::kOverlaps, some},
       {some, kType, kWetlandEcosystem},
       {some, kType, v::kSomeInstanceResource}},
      {v::kUniversalStatementUnit, v::kClassAxiomUnit}, {{v::kClassAxiomOf, kWetlandArea}});
  Iri area = ex("wetlandArea_123");
  Iri eco = ex("wetlandEcosystem_456");
  auto token = kg.mint_statement_unit(
      {{area, kType, kWetlandArea}, {area, token_predicate, eco}, {eco, kType, kWetlandEcosystem}},
      {v::kAssertionalStatementUnit});
  return {universal.id, token.id};
}

namespace {

su::StatementUnit soil_measurement(su::KnowledgeGraph& kg, const std::string& tag, const Iri& quality_class,
                                   const std::string& value, const Iri& unit_label) {
  Iri sample = ex("soilSampleX");
  Iri quality = ex(tag + "_X");
  Iri spec = ex(tag + "_X/value");
  std::vector<Triple> content = {
      {sample, v::kHasQuality, quality},
      {quality, kType, quality_class},
      {quality, v::kHasValueSpecification, spec},
      {spec, v::kHasSpecifiedNumericValue, su::typed_literal(value, v::xsd("decimal"))},
      {spec, v::kHasMeasurementUnitLabel, unit_label}};
  return kg.mint_statement_unit(content, {v::kMeasurementStatementUnit, v::kAssertionalStatementUnit},
                                {{v::kConformsToShape, kMeasurementShape}});
}

}  // namespace

Soil add_soil_sample(su::KnowledgeGraph& kg) {
  kg.add_label(ex("soilSampleX"), "soil sample X");
  kg.add_label(kMassDensity, "density");
  kg.add_label(kGramPerCc, "g/cm³");
  kg.add_label(v::obo("PATO_0001842"), "acidity");
  kg.add_label(v::obo("UO_0000196"), "pH");
  kg.add_label(v::obo("PATO_0000014"), "colour value");
  kg.add_label(v::obo("UO_0000186"), "Munsell value");
  Soil soil;
  soil.density = soil_measurement(kg, "density", kMassDensity, "0.57", kGramPerCc).id;
  soil.ph = soil_measurement(kg, "acidity", v::obo("PATO_0001842"), "6.2", v::obo("UO_0000196")).id;
  soil.colour = soil_measurement(kg, "colour", v::obo("PATO_0000014"), "4", v::obo("UO_0000186")).id;
  soil.item = kg.mint_compound_unit({soil.density, soil.ph, soil.colour}, {v::kMaterialEntityItemUnit}).id;
  kg.add_label(soil.item, "soil sample X item unit");
  return soil;
}

su::Shape measurement_shape() {
  su::Shape s;
  s.shape_id = kMeasurementShape;
  s.subject_kind = su::ResourceKind::Instance;
  s.predicate_whitelist = {v::kHasQuality};
  s.object_kind = su::ResourceKind::Instance;
  return s;
}

su::Shape universal_causal_shape() {
  su::Shape s;
  s.shape_id = kUniversalCausalShape;
  s.subject_kind = su::ResourceKind::EveryInstance;
  s.predicate_whitelist = {v::kNegativelyRegulatesCharacteristic, v::kUpstreamNegativeEffect,
                           v::kCausallyInfluencesPositive};
  s.object_kind = su::ResourceKind::SomeInstance;
  s.required_meta_keys = {v::kConformsToShape};
  return s;
}

nlohmann::json measurement_template_json() {
  return {{"shape_id", kMeasurementShape.value},
          {"pattern", "{subject} has a {quality} of {value} {unit}"},
          {"paths",
           {{"quality", {v::kHasQuality.value, kType.value}},
            {"value", {v::kHasQuality.value, v::kHasValueSpecification.value, v::kHasSpecifiedNumericValue.value}},
            {"unit", {v::kHasQuality.value, v::kHasValueSpecification.value, v::kHasMeasurementUnitLabel.value}}}}};
}

su::LabelTemplate measurement_template() { return su::label_template_from_json(measurement_template_json()); }

su::KnowledgeGraph golden_graph() {
  su::KnowledgeGraph kg(true);
  add_invasion_statements(kg);
  add_token_causal(kg, v::kNegativelyRegulatesCharacteristic);
  add_wetland(kg);
  add_soil_sample(kg);
  return kg;
}

}  // namespace fx
