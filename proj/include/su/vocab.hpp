#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "su/rdf.hpp"

// Built-in vocabulary. Terms with published identifiers use their OBO /
// W3C IRIs; properties and classes without published identifiers are minted
// under the local `urn:su:vocab:` namespace.
namespace su::vocab {

inline Iri iri(std::string_view v) { return Iri(std::string(v)); }

inline const std::string kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline const std::string kXsd = "http://www.w3.org/2001/XMLSchema#";
inline const std::string kOwl = "http://www.w3.org/2002/07/owl#";
inline const std::string kObo = "http://purl.obolibrary.org/obo/";
inline const std::string kProv = "http://www.w3.org/ns/prov#";
inline const std::string kNp = "http://www.nanopub.org/nschema#";
inline const std::string kDct = "http://purl.org/dc/terms/";
inline const std::string kSu = "urn:su:vocab:";

inline Iri rdf(std::string_view local) { return iri(kRdf + std::string(local)); }
inline Iri rdfs(std::string_view local) { return iri(kRdfs + std::string(local)); }
inline Iri xsd(std::string_view local) { return iri(kXsd + std::string(local)); }
inline Iri obo(std::string_view local) { return iri(kObo + std::string(local)); }
inline Iri su(std::string_view local) { return iri(kSu + std::string(local)); }

// rdf:_n container membership property (1-based), used for member order.
inline Iri rdf_member(std::size_t index1) { return rdf("_" + std::to_string(index1)); }
bool is_rdf_member(const Iri& p, std::size_t& index1);

inline const Iri kType = rdf("type");
inline const Iri kLabel = rdfs("label");
inline const Iri kSubClassOf = rdfs("subClassOf");
inline const Iri kOwlClass = iri(kOwl + "Class");

// Relations cited with published identifiers.
inline const Iri kCorrelatedWith = obo("RO_0002610");
inline const Iri kNegativelyCorrelatedWith = obo("RO_0017004");
inline const Iri kNegativelyRegulatesCharacteristic = obo("RO_0019002");
inline const Iri kUpstreamNegativeEffect = obo("RO_0004046");
inline const Iri kOverlaps = obo("RO_0002131");
inline const Iri kHasDisposition = obo("RO_0000091");
inline const Iri kHasQuality = obo("RO_0000086");
inline const Iri kParticipatesIn = obo("RO_0000056");
inline const Iri kHasPart = obo("BFO_0000051");
inline const Iri kIsAbout = obo("IAO_0000136");
inline const Iri kHasValueSpecification = obo("OBI_0001938");
inline const Iri kHasSpecifiedNumericValue = obo("OBI_0001937");
inline const Iri kHasMeasurementUnitLabel = obo("IAO_0000039");
// 'causally influences, positive effect' has no identifier in the source
// vocabulary; minted locally.
inline const Iri kCausallyInfluencesPositive = su("causallyInfluencesPositiveEffect");

// Quantifier resource classes.
inline const Iri kSomeInstanceResource = su("SomeInstanceResource");
inline const Iri kEveryInstanceResource = su("EveryInstanceResource");
inline const Iri kMostInstancesResource = su("MostInstancesResource");

// Unit classes.
inline const Iri kSemanticUnit = su("SemanticUnit");
inline const Iri kStatementUnit = su("StatementUnit");
inline const Iri kCompoundUnit = su("CompoundUnit");
inline const Iri kAssertionalStatementUnit = su("AssertionalStatementUnit");
inline const Iri kContingentStatementUnit = su("ContingentStatementUnit");
inline const Iri kPrototypicalStatementUnit = su("PrototypicalStatementUnit");
inline const Iri kUniversalStatementUnit = su("UniversalStatementUnit");
inline const Iri kMeasurementStatementUnit = su("MeasurementStatementUnit");
inline const Iri kCorrelationStatementUnit = su("CorrelationStatementUnit");
inline const Iri kCausalStatementUnit = su("CausalStatementUnit");
inline const Iri kClassAxiomUnit = su("ClassAxiomUnit");
inline const Iri kCounterfactualStatementUnit = su("CounterfactualStatementUnit");
inline const Iri kNecessaryCausalStatementUnit = su("NecessaryUniversalCausalStatementUnit");
inline const Iri kSufficientCausalStatementUnit = su("SufficientUniversalCausalStatementUnit");
inline const Iri kNecessaryAndSufficientCausalStatementUnit =
    su("NecessaryAndSufficientUniversalCausalStatementUnit");
inline const Iri kMaterialEntityItemUnit = su("MaterialEntityItemUnit");
inline const Iri kOrganismDescriptionCompoundUnit = su("OrganismDescriptionCompoundUnit");
inline const Iri kCausalVariableCompoundUnit = su("CausalVariableCompoundUnit");
inline const Iri kCausalNetworkCompoundUnit = su("CausalNetworkCompoundUnit");
inline const Iri kChainJunctionUnit = su("ChainJunctionUnit");
inline const Iri kForkJunctionUnit = su("ForkJunctionUnit");
inline const Iri kColliderJunctionUnit = su("ColliderJunctionUnit");
inline const Iri kCausalPerspectiveUnit = su("CausalPerspectiveUnit");
inline const Iri kContextualCausalPerspectiveUnit = su("ContextualCausalPerspectiveUnit");
inline const Iri kBackDoorPerspectiveUnit = su("BackDoorCausalPerspectiveUnit");
inline const Iri kFrontDoorPerspectiveUnit = su("FrontDoorCausalPerspectiveUnit");
inline const Iri kInstrumentalVariablePerspectiveUnit =
    su("InstrumentalVariableCausalPerspectiveUnit");
inline const Iri kPotentialOutcomeCompoundUnit = su("PotentialOutcomeCompoundUnit");

// Properties minted locally.
inline const Iri kHasAssociatedUnit = su("hasAssociatedUnit");
inline const Iri kSatisfies = su("satisfies");
inline const Iri kContradicts = su("contradicts");
inline const Iri kClassAxiomOf = su("classAxiomOf");
inline const Iri kCausalInterpretationOf = su("causalInterpretationOf");
inline const Iri kHasAssociatedMeasurement = su("hasAssociatedMeasurement");
inline const Iri kMeasuredApplyingMethod = su("measuredOrEstimatedApplyingMethod");
inline const Iri kDerivedByDoCalculusFrom = su("derivedByDoCalculusFrom");
inline const Iri kDerivedBy = su("derivedBy");
inline const Iri kDerivedFrom = su("derivedFrom");
inline const Iri kHasLogicalFramework = su("hasLogicalFramework");
inline const Iri kConformsToShape = su("conformsToShape");
inline const Iri kAlternativeTo = su("alternativeTo");
inline const Iri kFocusCause = su("focusCause");
inline const Iri kFocusEffect = su("focusEffect");
inline const Iri kJunctionFirst = su("junctionFirst");
inline const Iri kJunctionMiddle = su("junctionMiddle");
inline const Iri kJunctionLast = su("junctionLast");
inline const Iri kHasPath = su("hasPath");
inline const Iri kCausalPath = su("CausalPath");
inline const Iri kBiasingPath = su("BiasingPath");
inline const Iri kHasAdjustmentSet = su("hasAdjustmentSet");
inline const Iri kHasMediatorSet = su("hasMediatorSet");
inline const Iri kHasInstrument = su("hasInstrument");
inline const Iri kHasEstimand = su("hasEstimand");
inline const Iri kIdentificationStrategy = su("identificationStrategy");
inline const Iri kIntervention = su("intervention");
inline const Iri kDerivationMethod = su("derivationMethod");
inline const Iri kUncertainty = su("uncertainty");
inline const Iri kCounterfactualUnder = su("counterfactualUnder");
inline const Iri kHasOutcomeValue = su("hasOutcomeValue");
inline const Iri kHasProbability = su("hasProbability");
inline const Iri kOutcomeVariable = su("outcomeVariable");
inline const Iri kContextRequirement = su("contextRequirement");

// Logical frameworks.
inline const Iri kDescriptionLogics = su("DescriptionLogics");
inline const Iri kFirstOrderLogic = su("FirstOrderLogic");

// Entailment rules applied by derive_entailed.
inline const Iri kRuleAssertionalToContingent = su("rule/assertional-entails-contingent");
inline const Iri kRulePrototypicalToContingent = su("rule/prototypical-entails-contingent");
inline const Iri kRuleUniversalEntailment = su("rule/universal-entails-prototypical-and-contingent");

// Graph holding labels and class declarations that belong to no unit.
inline const Iri kVocabularyGraph = su("graph");

// Nanopublication schema and provenance terms.
inline const Iri kNanopublication = iri(kNp + "Nanopublication");
inline const Iri kHasAssertion = iri(kNp + "hasAssertion");
inline const Iri kHasProvenance = iri(kNp + "hasProvenance");
inline const Iri kHasPublicationInfo = iri(kNp + "hasPublicationInfo");
inline const Iri kHasMemberNanopub = su("hasMemberNanopublication");
inline const Iri kSerializationOf = su("serializationOf");
inline const Iri kExporterVersion = su("exporterVersion");
inline const Iri kWasDerivedFrom = iri(kProv + "wasDerivedFrom");
inline const Iri kCreated = iri(kDct + "created");
inline const Iri kLicense = iri(kDct + "license");
inline const Iri kCcBy4 = iri("https://creativecommons.org/licenses/by/4.0/");

// All unit classes known without declaration.
const std::vector<Iri>& builtin_unit_classes();

}  // namespace su::vocab
