#include "su/vocab.hpp"

#include <charconv>

namespace su::vocab {

bool is_rdf_member(const Iri& p, std::size_t& index1) {
  const std::string prefix = kRdf + "_";
  if (p.value.size() <= prefix.size() || p.value.compare(0, prefix.size(), prefix) != 0) {
    return false;
  }
  const char* first = p.value.data() + prefix.size();
  const char* last = p.value.data() + p.value.size();
  auto [ptr, ec] = std::from_chars(first, last, index1);
  return ec == std::errc() && ptr == last && index1 > 0;
}

const std::vector<Iri>& builtin_unit_classes() {
  static const std::vector<Iri> classes = {
      kSemanticUnit,
      kStatementUnit,
      kCompoundUnit,
      kAssertionalStatementUnit,
      kContingentStatementUnit,
      kPrototypicalStatementUnit,
      kUniversalStatementUnit,
      kMeasurementStatementUnit,
      kCorrelationStatementUnit,
      kCausalStatementUnit,
      kClassAxiomUnit,
      kCounterfactualStatementUnit,
      kNecessaryCausalStatementUnit,
      kSufficientCausalStatementUnit,
      kNecessaryAndSufficientCausalStatementUnit,
      kMaterialEntityItemUnit,
      kOrganismDescriptionCompoundUnit,
      kCausalVariableCompoundUnit,
      kCausalNetworkCompoundUnit,
      kChainJunctionUnit,
      kForkJunctionUnit,
      kColliderJunctionUnit,
      kCausalPerspectiveUnit,
      kContextualCausalPerspectiveUnit,
      kBackDoorPerspectiveUnit,
      kFrontDoorPerspectiveUnit,
      kInstrumentalVariablePerspectiveUnit,
      kPotentialOutcomeCompoundUnit,
  };
  return classes;
}

}  // namespace su::vocab
