#pragma once

#include <string_view>
#include <vector>

#include "su/semantic_units.hpp"

namespace su {

// Ordered by quantifier strength for the universal branch:
// Universal > Prototypical > Contingent. Assertional sits beside that chain
// and entails only Contingent.
enum class StatementCategory { Assertional, Contingent, Prototypical, Universal };

std::string_view category_name(StatementCategory c);
const Iri& category_class(StatementCategory c);

// Category from the quantifier kinds in the primary triple. Counterfactual
// statement units are a contingent subtype and categorize as Contingent.
StatementCategory categorize(const StatementUnit& unit, const QuadStore* store = nullptr);

// Mints the weaker statement units entailed by `unit` into `kg`:
// Assertional -> [Contingent]; Prototypical -> [Contingent];
// Universal -> [Prototypical, Contingent]; Contingent -> [].
std::vector<StatementUnit> derive_entailed(KnowledgeGraph& kg, const StatementUnit& unit);

// Does the assertional (token) unit instantiate the universal (type) one?
bool check_satisfies(const StatementUnit& assertional, const StatementUnit& universal,
                     const QuadStore* store = nullptr);

// Adds `assertional su:satisfies universal` to the assertional meta graph.
// Throws SatisfactionFails when check_satisfies is false.
void link_satisfies(KnowledgeGraph& kg, const Iri& assertional, const Iri& universal);

struct Evidence {
  std::vector<Iri> supporting;
  std::vector<Iri> contradicting;
};

Evidence evidence_for(const Iri& universal, const QuadStore& store);

}  // namespace su
