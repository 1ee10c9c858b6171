#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "su/causal_model.hpp"
#include "su/vocab.hpp"
#include "testing.hpp"

using namespace su;
namespace v = su::vocab;

namespace {

struct Fig9 {
  KnowledgeGraph kg{true};
  fx::Invasion inv;
  CausalNetwork net;

  Fig9() {
    inv = fx::add_invasion_statements(kg);
    std::vector<CausalStatement> st;
    for (const auto& id : {inv.a, inv.b, inv.c, inv.d}) st.push_back(causal_statement(kg, id));
    net = build_causal_map(st);
    persist_network(kg, net);
  }
};

}  // namespace

TEST_CASE("polarity table") {
  CHECK(polarity_of(v::kNegativelyRegulatesCharacteristic) == Polarity::Negative);
  CHECK(polarity_of(v::kNegativelyCorrelatedWith) == Polarity::Negative);
  CHECK(polarity_of(v::kUpstreamNegativeEffect) == Polarity::Negative);
  CHECK(polarity_of(v::kCausallyInfluencesPositive) == Polarity::Positive);
  CHECK(polarity_of(v::kCorrelatedWith) == Polarity::Unsigned);
}

TEST_CASE("causal statement reading") {
  KnowledgeGraph kg(true);
  auto inv = fx::add_invasion_statements(kg);
  auto a = causal_statement(kg, inv.a);
  CHECK(a.source.variable_class == fx::kCS);
  CHECK(a.source.kind == ResourceKind::EveryInstance);
  CHECK(a.target.variable_class == fx::kIS);
  CHECK(a.target.kind == ResourceKind::SomeInstance);
  CHECK(a.mode == CausalMode::Causal);
  CHECK(a.category == StatementCategory::Universal);
}

TEST_CASE("composition rules") {
  KnowledgeGraph kg(true);
  auto inv = fx::add_invasion_statements(kg);
  auto a = causal_statement(kg, inv.a);
  auto b = causal_statement(kg, inv.b);
  auto c = causal_statement(kg, inv.c);
  CHECK(composable(b, a));
  CHECK_FALSE(composable(a, b));
  CHECK_FALSE(composable(c, a));
  CHECK(fx::error_of([&] { compose_chain(a, c); }) == ErrorCode::NotComposable);

  auto chain = compose_chain(b, a);
  CHECK(chain.variables == std::set<Iri>{fx::kND, fx::kCS, fx::kIS});
  CHECK(chain.edges.size() == 2);
  REQUIRE(chain.substitutions.size() == 1);
  CHECK(chain.substitutions.begin()->first == a.source.resource);
  CHECK(chain.substitutions.begin()->second == b.target.resource);

  auto content = composite_content(kg, chain);
  bool replaced = std::none_of(content.begin(), content.end(), [&](const Triple& t) {
    return t.s == a.source.resource || (t.o.is_iri() && t.o.iri() == a.source.resource);
  });
  CHECK(replaced);
  bool linked = std::any_of(content.begin(), content.end(), [&](const Triple& t) {
    return t.s == b.target.resource && t.p == v::kNegativelyRegulatesCharacteristic;
  });
  CHECK(linked);

  // second statement with a some-instance source breaks rule 2
  Iri s = fx::ex("X/some-CS");
  Iri o = fx::ex("X/some-IS");
  auto contingent = kg.mint_statement_unit({{s, v::kType, fx::kCS},
                                            {s, v::kType, v::kSomeInstanceResource},
                                            {s, v::kNegativelyRegulatesCharacteristic, o},
                                            {o, v::kType, fx::kIS},
                                            {o, v::kType, v::kSomeInstanceResource}},
                                           {v::kCausalStatementUnit, v::kContingentStatementUnit});
  CHECK_FALSE(composable(b, causal_statement(kg, contingent.id)));
}

TEST_CASE("invasion map") {
  Fig9 f;
  CHECK(f.net.variables.size() == 4);
  CHECK(f.net.edges.size() == 4);
  REQUIRE(f.net.id);
  CHECK(check_acyclic(f.net).acyclic);
  auto compound = f.kg.compound_unit(*f.net.id);
  CHECK(compound.has_class(v::kCausalNetworkCompoundUnit));
  CHECK(compound.members.size() == 4);
  CHECK(causal_map_ids(f.kg) == std::vector<Iri>{*f.net.id});

  auto loaded = load_causal_network(f.kg, *f.net.id);
  CHECK(loaded.edges == f.net.edges);
  CHECK(loaded.variables == f.net.variables);
}

TEST_CASE("universal-only maps") {
  KnowledgeGraph kg(true);
  auto t = fx::add_token_causal(kg, v::kNegativelyRegulatesCharacteristic);
  CHECK(fx::error_of([&] { build_causal_map({causal_statement(kg, t.id)}); }) == ErrorCode::NotUniversal);
}

TEST_CASE("cycles are flagged with a witness") {
  KnowledgeGraph kg(true);
  fx::add_invasion_labels(kg);
  auto x = fx::universal_causal(kg, "X", fx::kCS, v::kNegativelyRegulatesCharacteristic, fx::kIS);
  auto y = fx::universal_causal(kg, "Y", fx::kIS, v::kCausallyInfluencesPositive, fx::kCS);
  auto net = build_causal_map({causal_statement(kg, x.id), causal_statement(kg, y.id)});
  auto r = check_acyclic(net);
  CHECK_FALSE(r.acyclic);
  REQUIRE(r.cycle);
  CHECK(r.cycle->front() == r.cycle->back());
  CHECK(r.cycle->size() == 3);
  CHECK(fx::error_of([&] { classify_junctions(net); }) == ErrorCode::CyclicGraph);
  CHECK(check_acyclic(CausalNetwork{}).acyclic);
}

TEST_CASE("junctions of the invasion map") {
  Fig9 f;
  auto js = classify_junctions(f.net);
  REQUIRE(js.size() == 4);
  auto has = [&](JunctionKind k, const Iri& a, const Iri& b, const Iri& c) {
    return std::any_of(js.begin(), js.end(),
                       [&](const JunctionUnit& j) { return j.kind == k && j.v1 == a && j.v2 == b && j.v3 == c; });
  };
  CHECK(has(JunctionKind::Chain, fx::kND, fx::kFIT, fx::kIS));
  CHECK(has(JunctionKind::Chain, fx::kND, fx::kCS, fx::kIS));
  CHECK(has(JunctionKind::Fork, fx::kCS, fx::kND, fx::kFIT));
  CHECK(has(JunctionKind::Collider, fx::kCS, fx::kIS, fx::kFIT));

  persist_junctions(f.kg, js);
  for (const auto& j : js) {
    REQUIRE(j.id);
    auto u = f.kg.compound_unit(*j.id);
    CHECK(u.members.size() == 2);
    CHECK(f.kg.store().contains({*j.id, v::kJunctionMiddle, j.v2, meta_graph_of(*j.id)}));
  }
}

TEST_CASE("perspectives") {
  Fig9 f;
  auto p = extract_perspective(f.kg, f.net, fx::kCS, fx::kIS);
  CHECK(p.kind == PerspectiveKind::Causal);
  REQUIRE(p.paths.size() == 2);
  auto direct = std::find_if(p.paths.begin(), p.paths.end(), [](const PerspectivePath& x) { return x.causal; });
  REQUIRE(direct != p.paths.end());
  CHECK(direct->nodes == std::vector<Iri>{fx::kCS, fx::kIS});
  auto biasing = std::find_if(p.paths.begin(), p.paths.end(), [](const PerspectivePath& x) { return !x.causal; });
  REQUIRE(biasing != p.paths.end());
  CHECK(biasing->nodes == std::vector<Iri>{fx::kCS, fx::kND, fx::kFIT, fx::kIS});
  CHECK(p.member_statements.size() == 4);

  auto id = persist_perspective(f.kg, p);
  REQUIRE(id);
  CHECK(f.kg.compound_unit(*id).has_class(v::kCausalPerspectiveUnit));
  CHECK(f.kg.store().contains({*id, v::kFocusCause, fx::kCS, meta_graph_of(*id)}));
  CHECK(f.kg.store().objects(*id, v::kHasPath).size() == 2);

  CHECK(fx::error_of([&] { extract_perspective(f.kg, f.net, fx::ex("Nope"), fx::kIS); }) ==
        ErrorCode::UnknownVariable);
}

TEST_CASE("contextual perspective drops statements failing the filter") {
  Fig9 f;
  Iri taxon = fx::ex("taxon/Impatiens");
  for (const auto& id : {f.inv.a, f.inv.b, f.inv.d}) f.kg.annotate(id, v::kIsAbout, taxon);
  ContextFilter filter = context_filter_from_json(nlohmann::json::array({{{"predicate", v::kIsAbout.value},
                                                                          {"iri", taxon.value}}}));
  auto p = extract_perspective(f.kg, f.net, fx::kCS, fx::kIS, filter);
  CHECK(p.kind == PerspectiveKind::Contextual);
  CHECK(p.paths.size() == 1);
  CHECK(std::find(p.member_statements.begin(), p.member_statements.end(), f.inv.c) == p.member_statements.end());
  auto id = persist_perspective(f.kg, p);
  REQUIRE(id);
  CHECK(f.kg.compound_unit(*id).has_class(v::kContextualCausalPerspectiveUnit));
}

TEST_CASE("variable resolution") {
  Fig9 f;
  CHECK(resolve_variable(f.kg, f.net, "CS") == fx::kCS);
  CHECK(resolve_variable(f.kg, f.net, fx::kFIT.value) == fx::kFIT);
  CHECK(resolve_variable(f.kg, f.net, "invasion success") == fx::kIS);
  CHECK(fx::error_of([&] { resolve_variable(f.kg, f.net, "nothing"); }) == ErrorCode::UnknownVariable);
}

TEST_CASE("alternative maps and pinned annotations") {
  Fig9 f;
  KnowledgeGraph& kg = f.kg;
  auto y = fx::universal_causal(kg, "Alt", fx::kCS, v::kNegativelyRegulatesCharacteristic, fx::kIS);
  auto alt = build_causal_map({causal_statement(kg, y.id)});
  auto alt_id = persist_network(kg, alt);
  mark_alternative(kg, *f.net.id, alt_id, std::string("assumes no habitat filtering"));
  CHECK(kg.store().contains({*f.net.id, v::kAlternativeTo, alt_id, meta_graph_of(*f.net.id)}));
  pin_annotation(kg, f.inv.a, v::kIsAbout, fx::ex("doi/10.1000/xyz"));
  CHECK(kg.store().objects(f.inv.a, v::kIsAbout).size() == 1);
}
