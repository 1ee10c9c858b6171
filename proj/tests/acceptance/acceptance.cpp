#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <httplib.h>
#include <unistd.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "su/cli.hpp"
#include "su/fdo_io.hpp"
#include "su/http.hpp"
#include "su/service.hpp"
#include "su/statement_logic.hpp"
#include "su/vocab.hpp"
#include "testing.hpp"

using namespace su;
using nlohmann::json;
namespace fs = std::filesystem;
namespace v = su::vocab;

namespace {

constexpr double kExact = 1e-12;
constexpr double kIdentity = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Counts checks of one criterion and keeps the first mismatch.
struct Tally {
  long checks = 0;
  long failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what;
  }
  Outcome outcome(const std::string& summary) const {
    if (failures == 0) return {true, summary};
    return {false, summary + "; " + std::to_string(failures) + " failed, first: " + first};
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string local(const std::string& iri) { return iri.substr(iri.find_last_of("/#") + 1); }

struct TempDir {
  fs::path dir;
  explicit TempDir(const std::string& tag) {
    dir = fs::temp_directory_path() / ("su_accept_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string store() const { return (dir / "store.nq").string(); }
};

WorkspaceConfig config_for(const TempDir& ws) {
  WorkspaceConfig cfg;
  cfg.store_path = ws.store();
  cfg.deterministic_ids = true;
  return cfg;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::vector<bool> as_flags(const oracle::Graph& g, const VarSet& vars) {
  std::vector<bool> z(g.n(), false);
  for (const auto& name : vars) z[g.id(name)] = true;
  return z;
}

// Every assignment to `vars` in odometer order.
std::vector<Assignment> assignments(const DiscreteScm& scm, const std::vector<std::string>& vars) {
  std::vector<Assignment> out{{}};
  for (const auto& var : vars) {
    std::vector<Assignment> next;
    for (const auto& a : out) {
      for (const auto& value : scm.variable(var).domain) {
        auto b = a;
        b[var] = value;
        next.push_back(b);
      }
    }
    out = next;
  }
  return out;
}

std::string show(const Assignment& a) {
  std::string s;
  for (const auto& [k, val] : a) s += (s.empty() ? "" : ",") + k + "=" + val;
  return s;
}

// ---------------------------------------------------------------------------

Outcome invasion_map() {
  TempDir ws("invasion");
  Service svc(config_for(ws));
  auto ing = svc.ingest(read_file(fx::source_path("fixtures/invasion.nq")));
  if (ing["maps"].size() != 1) return {false, "expected one map, got " + ing["maps"].dump()};
  auto map = svc.map(ing["maps"][0].get<std::string>());

  std::set<std::string> nodes;
  for (const auto& n : map["nodes"]) nodes.insert(local(n.get<std::string>()));
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& e : map["edges"]) edges.insert({local(e["src"]), local(e["dst"])});
  std::set<std::tuple<std::string, std::string, std::string, std::string>> junctions;
  auto listed = svc.junctions("");
  for (const auto& j : listed["junctions"]) {
    junctions.insert({j["kind"], local(j["v1"]), local(j["v2"]), local(j["v3"])});
  }

  Tally t;
  t.expect(nodes == std::set<std::string>{"CS", "IS", "ND", "FIT"}, "nodes");
  t.expect(edges == std::set<std::pair<std::string, std::string>>{
                        {"CS", "IS"}, {"ND", "CS"}, {"FIT", "IS"}, {"ND", "FIT"}},
           "edges");
  t.expect(map["acyclic"] == true, "acyclic");
  decltype(junctions) expected{{"chain", "ND", "CS", "IS"},
                               {"chain", "ND", "FIT", "IS"},
                               {"fork", "CS", "ND", "FIT"},
                               {"collider", "CS", "IS", "FIT"}};
  t.expect(junctions == expected, "junctions");
  return t.outcome(std::to_string(nodes.size()) + " nodes, " + std::to_string(edges.size()) + " edges, " +
                   std::to_string(junctions.size()) + " junctions");
}

Outcome dseparation() {
  Tally t;
  auto compare = [&](const Dag& dag, const oracle::Graph& g, int a, int b, const VarSet& z) {
    bool lib = d_separated(dag, g.names[a], g.names[b], z);
    bool ref = oracle::d_separated(g, a, b, as_flags(g, z));
    std::ostringstream what;
    what << g.names[a] << " _|_ " << g.names[b] << " | {";
    for (const auto& v : z) what << v << " ";
    what << "} over " << g.n() << " nodes";
    t.expect(lib == ref, what.str());
  };

  // Every DAG on up to five nodes appears (up to isomorphism) among the
  // graphs whose edges respect the order 0 < 1 < ... < n-1.
  long graphs = 0;
  for (int n = 2; n <= 5; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    }
    for (unsigned mask = 0; mask < (1U << pairs.size()); ++mask) {
      Dag dag;
      for (int i = 0; i < n; ++i) dag.add_node("V" + std::to_string(i));
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if ((mask >> k) & 1U) dag.add_edge("V" + std::to_string(pairs[k].first), "V" + std::to_string(pairs[k].second));
      }
      auto g = oracle::from_dag(dag);
      ++graphs;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (a == b) continue;
          for (unsigned zm = 0; zm < (1U << n); ++zm) {
            if ((zm >> a) & 1U || (zm >> b) & 1U) continue;
            VarSet z;
            for (int k = 0; k < n; ++k) {
              if ((zm >> k) & 1U) z.insert(g.names[k]);
            }
            compare(dag, g, a, b, z);
          }
        }
      }
    }
  }

  std::mt19937_64 rng(9001);
  for (int i = 0; i < 1000; ++i) {
    int n = std::uniform_int_distribution<int>(6, 8)(rng);
    double density = std::uniform_real_distribution<double>(0.2, 0.6)(rng);
    auto dag = oracle::random_dag(rng, n, density);
    auto g = oracle::from_dag(dag);
    ++graphs;
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::bernoulli_distribution in_z(0.3);
    for (int k = 0; k < 24; ++k) {
      int a = pick(rng), b = pick(rng);
      if (a == b) continue;
      VarSet z;
      for (int w = 0; w < n; ++w) {
        if (w != a && w != b && in_z(rng)) z.insert(g.names[w]);
      }
      compare(dag, g, a, b, z);
    }
  }
  return t.outcome(std::to_string(t.checks) + " queries over " + std::to_string(graphs) +
                   " graphs, disagreements " + std::to_string(t.failures));
}

Outcome backdoor() {
  std::mt19937_64 rng(4242);
  Tally t;
  int models = 0, adjusted = 0;
  while (models < 200) {
    int n = std::uniform_int_distribution<int>(3, 6)(rng);
    auto dag = oracle::random_dag(rng, n, 0.5);
    auto topo = dag.topological_order();
    // cause strictly upstream of the effect with a directed path between them
    auto x = topo[std::uniform_int_distribution<std::size_t>(0, n - 2)(rng)];
    auto desc = dag.descendants(Dag::Mask{1} << x) & ~(Dag::Mask{1} << x);
    if (!desc) continue;
    std::vector<std::size_t> reach;
    for (std::size_t i = 0; i < dag.size(); ++i) {
      if ((desc >> i) & 1U) reach.push_back(i);
    }
    auto y = reach[std::uniform_int_distribution<std::size_t>(0, reach.size() - 1)(rng)];
    for (std::size_t i = 0; i < dag.size(); ++i) {
      if (i != x && i != y && std::bernoulli_distribution(0.2)(rng)) dag.set_latent(dag.name(i));
    }
    const auto& cause = dag.name(x);
    const auto& effect = dag.name(y);
    auto g = oracle::from_dag(dag);
    auto sets = backdoor_sets(dag, cause, effect, 4);

    // completeness: brute-force the observed non-descendants
    bool exists = false;
    std::vector<int> candidates;
    auto xdesc = g.descendants(g.id(cause));
    for (int i = 0; i < g.n(); ++i) {
      if (!xdesc[i] && i != g.id(effect) && !dag.latent(dag.index(g.names[i]))) candidates.push_back(i);
    }
    for (unsigned m = 0; m < (1U << candidates.size()) && !exists; ++m) {
      if (__builtin_popcount(m) > 4) continue;
      std::vector<bool> z(g.n(), false);
      for (std::size_t k = 0; k < candidates.size(); ++k) z[candidates[k]] = (m >> k) & 1U;
      exists = oracle::backdoor_valid(g, g.id(cause), g.id(effect), z);
    }
    t.expect(exists == !sets.empty(), cause + "->" + effect + " existence");
    if (sets.empty()) continue;

    auto scm = oracle::random_scm(rng, dag, 3);
    ++models;
    for (const auto& s : sets) {
      if (!s.variables.empty()) ++adjusted;
      for (const auto& var : s.variables) t.expect(!dag.latent(dag.index(var)), "latent in set " + var);
      t.expect(oracle::backdoor_valid(g, g.id(cause), g.id(effect), as_flags(g, s.variables)), "invalid set");
      for (const auto& drop : s.variables) {
        auto smaller = s.variables;
        smaller.erase(drop);
        t.expect(!oracle::backdoor_valid(g, g.id(cause), g.id(effect), as_flags(g, smaller)),
                 "not minimal without " + drop);
      }
      auto table = estimate_backdoor(scm, cause, effect, s.variables);
      for (std::size_t c = 0; c < table.cause_values.size(); ++c) {
        auto truth = oracle::query(scm, effect, {}, {{cause, table.cause_values[c]}});
        double d = max_diff(table.per_value[c].mass, truth);
        t.expect(d <= kExact, cause + "->" + effect + " off by " + std::to_string(d));
      }
    }
  }
  return t.outcome(std::to_string(models) + " models, " + std::to_string(adjusted) +
                   " non-empty sets, tolerance 1e-12");
}

Outcome frontdoor() {
  std::mt19937_64 rng(777);
  Tally t;
  int models = 0;
  for (; models < 60; ++models) {
    int shape = models % 4;
    Dag dag;
    dag.add_node("U", true);
    dag.add_node("X");
    dag.add_node("M1");
    dag.add_node("Y");
    dag.add_edge("U", "X");
    dag.add_edge("U", "Y");
    dag.add_edge("X", "M1");
    if (shape == 1) {  // parallel mediators
      dag.add_node("M2");
      dag.add_edge("X", "M2");
      dag.add_edge("M2", "Y");
      dag.add_edge("M1", "Y");
    } else if (shape == 2) {  // mediator chain
      dag.add_node("M2");
      dag.add_edge("M1", "M2");
      dag.add_edge("M2", "Y");
    } else {
      dag.add_edge("M1", "Y");
    }
    if (shape == 3) {  // observed common cause as well
      dag.add_node("W");
      dag.add_edge("W", "X");
      dag.add_edge("W", "Y");
    }
    t.expect(backdoor_sets(dag, "X", "Y").empty(), "back-door should be blocked by U");
    auto m = frontdoor_check(dag, "X", "Y");
    t.expect(m.has_value(), "front-door set missing for shape " + std::to_string(shape));
    if (!m) continue;
    auto scm = oracle::random_scm(rng, dag, 3);
    auto table = estimate_frontdoor(scm, "X", "Y", *m);
    for (std::size_t c = 0; c < table.cause_values.size(); ++c) {
      auto truth = oracle::query(scm, "Y", {}, {{"X", table.cause_values[c]}});
      double d = max_diff(table.per_value[c].mass, truth);
      t.expect(d <= kExact, "shape " + std::to_string(shape) + " off by " + std::to_string(d));
    }
  }
  return t.outcome(std::to_string(models) + " models with latent confounding, tolerance 1e-12");
}

// Mean of numeric Y under do(C = c) by enumeration.
double mean_under(const DiscreteScm& scm, const std::string& c, const std::string& value) {
  auto dist = oracle::query(scm, "Y", {}, {{c, value}});
  double s = 0;
  const auto& dom = scm.variable("Y").domain;
  for (std::size_t k = 0; k < dom.size(); ++k) s += std::stod(dom[k]) * dist[k];
  return s;
}

Outcome mediation() {
  Tally t;
  auto check_te = [&](const DiscreteScm& scm, const MediationResult& r, const std::string& what) {
    double truth = mean_under(scm, "C", "1") - mean_under(scm, "C", "0");
    t.expect(std::abs(r.te - truth) <= kExact, what + " TE differs from surgery");
  };

  auto fixture = [&](const std::string& name) {
    auto scm = load_scm_file(fx::source_path("fixtures/scm/" + name));
    return std::make_pair(scm, mediation_effects(scm, "C", "M", "Y", "0", "1"));
  };
  auto [ni_scm, ni] = fixture("mediation_no_indirect.json");
  t.expect(ni.nie == 0.0, "fixture NIE not exactly zero");
  check_te(ni_scm, ni, "no-indirect fixture");
  auto [nd_scm, nd] = fixture("mediation_no_direct.json");
  t.expect(nd.nde == 0.0, "fixture NDE not exactly zero");
  check_te(nd_scm, nd, "no-direct fixture");
  auto [base_scm, base] = fixture("mediation.json");
  t.expect(std::abs(base.te - (base.nde + base.nie)) <= kIdentity, "fixture TE != NDE + NIE");
  check_te(base_scm, base, "mediation fixture");

  // Random models on sixteenths so that every probability is exact.
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> sixteenth(1, 15);
  auto row = [](int k) { return std::vector<double>{1.0 - k / 16.0, k / 16.0}; };
  int models = 0;
  for (int i = 0; i < 300; ++i, ++models) {
    int kind = i % 3;
    DiscreteScm scm;
    scm.add_variable("C", {"0", "1"}, {}, {row(sixteenth(rng))});
    int m0 = sixteenth(rng);
    int m1 = kind == 0 ? m0 : sixteenth(rng);
    scm.add_variable("M", {"0", "1"}, {"C"}, {row(m0), row(m1)});
    std::vector<std::vector<double>> y;
    if (kind == 1) {
      int a = sixteenth(rng), b = sixteenth(rng);
      y = {row(a), row(b), row(a), row(b)};
    } else if (kind == 2) {
      // P(Y=1 | c, m) = a + b c + d m
      int a = std::uniform_int_distribution<int>(1, 5)(rng);
      int b = std::uniform_int_distribution<int>(-1, 5)(rng);
      int d = std::uniform_int_distribution<int>(-1, 5)(rng);
      if (a + std::min(b, 0) + std::min(d, 0) < 1) b = 1;
      y = {row(a), row(a + d), row(a + b), row(a + b + d)};
    } else {
      for (int r = 0; r < 4; ++r) y.push_back(row(sixteenth(rng)));
    }
    scm.add_variable("Y", {"0", "1"}, {"C", "M"}, y);
    auto r = mediation_effects(scm, "C", "M", "Y", "0", "1");
    std::string tag = "random kind " + std::to_string(kind) + " #" + std::to_string(i);
    if (kind == 0) t.expect(r.nie == 0.0, tag + " NIE=" + std::to_string(r.nie));
    if (kind == 1) t.expect(r.nde == 0.0, tag + " NDE=" + std::to_string(r.nde));
    if (kind == 2) t.expect(std::abs(r.te - (r.nde + r.nie)) <= kIdentity, tag + " TE != NDE + NIE");
    check_te(scm, r, tag);
  }
  return t.outcome("3 fixtures and " + std::to_string(models) +
                   " dyadic models; zeros exact, TE = NDE + NIE within 1e-9, TE vs surgery 1e-12");
}

Outcome do_rules() {
  std::mt19937_64 rng(2718);
  Tally t;
  int licensed[4] = {0, 0, 0, 0};
  for (int i = 0; i < 500; ++i) {
    int n = std::uniform_int_distribution<int>(4, 6)(rng);
    auto dag = oracle::random_dag(rng, n, 0.45);
    auto scm = oracle::random_scm(rng, dag, 2);
    std::vector<std::string> names = dag.names();
    for (int k = 0; k < 8; ++k) {
      std::shuffle(names.begin(), names.end(), rng);
      std::string y = names[0];
      std::string zv = names[1];
      std::size_t at = 2;
      std::vector<std::string> xs, ws;
      if (std::bernoulli_distribution(0.6)(rng)) xs.push_back(names[at++]);
      if (std::bernoulli_distribution(0.5)(rng)) ws.push_back(names[at++]);
      VarSet Y{y}, X(xs.begin(), xs.end()), Z{zv}, W(ws.begin(), ws.end());

      for (int rule = 1; rule <= 3; ++rule) {
        if (!do_rule_applicable(dag, rule, Y, X, Z, W)) continue;
        ++licensed[rule];
        for (const auto& xa : assignments(scm, xs)) {
          for (const auto& za : assignments(scm, {zv})) {
            for (const auto& wa : assignments(scm, ws)) {
              Assignment given = wa, action = xa;
              std::vector<double> lhs, rhs;
              if (rule == 1) {
                // P(y | do(x), z, w) = P(y | do(x), w)
                Assignment gz = given;
                gz.insert(za.begin(), za.end());
                lhs = oracle::query(scm, y, gz, action);
                rhs = oracle::query(scm, y, given, action);
              } else {
                Assignment both = action;
                both.insert(za.begin(), za.end());
                lhs = oracle::query(scm, y, given, both);
                if (rule == 2) {
                  // = P(y | do(x), z, w)
                  Assignment gz = given;
                  gz.insert(za.begin(), za.end());
                  rhs = oracle::query(scm, y, gz, action);
                } else {
                  // = P(y | do(x), w)
                  rhs = oracle::query(scm, y, given, action);
                }
              }
              double d = max_diff(lhs, rhs);
              t.expect(d <= kExact, "rule " + std::to_string(rule) + " y=" + y + " x={" + show(xa) + "} z={" +
                                        show(za) + "} w={" + show(wa) + "} off by " + std::to_string(d));
            }
          }
        }
      }
    }
  }
  bool vacuous = licensed[1] == 0 || licensed[2] == 0 || licensed[3] == 0;
  auto out = t.outcome("licensed rule 1/2/3: " + std::to_string(licensed[1]) + "/" + std::to_string(licensed[2]) +
                       "/" + std::to_string(licensed[3]) + " over 500 DAGs, " + std::to_string(t.checks) +
                       " value checks at 1e-12");
  if (vacuous) out.pass = false;
  return out;
}

Outcome counterfactuals() {
  std::mt19937_64 rng(1618);
  Tally t;
  int models = 0;
  while (models < 60) {
    int roots = std::uniform_int_distribution<int>(2, 3)(rng);
    int inner = std::uniform_int_distribution<int>(3, 4)(rng);
    auto scm = oracle::random_canonical_scm(rng, roots, inner);
    t.expect(is_canonical_form(scm), "not canonical");
    const auto& vars = scm.variables();

    // evidence from a sampled world so that it has positive probability
    oracle::World w(vars.size(), 0);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      std::size_t r = 0;
      for (const auto& p : vars[i].cpt.parents) {
        auto pi = scm.index(p);
        r = r * vars[pi].domain.size() + w[pi];
      }
      std::discrete_distribution<std::size_t> draw(vars[i].cpt.rows[r].begin(), vars[i].cpt.rows[r].end());
      w[i] = draw(rng);
    }
    std::vector<std::size_t> order(vars.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t target = order[0], acted = order[1];
    CounterfactualQuery q;
    q.query = vars[target].name;
    q.intervention[vars[acted].name] =
        vars[acted].domain[std::uniform_int_distribution<std::size_t>(0, vars[acted].domain.size() - 1)(rng)];
    std::size_t seen = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    for (std::size_t k = 0; k < seen; ++k) {
      std::size_t e = order[2 + k];
      q.evidence[vars[e].name] = vars[e].domain[w[e]];
    }
    if (std::bernoulli_distribution(0.3)(rng)) q.evidence[vars[target].name] = vars[target].domain[w[target]];

    auto lib = counterfactual(scm, q);
    auto ref = oracle::twin_counterfactual(scm, q.evidence, q.intervention, q.query);
    double d = max_diff(lib.mass, ref);
    t.expect(d <= kExact, "model " + std::to_string(models) + " off by " + std::to_string(d));
    ++models;
  }

  auto copy = load_scm_file(fx::source_path("fixtures/scm/deterministic_copy.json"));
  auto point = counterfactual(copy, {{{"X", "1"}, {"Y", "1"}}, {{"X", "0"}}, "Y"});
  t.expect(point.mass == std::vector<double>{1.0, 0.0}, "deterministic copy is not a point mass on Y=0");
  return t.outcome(std::to_string(models) + " canonical models against the twin network at 1e-12, point mass exact");
}

Outcome statement_cascade() {
  KnowledgeGraph kg(true);
  auto wet = fx::add_wetland(kg);
  auto inv = fx::add_invasion_statements(kg);
  auto token = fx::add_token_causal(kg, v::kNegativelyRegulatesCharacteristic);
  Tally t;
  auto universals = kg.units_of_class(v::kUniversalStatementUnit);
  for (const auto& id : universals) {
    auto unit = kg.statement_unit(id);
    t.expect(categorize(unit) == StatementCategory::Universal, local(id.value) + " not universal");
    auto twins = derive_entailed(kg, unit);
    t.expect(twins.size() == 2, local(id.value) + " twin count");
    if (twins.size() != 2) continue;
    t.expect(categorize(twins[0]) == StatementCategory::Prototypical, "first twin category");
    t.expect(categorize(twins[1]) == StatementCategory::Contingent, "second twin category");
    for (const auto& d : twins) {
      t.expect(kg.store().contains({d.id, v::kDerivedFrom, id, meta_graph_of(d.id)}), "derivation link");
      auto p = d.primary();
      auto u = unit.primary();
      t.expect(p && u && p->p == u->p, "twin keeps the predicate");
    }
    auto weaker = derive_entailed(kg, twins[0]);
    t.expect(weaker.size() == 1 && categorize(weaker[0]) == StatementCategory::Contingent, "prototypical step");
    t.expect(derive_entailed(kg, twins[1]).empty(), "contingent is terminal");
  }
  t.expect(universals.size() == 5, "expected five universal fixtures");

  t.expect(check_satisfies(kg.statement_unit(wet.assertional), kg.statement_unit(wet.universal)),
           "wetland token fails");
  t.expect(check_satisfies(token, kg.statement_unit(inv.a)), "invasion token fails");
  t.expect(!check_satisfies(token, kg.statement_unit(inv.c)), "token satisfies the wrong universal");

  KnowledgeGraph other(true);
  auto swapped = fx::add_wetland(other, v::kHasPart);
  t.expect(!check_satisfies(other.statement_unit(swapped.assertional), other.statement_unit(swapped.universal)),
           "mutated wetland predicate satisfies");
  auto mutated = fx::add_token_causal(other, v::kCausallyInfluencesPositive);
  t.expect(!check_satisfies(mutated, kg.statement_unit(inv.a)), "mutated token predicate satisfies");
  return t.outcome(std::to_string(universals.size()) + " universal units cascade, 2 tokens satisfy, 2 mutants rejected");
}

Outcome round_trips() {
  Tally t;
  int files = 0;
  for (const auto& name : {"fixtures/golden.nq", "fixtures/invasion.nq", "fixtures/compose_ba.nq"}) {
    auto text = read_file(fx::source_path(name));
    auto quads = parse_nquads(text);
    auto again = parse_nquads(write_nquads(quads));
    t.expect(std::set<Quad>(quads.begin(), quads.end()) == std::set<Quad>(again.begin(), again.end()),
             std::string(name) + " set differs");
    t.expect(!quads.empty(), std::string(name) + " empty");
    ++files;
  }

  auto as_set = [](const std::vector<Quad>& q) { return std::set<Quad>(q.begin(), q.end()); };
  auto same_unit = [&](const KnowledgeGraph& a, const KnowledgeGraph& b, const Iri& id) {
    if (a.is_statement_unit(id)) {
      if (!b.is_statement_unit(id)) return false;
      auto x = a.statement_unit(id), y = b.statement_unit(id);
      return as_set(x.content) == as_set(y.content) && as_set(x.meta) == as_set(y.meta) &&
             x.unit_classes == y.unit_classes;
    }
    if (!b.is_compound_unit(id)) return false;
    auto x = a.compound_unit(id), y = b.compound_unit(id);
    return x.members == y.members && x.unit_classes == y.unit_classes;
  };
  auto trip = [&](const KnowledgeGraph& kg, const Iri& id) {
    auto nps = export_unit(kg, id, {std::nullopt, true});
    auto units = import_nanopub(parse_nquads(bundle_nquads(nps)));
    KnowledgeGraph back(true);
    for (const auto& u : units) back.insert_unit(u);
    t.expect(units.size() == nps.size(), id.value + " unit count");
    for (const auto& u : units) t.expect(same_unit(kg, back, unit_id(u)), unit_id(u).value + " differs");
    return nps;
  };

  auto golden = fx::golden_graph();
  int units = 0;
  for (const auto& id : golden.unit_ids()) {
    trip(golden, id);
    ++units;
  }

  TempDir ws("np");
  Service svc(config_for(ws));
  auto map = svc.ingest(read_file(fx::source_path("fixtures/invasion.nq")))["maps"][0].get<std::string>();
  auto bundle = trip(svc.graph(), Iri(map));
  t.expect(bundle.size() == 5, "invasion bundle size " + std::to_string(bundle.size()));
  if (!bundle.empty()) {
    const auto& head = bundle.back().head;
    t.expect(std::count_if(head.begin(), head.end(), [](const Quad& q) { return q.p == v::kHasMemberNanopub; }) == 4,
             "nested head members");
  }
  return t.outcome(std::to_string(files) + " N-Quads files, " + std::to_string(units) +
                   " golden units and the 5-nanopub invasion bundle round-trip");
}

Outcome parity() {
  TempDir cli_ws("cli"), http_ws("http");
  auto cli = [&](std::vector<std::string> args) {
    std::vector<std::string> full = {"--store", cli_ws.store(), "--deterministic"};
    full.insert(full.end(), args.begin(), args.end());
    std::ostringstream out, err;
    int code = run_cli(full, out, err);
    std::string s = code == 0 ? out.str() : err.str();
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
  };

  Service svc(config_for(http_ws));
  HttpServer server(svc);
  int port = server.bind("127.0.0.1", 0);
  std::thread runner([&] { server.run(); });
  httplib::Client client("127.0.0.1", port);
  auto post = [&](const std::string& path, const json& body) {
    auto r = client.Post(path, body.dump(), "application/json");
    return r ? r->body : std::string("<no response>");
  };
  auto get = [&](const std::string& path) {
    auto r = client.Get(path);
    return r ? r->body : std::string("<no response>");
  };

  Tally t;
  auto invasion = fx::source_path("fixtures/invasion.nq");
  auto via_cli = cli({"ingest", invasion});
  auto via_http = post("/ingest", {{"nquads", read_file(invasion)}});
  t.expect(via_cli == via_http, "ingest");
  std::string map = json::parse(via_http)["maps"][0];
  auto enc = httplib::detail::encode_url(map);
  auto scm = [](const std::string& f) { return fx::source_path("fixtures/scm/" + f); };

  struct Scenario {
    std::string name;
    std::string cli;
    std::string http;
  };
  std::vector<Scenario> scenarios;
  scenarios.push_back({"junctions", cli({"junctions", "--map", map}), get("/maps/" + enc + "/junctions")});
  scenarios.push_back({"dsep", cli({"dsep", "--map", map, "--x", "CS", "--y", "FIT", "--given", "ND"}),
                       post("/dsep", {{"map", map}, {"x", "CS"}, {"y", "FIT"}, {"given", {"ND"}}})});
  scenarios.push_back({"identify", cli({"identify", "--map", map, "--cause", "CS", "--effect", "IS"}),
                       post("/identify", {{"map", map}, {"cause", "CS"}, {"effect", "IS"}})});
  scenarios.push_back(
      {"estimate", cli({"estimate", "backdoor", "--scm", scm("confounded.json"), "--cause", "X", "--effect", "Y"}),
       post("/estimate", {{"scm", scm("confounded.json")}, {"method", "backdoor"}, {"cause", "X"}, {"effect", "Y"}})});
  scenarios.push_back({"mediate",
                       cli({"mediate", "--scm", scm("mediation.json"), "--cause", "C", "--mediator", "M", "--effect",
                            "Y"}),
                       post("/mediate", {{"scm", scm("mediation.json")}, {"cause", "C"}, {"mediator", "M"}, {"effect", "Y"}})});
  scenarios.push_back({"whatif",
                       cli({"whatif", "--scm", scm("deterministic_copy.json"), "--observe", "X=1,Y=1", "--do", "X=0",
                            "--query", "Y"}),
                       post("/whatif", {{"scm", scm("deterministic_copy.json")},
                                        {"observe", {{"X", "1"}, {"Y", "1"}}},
                                        {"do", {{"X", "0"}}},
                                        {"query", "Y"}})});
  server.stop();
  runner.join();

  std::string names;
  for (const auto& s : scenarios) {
    bool ok = s.cli == s.http && s.cli.rfind("{\"error\"", 0) != 0;
    t.expect(ok, s.name + ": cli " + s.cli + " vs http " + s.http);
    names += (names.empty() ? "" : " ") + s.name;
  }
  return t.outcome(std::to_string(scenarios.size()) + " scenarios byte-identical (" + names + ")");
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"invasion-map", invasion_map},
      {"d-separation-oracle", dseparation},
      {"backdoor-soundness", backdoor},
      {"frontdoor-soundness", frontdoor},
      {"mediation-identities", mediation},
      {"do-calculus-rules", do_rules},
      {"counterfactual-twin-network", counterfactuals},
      {"statement-logic-cascade", statement_cascade},
      {"round-trips", round_trips},
      {"cli-http-parity", parity},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
