#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "su/causal_inference.hpp"
#include "su/scm_engine.hpp"

// Reference implementations used only to check the library. They share no
// code with the library's algorithms: graphs are plain adjacency lists,
// d-separation is path enumeration, and interventional quantities come from
// brute-force truncated factorization over every full assignment.
namespace oracle {

struct Graph {
  std::vector<std::string> names;
  std::vector<std::vector<int>> children;

  int n() const { return static_cast<int>(names.size()); }
  int id(const std::string& name) const;
  bool edge(int a, int b) const;
  std::vector<bool> descendants(int v) const;  // includes v
};

Graph from_dag(const su::Dag& dag);

// Simple undirected paths a ... b as node lists.
std::vector<std::vector<int>> paths(const Graph& g, int a, int b);
bool blocked(const Graph& g, const std::vector<int>& path, const std::vector<bool>& z);
bool d_separated(const Graph& g, int a, int b, const std::vector<bool>& z);

// Pearl's back-door criterion checked directly on paths.
bool backdoor_valid(const Graph& g, int x, int y, const std::vector<bool>& z);

// Random DAG over V0..V{n-1}: a hidden order, each forward pair joined with
// probability `density`, nodes inserted into the Dag in a shuffled order.
su::Dag random_dag(std::mt19937_64& rng, int n, double density);

// Random model over a DAG; rows drawn from [0.05, 0.95]-bounded weights,
// or multiples of 1/16 when `dyadic`.
su::DiscreteScm random_scm(std::mt19937_64& rng, const su::Dag& dag, int max_domain = 2, bool dyadic = false);

// Values indexed by variable position in scm.variables().
using World = std::vector<std::size_t>;

// P(target | given) in the model with `action` forced, by enumeration.
std::vector<double> query(const su::DiscreteScm& scm, const std::string& target, const su::Assignment& given,
                          const su::Assignment& action);

// Counterfactual by explicit twin network: factual and counterfactual copies
// of every endogenous variable share the root variables.
std::vector<double> twin_counterfactual(const su::DiscreteScm& scm, const su::Assignment& evidence,
                                        const su::Assignment& action, const std::string& target);

// Deterministic model: roots with random priors, other variables fixed
// functions of their parents.
su::DiscreteScm random_canonical_scm(std::mt19937_64& rng, int roots, int inner);

}  // namespace oracle
