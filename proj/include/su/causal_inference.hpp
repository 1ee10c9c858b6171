#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "su/causal_model.hpp"

namespace su {

using VarSet = std::set<std::string>;

// Directed graph over named variables. Latent nodes take part in path
// reasoning but are never used for adjustment, mediation, or instruments.
// Sets are handled as 64-bit masks internally.
class Dag {
 public:
  using Mask = std::uint64_t;
  static constexpr std::size_t kMaxNodes = 64;

  Dag() = default;

  std::size_t add_node(const std::string& name, bool latent = false);
  void add_edge(const std::string& from, const std::string& to);
  void set_latent(const std::string& name, bool latent = true);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index(const std::string& name) const;  // throws UnknownVariable
  bool has_node(const std::string& name) const { return find(name).has_value(); }

  bool latent(std::size_t i) const { return (latent_ >> i) & 1U; }
  Mask latent_mask() const { return latent_; }
  Mask observed_mask() const { return all_mask() & ~latent_; }
  Mask all_mask() const { return size() == 64 ? ~Mask{0} : (Mask{1} << size()) - 1; }

  Mask parents(std::size_t i) const { return parents_[i]; }
  Mask children(std::size_t i) const { return children_[i]; }
  bool has_edge(std::size_t from, std::size_t to) const { return (children_[from] >> to) & 1U; }
  std::size_t edge_count() const;

  bool acyclic() const;
  std::vector<std::size_t> topological_order() const;  // throws CyclicGraph

  Mask ancestors(Mask of) const;    // includes `of`
  Mask descendants(Mask of) const;  // includes `of`

  // Copies with edges removed: into `m` / out of `m`.
  Dag without_incoming(Mask m) const;
  Dag without_outgoing(Mask m) const;

  Mask mask(const VarSet& vars) const;
  VarSet vars(Mask m) const;

  std::vector<std::pair<std::string, std::string>> edges() const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<Mask> parents_;
  std::vector<Mask> children_;
  Mask latent_ = 0;
};

// Nodes keyed by variable class IRI.
Dag dag_from_network(const CausalNetwork& net);

struct Path {
  std::vector<std::string> nodes;
  std::vector<bool> forward;  // edge i points nodes[i] -> nodes[i+1]
};

std::vector<Path> enumerate_paths(const Dag& dag, const std::string& x, const std::string& y);
bool path_blocked(const Path& path, const VarSet& z, const Dag& dag);

// Reachability (Bayes-ball) test; sets may hold several variables.
bool d_separated(const Dag& dag, const std::string& x, const std::string& y, const VarSet& z);
bool d_separated(const Dag& dag, Dag::Mask x, Dag::Mask y, Dag::Mask z);

struct AdjustmentSet {
  VarSet variables;
  bool minimal = true;

  auto operator<=>(const AdjustmentSet&) const = default;
};

bool is_backdoor_set(const Dag& dag, const std::string& cause, const std::string& effect,
                     const VarSet& z);

// Minimal sets of observed non-descendants of the cause, smallest first,
// then by sorted member names.
std::vector<AdjustmentSet> backdoor_sets(const Dag& dag, const std::string& cause,
                                         const std::string& effect, int max_size = 4);

bool is_frontdoor_set(const Dag& dag, const std::string& cause, const std::string& effect,
                      const VarSet& m);
std::optional<VarSet> frontdoor_check(const Dag& dag, const std::string& cause,
                                      const std::string& effect);

bool is_instrument(const Dag& dag, const std::string& z, const std::string& cause,
                   const std::string& effect);
std::vector<std::string> find_instruments(const Dag& dag, const std::string& cause,
                                          const std::string& effect);

// Pearl's rules, for P(y | do(x), z, w):
//   1: (Y ⊥ Z | X, W) in G with edges into X removed
//   2: (Y ⊥ Z | X, W) in G with edges into X and out of Z removed
//   3: (Y ⊥ Z | X, W) in G with edges into X and into Z(W) removed, where
//      Z(W) are the Z nodes that are not ancestors of W in G minus edges into X.
bool do_rule_applicable(const Dag& dag, int rule, const VarSet& y, const VarSet& x,
                        const VarSet& z, const VarSet& w);

// Symbolic observational expression.
struct VarRef {
  std::string var;
  std::string symbol;  // bound name; differs from var for re-bound causes (X')

  auto operator<=>(const VarRef&) const = default;
};

struct Expr {
  enum class Kind { Sum, Prob, Product, Difference };
  Kind kind = Kind::Prob;
  std::vector<VarRef> vars;   // Sum: summed variables; Prob: targets
  std::vector<VarRef> given;  // Prob only
  std::vector<Expr> children;

  static Expr prob(std::vector<VarRef> targets, std::vector<VarRef> given = {});
  static Expr sum(std::vector<VarRef> over, Expr body);
  static Expr product(std::vector<Expr> factors);
  static Expr difference(Expr a, Expr b);
};

VarRef ref(const std::string& var);
VarRef primed(const std::string& var);

// sum_{Z} P(effect|cause,Z) * P(Z); P(effect|cause) for empty Z.
Expr backdoor_expr(const std::string& cause, const std::string& effect, const VarSet& z);
// sum_{M} P(M|cause) * sum_{cause'} P(effect|M,cause') * P(cause')
Expr frontdoor_expr(const std::string& cause, const std::string& effect, const VarSet& m);

using NameFn = std::function<std::string(const std::string&)>;

std::string render(const Expr& e, const NameFn& name);
nlohmann::json expr_to_json(const Expr& e);

enum class Strategy { BackDoor, Rule2, FrontDoor, InstrumentalVariable, DoCalculus, Unidentified };
std::string_view strategy_name(Strategy s);

struct Estimand {
  Strategy strategy = Strategy::Unidentified;
  std::string cause;
  std::string effect;
  std::optional<Expr> expr;  // absent for IV and Unidentified
  VarSet adjustment;
  VarSet mediators;
  std::vector<std::string> instruments;
  std::optional<Iri> perspective;  // recorded perspective unit, if any

  bool identified() const { return expr.has_value(); }
  std::string text(const NameFn& name) const;
};

// Back-door, then front-door, then IV, then a depth-limited do-calculus
// rewrite search. Throws CyclicGraph.
Estimand identify_effect(const Dag& dag, const std::string& cause, const std::string& effect,
                         int max_adjustment_size = 4, int search_depth = 6);

nlohmann::json estimand_to_json(const Estimand& e, const NameFn& name);

// Stores the identification result as typed perspective units: the plain
// causal perspective of the focus pair, and a strategy perspective linked
// back to it by 'derived by do-calculus from'.
void record_identification(KnowledgeGraph& kg, const CausalNetwork& net, Estimand& estimand,
                           const NameFn& name);

}  // namespace su
