#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "su/causal_inference.hpp"
#include "su/semantic_units.hpp"

namespace su {

// variable -> value label
using Assignment = std::map<std::string, std::string>;

struct Cpt {
  std::string variable;
  std::vector<std::string> parents;
  // One row per parent assignment in mixed-radix order (first parent most
  // significant), each a distribution over the variable's domain.
  std::vector<std::vector<double>> rows;
};

class DiscreteScm {
 public:
  struct Variable {
    std::string name;
    std::vector<std::string> domain;
    Cpt cpt;
  };

  DiscreteScm() = default;

  // Variables must be added after their parents.
  void add_variable(const std::string& name, std::vector<std::string> domain,
                    std::vector<std::string> parents, std::vector<std::vector<double>> rows);
  void set_latent(const std::string& name, bool latent = true);
  void bind(const std::string& name, const Iri& node) { binding_[name] = node; }

  const std::vector<Variable>& variables() const { return vars_; }
  const Variable& variable(const std::string& name) const;
  std::size_t index(const std::string& name) const;  // throws UnknownVariable
  bool has(const std::string& name) const { return index_.count(name) > 0; }
  std::size_t value_index(const std::string& var, const std::string& value) const;
  bool latent(const std::string& name) const { return latent_.count(name) > 0; }
  const std::set<std::string>& latent_set() const { return latent_; }
  const std::map<std::string, Iri>& binding() const { return binding_; }

  // Row of var's table for the given parent value indices.
  const std::vector<double>& row(std::size_t var, const std::vector<std::size_t>& values) const;

  Dag dag() const;
  void validate() const;  // throws InvalidScm

 private:
  std::vector<Variable> vars_;
  std::map<std::string, std::size_t> index_;
  std::set<std::string> latent_;
  std::map<std::string, Iri> binding_;
};

DiscreteScm scm_from_json(const nlohmann::json& j);
nlohmann::json scm_to_json(const DiscreteScm& scm);
DiscreteScm load_scm_file(const std::string& path);

// Dense distribution; mass is indexed mixed-radix with the first variable
// most significant.
struct Distribution {
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> domains;
  std::vector<double> mass;

  std::size_t size() const { return mass.size(); }
  double total() const;
  Assignment assignment(std::size_t flat) const;
  std::vector<std::size_t> values(std::size_t flat) const;
  std::size_t position(const std::string& var) const;  // throws UnknownVariable
  double probability(const Assignment& partial) const;
};

// {"X=0,Y=1": p, ...} in mass order.
nlohmann::json distribution_to_json(const Distribution& d);
Assignment parse_assignment(const std::string& text);  // "X=1,Y=0"

constexpr std::size_t kMaxAssignments = std::size_t{1} << 20;

Distribution joint(const DiscreteScm& scm);
// Joint over the non-latent variables.
Distribution observational(const DiscreteScm& scm);
Distribution marginal(const Distribution& d, const std::vector<std::string>& vars);
Distribution conditional(const Distribution& d, const std::vector<std::string>& targets,
                         const Assignment& given);

DiscreteScm intervene(const DiscreteScm& scm, const Assignment& action);

// P(effect | do(cause = c)) for every value c of the cause.
struct EffectTable {
  std::string cause;
  std::string effect;
  std::vector<std::string> cause_values;
  std::vector<Distribution> per_value;  // over {effect}

  double max_abs_diff(const EffectTable& other) const;
};

nlohmann::json effect_table_to_json(const EffectTable& t);

// Surgery ground truth; may use latent variables.
EffectTable interventional_effect(const DiscreteScm& scm, const std::string& cause,
                                  const std::string& effect);

// Formula estimates from the observational joint only.
EffectTable estimate_backdoor(const DiscreteScm& scm, const std::string& cause,
                              const std::string& effect, const VarSet& z);
EffectTable estimate_frontdoor(const DiscreteScm& scm, const std::string& cause,
                               const std::string& effect, const VarSet& mediators);

// Sums out an identified estimand against an observational distribution;
// `env` binds the free symbols (normally the cause and effect values).
double evaluate_estimand(const Expr& e, const Distribution& obs, const Assignment& env);

struct MediationResult {
  double te = 0;
  double nde = 0;
  double nie = 0;
  std::string baseline;
  std::string treated;
  // (i) no cause-outcome confounding, (ii) no mediator-outcome confounding,
  // (iii) no mediator-outcome confounder affected by the cause
  std::vector<bool> assumptions_checked;
};

nlohmann::json mediation_to_json(const MediationResult& r);

MediationResult mediation_effects(const DiscreteScm& scm, const std::string& cause,
                                  const std::string& mediator, const std::string& effect,
                                  const std::string& baseline, const std::string& treated);

struct CounterfactualQuery {
  Assignment evidence;
  Assignment intervention;
  std::string query;
};

// Abduction over root (exogenous) variables, surgery, prediction. Every
// non-root variable must be a deterministic function of its parents.
Distribution counterfactual(const DiscreteScm& scm, const CounterfactualQuery& q);

bool is_canonical_form(const DiscreteScm& scm);

// Adds one noise root per stochastic non-root variable whose values index
// response functions (parent assignment -> value); observationally
// equivalent, independent responses across parent assignments.
DiscreteScm to_canonical_form(const DiscreteScm& scm);

// Observed outcome + counterfactual statement unit + universal causal
// statement unit, grouped as a potential outcome compound unit.
CompoundUnit build_potential_outcome_unit(KnowledgeGraph& kg, const Iri& observed_unit,
                                          const Distribution& counterfactual_result,
                                          const Iri& universal_unit,
                                          const Assignment& intervention, const Iri& method);

}  // namespace su
