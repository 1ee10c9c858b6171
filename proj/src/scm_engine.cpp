#include "su/scm_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "su/error.hpp"
#include "su/vocab.hpp"

namespace su {

using nlohmann::json;

namespace {

constexpr double kTolerance = 1e-9;

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::size_t checked_product(const std::vector<std::size_t>& sizes) {
  std::size_t n = 1;
  for (auto s : sizes) {
    if (s != 0 && n > kMaxAssignments / s) {
      throw Error(ErrorCode::DomainTooLarge, "more than 2^20 joint assignments");
    }
    n *= s;
  }
  if (n > kMaxAssignments) throw Error(ErrorCode::DomainTooLarge, "more than 2^20 joint assignments");
  return n;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void DiscreteScm::add_variable(const std::string& name, std::vector<std::string> domain,
                               std::vector<std::string> parents,
                               std::vector<std::vector<double>> rows) {
  if (index_.count(name)) throw Error(ErrorCode::InvalidScm, "duplicate variable " + name);
  if (domain.empty()) throw Error(ErrorCode::InvalidScm, name + " has an empty domain");
  std::size_t configs = 1;
  for (const auto& p : parents) {
    auto it = index_.find(p);
    if (it == index_.end()) throw Error(ErrorCode::InvalidScm, name + ": unknown parent " + p);
    configs *= vars_[it->second].domain.size();
  }
  if (rows.size() != configs) {
    throw Error(ErrorCode::InvalidScm, name + ": table has " + std::to_string(rows.size()) +
                                           " rows, expected " + std::to_string(configs));
  }
  for (const auto& r : rows) {
    if (r.size() != domain.size()) throw Error(ErrorCode::InvalidScm, name + ": row size mismatch");
    double s = 0;
    for (double p : r) {
      if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidScm, name + ": probability out of range");
      s += p;
    }
    if (std::abs(s - 1.0) > kTolerance) throw Error(ErrorCode::InvalidScm, name + ": row does not sum to 1");
  }
  index_.emplace(name, vars_.size());
  vars_.push_back({name, std::move(domain), {name, std::move(parents), std::move(rows)}});
}

void DiscreteScm::set_latent(const std::string& name, bool is_latent) {
  index(name);
  if (is_latent) latent_.insert(name);
  else latent_.erase(name);
}

const DiscreteScm::Variable& DiscreteScm::variable(const std::string& name) const {
  return vars_[index(name)];
}

std::size_t DiscreteScm::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error(ErrorCode::UnknownVariable, "no variable " + name);
  return it->second;
}

std::size_t DiscreteScm::value_index(const std::string& var, const std::string& value) const {
  const auto& d = variable(var).domain;
  auto it = std::find(d.begin(), d.end(), value);
  if (it == d.end()) throw Error(ErrorCode::InvalidRequest, var + " has no value " + value);
  return static_cast<std::size_t>(it - d.begin());
}

const std::vector<double>& DiscreteScm::row(std::size_t var,
                                            const std::vector<std::size_t>& values) const {
  const auto& v = vars_[var];
  std::size_t r = 0;
  for (const auto& p : v.cpt.parents) {
    auto pi = index_.at(p);
    r = r * vars_[pi].domain.size() + values[pi];
  }
  return v.cpt.rows[r];
}

Dag DiscreteScm::dag() const {
  Dag d;
  for (const auto& v : vars_) d.add_node(v.name, latent(v.name));
  for (const auto& v : vars_) {
    for (const auto& p : v.cpt.parents) d.add_edge(p, v.name);
  }
  return d;
}

void DiscreteScm::validate() const {
  if (vars_.empty()) throw Error(ErrorCode::InvalidScm, "model has no variables");
}

DiscreteScm scm_from_json(const json& j) {
  struct Pending {
    std::string name;
    std::vector<std::string> domain;
    std::vector<std::string> parents;
    json table;
  };
  std::vector<Pending> pending;
  try {
    for (const auto& v : j.at("variables")) {
      Pending p;
      p.name = v.at("name").get<std::string>();
      for (const auto& d : v.at("domain")) {
        p.domain.push_back(d.is_string() ? d.get<std::string>() : d.dump());
      }
      if (v.contains("parents")) p.parents = v["parents"].get<std::vector<std::string>>();
      p.table = v.at("table");
      pending.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidScm, std::string("bad model JSON: ") + e.what());
  }

  DiscreteScm scm;
  // accept variables in any order; add each once its parents are in
  while (!pending.empty()) {
    auto ready = std::find_if(pending.begin(), pending.end(), [&](const Pending& p) {
      return std::all_of(p.parents.begin(), p.parents.end(),
                         [&](const std::string& q) { return scm.has(q); });
    });
    if (ready == pending.end()) {
      throw Error(ErrorCode::InvalidScm, "unknown parent or cycle near " + pending.front().name);
    }
    std::vector<std::vector<std::string>> parent_domains;
    for (const auto& p : ready->parents) parent_domains.push_back(scm.variable(p).domain);
    std::size_t configs = 1;
    for (const auto& d : parent_domains) configs *= d.size();
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < configs; ++r) {
      std::vector<std::string> key(parent_domains.size());
      std::size_t rest = r;
      for (std::size_t k = parent_domains.size(); k-- > 0;) {
        key[k] = parent_domains[k][rest % parent_domains[k].size()];
        rest /= parent_domains[k].size();
      }
      auto k = join(key, ",");
      if (!ready->table.contains(k)) {
        throw Error(ErrorCode::InvalidScm, ready->name + ": missing table row \"" + k + "\"");
      }
      rows.push_back(ready->table[k].get<std::vector<double>>());
    }
    scm.add_variable(ready->name, ready->domain, ready->parents, rows);
    pending.erase(ready);
  }
  if (j.contains("latent")) {
    for (const auto& l : j["latent"]) scm.set_latent(l.get<std::string>());
  }
  if (j.contains("binding")) {
    for (const auto& [name, iri] : j["binding"].items()) {
      scm.index(name);
      scm.bind(name, Iri(iri.get<std::string>()));
    }
  }
  scm.validate();
  return scm;
}

json scm_to_json(const DiscreteScm& scm) {
  json vars = json::array();
  for (const auto& v : scm.variables()) {
    json table = json::object();
    std::vector<const std::vector<std::string>*> pd;
    for (const auto& p : v.cpt.parents) pd.push_back(&scm.variable(p).domain);
    for (std::size_t r = 0; r < v.cpt.rows.size(); ++r) {
      std::vector<std::string> key(pd.size());
      std::size_t rest = r;
      for (std::size_t k = pd.size(); k-- > 0;) {
        key[k] = (*pd[k])[rest % pd[k]->size()];
        rest /= pd[k]->size();
      }
      table[join(key, ",")] = v.cpt.rows[r];
    }
    vars.push_back({{"name", v.name}, {"domain", v.domain}, {"parents", v.cpt.parents}, {"table", table}});
  }
  json j{{"variables", vars}, {"latent", scm.latent_set()}};
  json binding = json::object();
  for (const auto& [n, iri] : scm.binding()) binding[n] = iri.value;
  j["binding"] = binding;
  return j;
}

DiscreteScm load_scm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::NotFound, "cannot read model " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidScm, std::string("bad model JSON: ") + e.what());
  }
  return scm_from_json(j);
}

double Distribution::total() const {
  double s = 0;
  for (double m : mass) s += m;
  return s;
}

std::vector<std::size_t> Distribution::values(std::size_t flat) const {
  std::vector<std::size_t> out(variables.size());
  for (std::size_t k = variables.size(); k-- > 0;) {
    out[k] = flat % domains[k].size();
    flat /= domains[k].size();
  }
  return out;
}

Assignment Distribution::assignment(std::size_t flat) const {
  auto v = values(flat);
  Assignment a;
  for (std::size_t k = 0; k < variables.size(); ++k) a[variables[k]] = domains[k][v[k]];
  return a;
}

std::size_t Distribution::position(const std::string& var) const {
  auto it = std::find(variables.begin(), variables.end(), var);
  if (it == variables.end()) throw Error(ErrorCode::UnknownVariable, "no variable " + var);
  return static_cast<std::size_t>(it - variables.begin());
}

namespace {

// (position, value index) pairs; nullopt when a label is outside its domain.
std::optional<std::vector<std::pair<std::size_t, std::size_t>>> resolve(const Distribution& d,
                                                                         const Assignment& a) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [var, value] : a) {
    auto k = d.position(var);
    const auto& dom = d.domains[k];
    auto it = std::find(dom.begin(), dom.end(), value);
    if (it == dom.end()) return std::nullopt;
    out.emplace_back(k, static_cast<std::size_t>(it - dom.begin()));
  }
  return out;
}

}  // namespace

double Distribution::probability(const Assignment& partial) const {
  auto fixed = resolve(*this, partial);
  if (!fixed) return 0.0;
  double s = 0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] == 0.0) continue;
    auto v = values(i);
    bool match = std::all_of(fixed->begin(), fixed->end(),
                             [&](const auto& kv) { return v[kv.first] == kv.second; });
    if (match) s += mass[i];
  }
  return s;
}

json distribution_to_json(const Distribution& d) {
  json j = json::object();
  for (std::size_t i = 0; i < d.mass.size(); ++i) {
    auto v = d.values(i);
    std::vector<std::string> parts;
    for (std::size_t k = 0; k < d.variables.size(); ++k) {
      parts.push_back(d.variables[k] + "=" + d.domains[k][v[k]]);
    }
    j[join(parts, ",")] = d.mass[i];
  }
  return j;
}

Assignment parse_assignment(const std::string& text) {
  Assignment a;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    auto part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;
    if (part.empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::InvalidRequest, "expected VAR=VALUE, got " + part);
    }
    a[part.substr(0, eq)] = part.substr(eq + 1);
  }
  return a;
}

Distribution joint(const DiscreteScm& scm) {
  Distribution d;
  std::vector<std::size_t> sizes;
  for (const auto& v : scm.variables()) {
    d.variables.push_back(v.name);
    d.domains.push_back(v.domain);
    sizes.push_back(v.domain.size());
  }
  d.mass.assign(checked_product(sizes), 0.0);
  for (std::size_t i = 0; i < d.mass.size(); ++i) {
    auto vals = d.values(i);
    double p = 1.0;
    for (std::size_t k = 0; k < vals.size() && p != 0.0; ++k) p *= scm.row(k, vals)[vals[k]];
    d.mass[i] = p;
  }
  return d;
}

Distribution marginal(const Distribution& d, const std::vector<std::string>& vars) {
  Distribution out;
  std::vector<std::size_t> pos;
  std::vector<std::size_t> sizes;
  for (const auto& v : vars) {
    auto k = d.position(v);
    pos.push_back(k);
    out.variables.push_back(v);
    out.domains.push_back(d.domains[k]);
    sizes.push_back(d.domains[k].size());
  }
  out.mass.assign(checked_product(sizes), 0.0);
  for (std::size_t i = 0; i < d.mass.size(); ++i) {
    auto v = d.values(i);
    std::size_t flat = 0;
    for (std::size_t k = 0; k < pos.size(); ++k) flat = flat * sizes[k] + v[pos[k]];
    out.mass[flat] += d.mass[i];
  }
  return out;
}

Distribution conditional(const Distribution& d, const std::vector<std::string>& targets,
                         const Assignment& given) {
  auto fixed = resolve(d, given);
  if (!fixed) throw Error(ErrorCode::ZeroProbabilityEvidence, "evidence outside the domain");
  Distribution restricted = d;
  for (std::size_t i = 0; i < d.mass.size(); ++i) {
    auto v = d.values(i);
    bool match = std::all_of(fixed->begin(), fixed->end(),
                             [&](const auto& kv) { return v[kv.first] == kv.second; });
    if (!match) restricted.mass[i] = 0.0;
  }
  double z = restricted.total();
  if (z <= 0.0) throw Error(ErrorCode::ZeroProbabilityEvidence, "evidence has probability zero");
  auto out = marginal(restricted, targets);
  for (auto& m : out.mass) m /= z;
  return out;
}

Distribution observational(const DiscreteScm& scm) {
  std::vector<std::string> observed;
  for (const auto& v : scm.variables()) {
    if (!scm.latent(v.name)) observed.push_back(v.name);
  }
  return marginal(joint(scm), observed);
}

DiscreteScm intervene(const DiscreteScm& scm, const Assignment& action) {
  for (const auto& [var, value] : action) scm.value_index(var, value);
  DiscreteScm out;
  for (const auto& v : scm.variables()) {
    auto it = action.find(v.name);
    if (it == action.end()) {
      out.add_variable(v.name, v.domain, v.cpt.parents, v.cpt.rows);
    } else {
      std::vector<double> point(v.domain.size(), 0.0);
      point[scm.value_index(v.name, it->second)] = 1.0;
      out.add_variable(v.name, v.domain, {}, {point});
    }
  }
  for (const auto& l : scm.latent_set()) out.set_latent(l);
  for (const auto& [n, iri] : scm.binding()) out.bind(n, iri);
  return out;
}

double EffectTable::max_abs_diff(const EffectTable& other) const {
  if (per_value.size() != other.per_value.size()) return INFINITY;
  double worst = 0;
  for (std::size_t c = 0; c < per_value.size(); ++c) {
    const auto& a = per_value[c].mass;
    const auto& b = other.per_value[c].mass;
    if (a.size() != b.size()) return INFINITY;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

json effect_table_to_json(const EffectTable& t) {
  json per = json::object();
  for (std::size_t c = 0; c < t.cause_values.size(); ++c) {
    per[t.cause + "=" + t.cause_values[c]] = distribution_to_json(t.per_value[c]);
  }
  return {{"cause", t.cause}, {"effect", t.effect}, {"effects", per}};
}

EffectTable interventional_effect(const DiscreteScm& scm, const std::string& cause,
                                  const std::string& effect) {
  EffectTable t{cause, effect, scm.variable(cause).domain, {}};
  scm.index(effect);
  for (const auto& c : t.cause_values) {
    t.per_value.push_back(marginal(joint(intervene(scm, {{cause, c}})), {effect}));
  }
  return t;
}

double evaluate_estimand(const Expr& e, const Distribution& obs, const Assignment& env) {
  switch (e.kind) {
    case Expr::Kind::Prob: {
      auto bind = [&](const std::vector<VarRef>& refs, Assignment& into) {
        for (const auto& r : refs) {
          auto it = env.find(r.symbol);
          if (it == env.end()) throw Error(ErrorCode::InvalidRequest, "unbound symbol " + r.symbol);
          auto [pos, fresh] = into.emplace(r.var, it->second);
          if (!fresh && pos->second != it->second) return false;
        }
        return true;
      };
      Assignment given;
      if (!bind(e.given, given)) throw Error(ErrorCode::ZeroProbabilityEvidence, "contradictory conditioning");
      Assignment all = given;
      if (!bind(e.vars, all)) return 0.0;
      double den = e.given.empty() ? 1.0 : obs.probability(given);
      if (den <= 0.0) throw Error(ErrorCode::ZeroProbabilityEvidence, "conditioning event has probability zero");
      return obs.probability(all) / den;
    }
    case Expr::Kind::Sum: {
      std::vector<std::size_t> pos;
      std::vector<std::size_t> sizes;
      for (const auto& r : e.vars) {
        pos.push_back(obs.position(r.var));
        sizes.push_back(obs.domains[pos.back()].size());
      }
      std::size_t n = checked_product(sizes);
      double s = 0;
      Assignment inner = env;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t rest = i;
        for (std::size_t k = e.vars.size(); k-- > 0;) {
          inner[e.vars[k].symbol] = obs.domains[pos[k]][rest % sizes[k]];
          rest /= sizes[k];
        }
        s += evaluate_estimand(e.children.front(), obs, inner);
      }
      return s;
    }
    case Expr::Kind::Product: {
      // right to left: marginal factors first, so zero-weight strata never
      // evaluate their conditionals
      double p = 1.0;
      for (auto it = e.children.rbegin(); it != e.children.rend(); ++it) {
        double f = evaluate_estimand(*it, obs, env);
        if (f == 0.0) return 0.0;
        p *= f;
      }
      return p;
    }
    case Expr::Kind::Difference:
      return evaluate_estimand(e.children[0], obs, env) - evaluate_estimand(e.children[1], obs, env);
  }
  return 0.0;
}

namespace {

EffectTable evaluate_table(const DiscreteScm& scm, const std::string& cause,
                           const std::string& effect, const Expr& expr) {
  auto obs = observational(scm);
  EffectTable t{cause, effect, scm.variable(cause).domain, {}};
  const auto& effect_domain = scm.variable(effect).domain;
  for (const auto& c : t.cause_values) {
    Distribution d{{effect}, {effect_domain}, {}};
    for (const auto& y : effect_domain) {
      d.mass.push_back(evaluate_estimand(expr, obs, {{cause, c}, {effect, y}}));
    }
    t.per_value.push_back(std::move(d));
  }
  return t;
}

}  // namespace

EffectTable estimate_backdoor(const DiscreteScm& scm, const std::string& cause,
                              const std::string& effect, const VarSet& z) {
  auto dag = scm.dag();
  if (!is_backdoor_set(dag, cause, effect, z)) {
    throw Error(ErrorCode::InvalidAdjustmentSet, "not a valid back-door set");
  }
  return evaluate_table(scm, cause, effect, backdoor_expr(cause, effect, z));
}

EffectTable estimate_frontdoor(const DiscreteScm& scm, const std::string& cause,
                               const std::string& effect, const VarSet& mediators) {
  auto dag = scm.dag();
  if (!is_frontdoor_set(dag, cause, effect, mediators)) {
    throw Error(ErrorCode::InvalidMediatorSet, "mediators fail the front-door conditions");
  }
  return evaluate_table(scm, cause, effect, frontdoor_expr(cause, effect, mediators));
}

json mediation_to_json(const MediationResult& r) {
  return {{"te", r.te},
          {"nde", r.nde},
          {"nie", r.nie},
          {"baseline", r.baseline},
          {"treated", r.treated},
          {"assumptions_checked", r.assumptions_checked}};
}

MediationResult mediation_effects(const DiscreteScm& scm, const std::string& cause,
                                  const std::string& mediator, const std::string& effect,
                                  const std::string& baseline, const std::string& treated) {
  auto dag = scm.dag();
  auto c = dag.index(cause);
  auto m = dag.index(mediator);
  auto e = dag.index(effect);
  if (!dag.has_edge(c, m) || !dag.has_edge(m, e)) {
    throw Error(ErrorCode::NotAChain, cause + " -> " + mediator + " -> " + effect + " is not a chain");
  }
  scm.value_index(cause, baseline);
  scm.value_index(cause, treated);
  std::vector<double> y_values;
  for (const auto& label : scm.variable(effect).domain) {
    try {
      std::size_t used = 0;
      double v = std::stod(label, &used);
      if (used != label.size()) throw std::invalid_argument(label);
      y_values.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::NonNumericOutcome, effect + " value " + label + " is not numeric");
    }
  }

  auto obs = marginal(observational(scm), {cause, mediator, effect});
  const auto& m_domain = scm.variable(mediator).domain;
  const auto& y_domain = scm.variable(effect).domain;
  auto expect = [&](const std::string& cv, const std::string& mv) {
    double den = obs.probability({{cause, cv}, {mediator, mv}});
    if (den <= 0.0) return 0.0;
    double s = 0;
    for (std::size_t k = 0; k < y_domain.size(); ++k) {
      s += y_values[k] * (obs.probability({{cause, cv}, {mediator, mv}, {effect, y_domain[k]}}) / den);
    }
    return s;
  };
  auto p_m = [&](const std::string& mv, const std::string& cv) {
    double den = obs.probability({{cause, cv}});
    if (den <= 0.0) throw Error(ErrorCode::ZeroProbabilityEvidence, cause + "=" + cv + " never observed");
    return obs.probability({{cause, cv}, {mediator, mv}}) / den;
  };

  MediationResult r;
  r.baseline = baseline;
  r.treated = treated;
  for (const auto& mv : m_domain) {
    r.nde += (expect(treated, mv) - expect(baseline, mv)) * p_m(mv, baseline);
    r.nie += expect(baseline, mv) * (p_m(mv, treated) - p_m(mv, baseline));
  }
  auto mean_under = [&](const std::string& cv) {
    auto d = marginal(joint(intervene(scm, {{cause, cv}})), {effect});
    double s = 0;
    for (std::size_t k = 0; k < y_values.size(); ++k) s += y_values[k] * d.mass[k];
    return s;
  };
  r.te = mean_under(treated) - mean_under(baseline);

  using Mask = Dag::Mask;
  Mask cb = Mask{1} << c, mb = Mask{1} << m, eb = Mask{1} << e;
  bool no_ce_confounding = d_separated(dag.without_outgoing(cb), cb, eb, 0);
  bool no_me_confounding = d_separated(dag.without_outgoing(mb), mb, eb, cb);
  bool no_affected_confounder = true;
  Dag without_m = dag.without_incoming(mb).without_outgoing(mb);
  Mask affected = dag.descendants(cb) & ~(cb | mb | eb);
  for (std::size_t w = 0; w < dag.size(); ++w) {
    Mask wb = Mask{1} << w;
    if (!(affected & wb)) continue;
    if ((dag.ancestors(mb) & wb) && (without_m.ancestors(eb) & wb)) no_affected_confounder = false;
  }
  r.assumptions_checked = {no_ce_confounding, no_me_confounding, no_affected_confounder};
  return r;
}

namespace {

bool is_point_mass(const std::vector<double>& row) {
  int ones = 0;
  for (double p : row) {
    if (p == 1.0) ++ones;
    else if (p != 0.0) return false;
  }
  return ones == 1;
}

std::size_t point_value(const std::vector<double>& row) {
  return static_cast<std::size_t>(std::find(row.begin(), row.end(), 1.0) - row.begin());
}

}  // namespace

bool is_canonical_form(const DiscreteScm& scm) {
  for (const auto& v : scm.variables()) {
    if (v.cpt.parents.empty()) continue;
    if (!std::all_of(v.cpt.rows.begin(), v.cpt.rows.end(), is_point_mass)) return false;
  }
  return true;
}

Distribution counterfactual(const DiscreteScm& scm, const CounterfactualQuery& q) {
  for (const auto& [var, value] : q.evidence) scm.value_index(var, value);
  for (const auto& [var, value] : q.intervention) scm.value_index(var, value);
  auto qi = scm.index(q.query);
  if (!is_canonical_form(scm)) {
    throw Error(ErrorCode::NotDeterministicForm,
                "non-root variables must be deterministic given their parents");
  }
  const auto& vars = scm.variables();
  std::vector<std::size_t> roots;
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].cpt.parents.empty()) {
      roots.push_back(i);
      sizes.push_back(vars[i].domain.size());
    }
  }
  std::size_t n = checked_product(sizes);

  std::vector<std::optional<std::size_t>> evidence(vars.size());
  std::vector<std::optional<std::size_t>> action(vars.size());
  for (const auto& [var, value] : q.evidence) evidence[scm.index(var)] = scm.value_index(var, value);
  for (const auto& [var, value] : q.intervention) action[scm.index(var)] = scm.value_index(var, value);

  Distribution out{{q.query}, {vars[qi].domain}, std::vector<double>(vars[qi].domain.size(), 0.0)};
  double total = 0;
  std::vector<std::size_t> factual(vars.size());
  std::vector<std::size_t> world(vars.size());
  for (std::size_t u = 0; u < n; ++u) {
    double weight = 1.0;
    std::size_t rest = u;
    for (std::size_t k = roots.size(); k-- > 0;) {
      factual[roots[k]] = rest % sizes[k];
      rest /= sizes[k];
    }
    for (auto r : roots) weight *= vars[r].cpt.rows[0][factual[r]];
    if (weight == 0.0) continue;

    // abduction: keep noise settings that reproduce the evidence
    bool consistent = true;
    for (std::size_t i = 0; i < vars.size() && consistent; ++i) {
      if (!vars[i].cpt.parents.empty()) factual[i] = point_value(scm.row(i, factual));
      if (evidence[i] && *evidence[i] != factual[i]) consistent = false;
    }
    if (!consistent) continue;
    total += weight;

    // action + prediction in the mutilated model
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (action[i]) world[i] = *action[i];
      else if (vars[i].cpt.parents.empty()) world[i] = factual[i];
      else world[i] = point_value(scm.row(i, world));
    }
    out.mass[world[qi]] += weight;
  }
  if (total <= 0.0) throw Error(ErrorCode::ZeroProbabilityEvidence, "evidence has probability zero");
  for (auto& m : out.mass) m /= total;
  return out;
}

DiscreteScm to_canonical_form(const DiscreteScm& scm) {
  DiscreteScm out;
  for (const auto& v : scm.variables()) {
    bool stochastic = !v.cpt.parents.empty() &&
                      !std::all_of(v.cpt.rows.begin(), v.cpt.rows.end(), is_point_mass);
    if (!stochastic) {
      out.add_variable(v.name, v.domain, v.cpt.parents, v.cpt.rows);
      continue;
    }
    std::string noise = "U_" + v.name;
    while (scm.has(noise) || out.has(noise)) noise += "_";

    const std::size_t configs = v.cpt.rows.size();
    const std::size_t d = v.domain.size();
    std::vector<std::size_t> radix(configs, d);
    std::size_t functions = checked_product(radix);
    std::vector<std::string> labels;
    std::vector<double> prior;
    std::vector<std::vector<std::size_t>> table;  // function -> value per config
    for (std::size_t f = 0; f < functions; ++f) {
      std::vector<std::size_t> pick(configs);
      std::size_t rest = f;
      for (std::size_t k = configs; k-- > 0;) {
        pick[k] = rest % d;
        rest /= d;
      }
      double p = 1.0;
      for (std::size_t k = 0; k < configs && p != 0.0; ++k) p *= v.cpt.rows[k][pick[k]];
      if (p == 0.0) continue;
      std::vector<std::string> parts;
      for (auto x : pick) parts.push_back(v.domain[x]);
      labels.push_back(join(parts, "|"));
      prior.push_back(p);
      table.push_back(pick);
    }
    out.add_variable(noise, labels, {}, {prior});
    out.set_latent(noise);

    auto parents = v.cpt.parents;
    parents.push_back(noise);
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < configs; ++k) {
      for (std::size_t f = 0; f < table.size(); ++f) {
        std::vector<double> row(d, 0.0);
        row[table[f][k]] = 1.0;
        rows.push_back(row);
      }
    }
    out.add_variable(v.name, v.domain, parents, rows);
  }
  for (const auto& l : scm.latent_set()) out.set_latent(l);
  for (const auto& [n, iri] : scm.binding()) out.bind(n, iri);
  return out;
}

CompoundUnit build_potential_outcome_unit(KnowledgeGraph& kg, const Iri& observed_unit,
                                          const Distribution& result, const Iri& universal_unit,
                                          const Assignment& intervention, const Iri& method) {
  for (const auto& id : {observed_unit, universal_unit}) {
    if (!kg.is_unit(id)) throw Error(ErrorCode::DanglingMember, "no unit " + id.value);
  }
  if (result.variables.size() != 1) {
    throw Error(ErrorCode::InvalidRequest, "expected a distribution over one outcome variable");
  }
  std::vector<std::string> parts;
  for (const auto& [var, value] : intervention) parts.push_back(var + " = " + value);
  std::string do_text = "do(" + join(parts, ", ") + ")";

  const auto& var = result.variables.front();
  Iri outcome_class = var.find(':') != std::string::npos ? Iri(var) : vocab::su("variable/" + var);
  std::string base = "urn:su:outcome:" +
                     sha256_hex(observed_unit.value + "\n" + universal_unit.value + "\n" + do_text + "\n" + var)
                         .substr(0, 32);

  std::vector<Triple> content;
  double best = 0;
  for (std::size_t i = 0; i < result.mass.size(); ++i) {
    double p = result.mass[i];
    best = std::max(best, p);
    if (p <= 0.0) continue;
    Iri r(base + "/" + result.domains[0][i]);
    content.push_back({r, vocab::kType, vocab::kSomeInstanceResource});
    content.push_back({r, vocab::kType, outcome_class});
    content.push_back({r, vocab::kHasOutcomeValue, plain_literal(result.domains[0][i])});
    content.push_back({r, vocab::kHasProbability, typed_literal(format_double(p), vocab::xsd("double"))});
  }
  auto cf = kg.mint_statement_unit(content,
                                   {vocab::kCounterfactualStatementUnit, vocab::kContingentStatementUnit},
                                   {{vocab::kCounterfactualUnder, universal_unit},
                                    {vocab::kIntervention, plain_literal(do_text)},
                                    {vocab::kOutcomeVariable, outcome_class},
                                    {vocab::kDerivationMethod, method}});
  return kg.mint_compound_unit(
      {observed_unit, cf.id, universal_unit}, {vocab::kPotentialOutcomeCompoundUnit},
      {{vocab::kIntervention, plain_literal(do_text)},
       {vocab::kDerivationMethod, method},
       {vocab::kUncertainty, typed_literal(format_double(1.0 - best), vocab::xsd("double"))}});
}

}  // namespace su
