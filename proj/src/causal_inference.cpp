#include "su/causal_inference.hpp"

#include <algorithm>
#include <bit>

#include "su/error.hpp"
#include "su/vocab.hpp"

namespace su {

using nlohmann::json;
using Mask = Dag::Mask;

namespace {

Mask bit(std::size_t i) { return Mask{1} << i; }

template <typename F>
void for_each_bit(Mask m, F&& f) {
  while (m) {
    auto i = static_cast<std::size_t>(std::countr_zero(m));
    f(i);
    m &= m - 1;
  }
}

}  // namespace

std::size_t Dag::add_node(const std::string& name, bool is_latent) {
  if (auto it = index_.find(name); it != index_.end()) {
    if (is_latent) latent_ |= bit(it->second);
    return it->second;
  }
  if (names_.size() >= kMaxNodes) {
    throw Error(ErrorCode::DomainTooLarge, "graphs are limited to 64 variables");
  }
  std::size_t i = names_.size();
  names_.push_back(name);
  index_.emplace(name, i);
  parents_.push_back(0);
  children_.push_back(0);
  if (is_latent) latent_ |= bit(i);
  return i;
}

void Dag::add_edge(const std::string& from, const std::string& to) {
  auto a = add_node(from);
  auto b = add_node(to);
  children_[a] |= bit(b);
  parents_[b] |= bit(a);
}

void Dag::set_latent(const std::string& name, bool is_latent) {
  auto i = index(name);
  if (is_latent) latent_ |= bit(i);
  else latent_ &= ~bit(i);
}

std::optional<std::size_t> Dag::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Dag::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw Error(ErrorCode::UnknownVariable, "no variable " + name);
  return *i;
}

std::size_t Dag::edge_count() const {
  std::size_t n = 0;
  for (auto c : children_) n += static_cast<std::size_t>(std::popcount(c));
  return n;
}

std::vector<std::size_t> Dag::topological_order() const {
  std::vector<int> indegree(size());
  for (std::size_t i = 0; i < size(); ++i) indegree[i] = std::popcount(parents_[i]);
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < size(); ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    // smallest index first keeps the order stable
    auto it = std::min_element(ready.begin(), ready.end());
    auto v = *it;
    ready.erase(it);
    order.push_back(v);
    for_each_bit(children_[v], [&](std::size_t c) {
      if (--indegree[c] == 0) ready.push_back(c);
    });
  }
  if (order.size() != size()) throw Error(ErrorCode::CyclicGraph, "graph has a cycle");
  return order;
}

bool Dag::acyclic() const {
  try {
    topological_order();
    return true;
  } catch (const Error&) {
    return false;
  }
}

Mask Dag::ancestors(Mask of) const {
  Mask seen = of;
  Mask frontier = of;
  while (frontier) {
    Mask next = 0;
    for_each_bit(frontier, [&](std::size_t i) { next |= parents_[i]; });
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

Mask Dag::descendants(Mask of) const {
  Mask seen = of;
  Mask frontier = of;
  while (frontier) {
    Mask next = 0;
    for_each_bit(frontier, [&](std::size_t i) { next |= children_[i]; });
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

Dag Dag::without_incoming(Mask m) const {
  Dag d = *this;
  for_each_bit(m, [&](std::size_t i) {
    for_each_bit(d.parents_[i], [&](std::size_t p) { d.children_[p] &= ~bit(i); });
    d.parents_[i] = 0;
  });
  return d;
}

Dag Dag::without_outgoing(Mask m) const {
  Dag d = *this;
  for_each_bit(m, [&](std::size_t i) {
    for_each_bit(d.children_[i], [&](std::size_t c) { d.parents_[c] &= ~bit(i); });
    d.children_[i] = 0;
  });
  return d;
}

Mask Dag::mask(const VarSet& vars) const {
  Mask m = 0;
  for (const auto& v : vars) m |= bit(index(v));
  return m;
}

VarSet Dag::vars(Mask m) const {
  VarSet out;
  for_each_bit(m, [&](std::size_t i) { out.insert(names_[i]); });
  return out;
}

std::vector<std::pair<std::string, std::string>> Dag::edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for_each_bit(children_[i], [&](std::size_t c) { out.emplace_back(names_[i], names_[c]); });
  }
  std::sort(out.begin(), out.end());
  return out;
}

Dag dag_from_network(const CausalNetwork& net) {
  Dag dag;
  for (const auto& v : net.variables) dag.add_node(v.value);
  for (const auto& e : net.edges) dag.add_edge(e.source.value, e.target.value);
  return dag;
}

std::vector<Path> enumerate_paths(const Dag& dag, const std::string& x, const std::string& y) {
  auto xi = dag.index(x);
  auto yi = dag.index(y);
  std::vector<Path> out;
  if (xi == yi) return out;
  std::vector<std::size_t> nodes{xi};
  std::vector<bool> forward;
  Mask on_path = bit(xi);
  auto walk = [&](auto&& self, std::size_t at) -> void {
    if (at == yi) {
      Path p;
      for (auto n : nodes) p.nodes.push_back(dag.name(n));
      p.forward = forward;
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t n = 0; n < dag.size(); ++n) {
      if (on_path & bit(n)) continue;
      bool out_edge = dag.has_edge(at, n);
      bool in_edge = dag.has_edge(n, at);
      for (bool fwd : {true, false}) {
        if (fwd ? !out_edge : !in_edge) continue;
        on_path |= bit(n);
        nodes.push_back(n);
        forward.push_back(fwd);
        self(self, n);
        forward.pop_back();
        nodes.pop_back();
        on_path &= ~bit(n);
      }
    }
  };
  walk(walk, xi);
  return out;
}

bool path_blocked(const Path& path, const VarSet& z, const Dag& dag) {
  Mask zm = dag.mask(z);
  for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) {
    auto v = dag.index(path.nodes[i]);
    bool into_from_left = path.forward[i - 1];
    bool into_from_right = !path.forward[i];
    if (into_from_left && into_from_right) {
      if ((dag.descendants(bit(v)) & zm) == 0) return true;
    } else if (zm & bit(v)) {
      return true;
    }
  }
  return false;
}

bool d_separated(const Dag& dag, Mask x, Mask y, Mask z) {
  x &= ~z;
  y &= ~z;
  if (x & y) return false;
  if (!x || !y) return true;

  Mask conditioned_anc = dag.ancestors(z);
  // visited[0]: arrived from a child (moving up); visited[1]: from a parent
  Mask visited[2] = {0, 0};
  Mask reachable = 0;
  std::vector<std::pair<std::size_t, int>> stack;
  for_each_bit(x, [&](std::size_t i) { stack.emplace_back(i, 0); });
  while (!stack.empty()) {
    auto [v, dir] = stack.back();
    stack.pop_back();
    if (visited[dir] & bit(v)) continue;
    visited[dir] |= bit(v);
    bool in_z = z & bit(v);
    if (!in_z) reachable |= bit(v);
    if (dir == 0) {
      if (in_z) continue;
      for_each_bit(dag.parents(v), [&](std::size_t p) { stack.emplace_back(p, 0); });
      for_each_bit(dag.children(v), [&](std::size_t c) { stack.emplace_back(c, 1); });
    } else {
      if (!in_z) {
        for_each_bit(dag.children(v), [&](std::size_t c) { stack.emplace_back(c, 1); });
      }
      if (conditioned_anc & bit(v)) {
        for_each_bit(dag.parents(v), [&](std::size_t p) { stack.emplace_back(p, 0); });
      }
    }
  }
  return (reachable & y) == 0;
}

bool d_separated(const Dag& dag, const std::string& x, const std::string& y, const VarSet& z) {
  auto xi = dag.index(x);
  auto yi = dag.index(y);
  Mask zm = dag.mask(z);
  if ((zm & bit(xi)) || (zm & bit(yi))) {
    throw Error(ErrorCode::OverlappingSets, "conditioning set contains an endpoint");
  }
  if (xi == yi) return false;
  return d_separated(dag, bit(xi), bit(yi), zm);
}

bool is_backdoor_set(const Dag& dag, const std::string& cause, const std::string& effect,
                     const VarSet& z) {
  auto c = dag.index(cause);
  auto e = dag.index(effect);
  Mask zm = dag.mask(z);
  if (zm & (dag.descendants(bit(c)) | bit(e) | dag.latent_mask())) return false;
  return d_separated(dag.without_outgoing(bit(c)), bit(c), bit(e), zm);
}

namespace {

// Subsets of `pool` (sorted by name) of size k, in lexicographic name order.
template <typename F>
bool for_each_subset(const std::vector<std::size_t>& pool, int k, F&& f) {
  std::vector<std::size_t> pick(static_cast<std::size_t>(k));
  auto rec = [&](auto&& self, std::size_t start, std::size_t depth, Mask m) -> bool {
    if (depth == pick.size()) return f(m);
    for (std::size_t i = start; i + (pick.size() - depth) <= pool.size(); ++i) {
      if (self(self, i + 1, depth + 1, m | bit(pool[i]))) return true;
    }
    return false;
  };
  return rec(rec, 0, 0, 0);
}

std::vector<std::size_t> by_name(const Dag& dag, Mask m) {
  std::vector<std::size_t> out;
  for_each_bit(m, [&](std::size_t i) { out.push_back(i); });
  std::sort(out.begin(), out.end(), [&](auto a, auto b) { return dag.name(a) < dag.name(b); });
  return out;
}

}  // namespace

std::vector<AdjustmentSet> backdoor_sets(const Dag& dag, const std::string& cause,
                                         const std::string& effect, int max_size) {
  auto c = dag.index(cause);
  auto e = dag.index(effect);
  if (c == e) throw Error(ErrorCode::InvalidRequest, "cause and effect coincide");
  if (!dag.acyclic()) throw Error(ErrorCode::CyclicGraph, "graph has a cycle");
  Dag cut = dag.without_outgoing(bit(c));
  Mask pool_mask = dag.observed_mask() & ~dag.descendants(bit(c)) & ~bit(e);
  auto pool = by_name(dag, pool_mask);

  std::vector<Mask> found;
  for (int k = 0; k <= std::min<int>(max_size, static_cast<int>(pool.size())); ++k) {
    for_each_subset(pool, k, [&](Mask m) {
      for (auto f : found) {
        if ((f & m) == f) return false;
      }
      if (d_separated(cut, bit(c), bit(e), m)) found.push_back(m);
      return false;
    });
  }
  std::vector<AdjustmentSet> out;
  for (auto m : found) out.push_back({dag.vars(m), true});
  return out;
}

namespace {

bool directed_path_avoiding(const Dag& dag, std::size_t from, std::size_t to, Mask avoid) {
  Mask seen = bit(from);
  std::vector<std::size_t> stack{from};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for_each_bit(dag.children(v) & ~avoid & ~seen, [&](std::size_t c) {
      seen |= bit(c);
      stack.push_back(c);
    });
  }
  return false;
}

}  // namespace

bool is_frontdoor_set(const Dag& dag, const std::string& cause, const std::string& effect,
                      const VarSet& m) {
  auto c = dag.index(cause);
  auto e = dag.index(effect);
  Mask mm = dag.mask(m);
  if (!mm || (mm & (bit(c) | bit(e) | dag.latent_mask()))) return false;
  if (directed_path_avoiding(dag, c, e, mm)) return false;
  if (!d_separated(dag.without_outgoing(bit(c)), bit(c), mm, 0)) return false;
  return d_separated(dag.without_outgoing(mm), mm, bit(e), bit(c));
}

std::optional<VarSet> frontdoor_check(const Dag& dag, const std::string& cause,
                                      const std::string& effect) {
  auto c = dag.index(cause);
  auto e = dag.index(effect);
  if (!dag.acyclic()) throw Error(ErrorCode::CyclicGraph, "graph has a cycle");
  // only nodes on directed cause -> effect paths can intercept them
  Mask on_paths = dag.descendants(bit(c)) & dag.ancestors(bit(e)) & dag.observed_mask() &
                  ~bit(c) & ~bit(e);
  auto pool = by_name(dag, on_paths);
  std::optional<VarSet> result;
  for (int k = 1; k <= static_cast<int>(pool.size()) && !result; ++k) {
    for_each_subset(pool, k, [&](Mask m) {
      auto vars = dag.vars(m);
      if (is_frontdoor_set(dag, cause, effect, vars)) {
        result = vars;
        return true;
      }
      return false;
    });
  }
  return result;
}

bool is_instrument(const Dag& dag, const std::string& z, const std::string& cause,
                   const std::string& effect) {
  auto zi = dag.index(z);
  auto c = dag.index(cause);
  auto e = dag.index(effect);
  if (zi == c || zi == e || dag.latent(zi)) return false;
  if (!(dag.descendants(bit(zi)) & bit(c))) return false;
  if (directed_path_avoiding(dag, zi, e, bit(c))) return false;
  Mask confounders = 0;
  for_each_bit(dag.latent_mask(), [&](std::size_t u) {
    Mask d = dag.descendants(bit(u));
    if ((d & bit(c)) && (d & bit(e))) confounders |= bit(u);
  });
  if (confounders && !d_separated(dag, bit(zi), confounders, 0)) return false;
  return d_separated(dag.without_outgoing(bit(c)), bit(zi), bit(e), 0);
}

std::vector<std::string> find_instruments(const Dag& dag, const std::string& cause,
                                          const std::string& effect) {
  if (!dag.acyclic()) throw Error(ErrorCode::CyclicGraph, "graph has a cycle");
  std::vector<std::string> out;
  for (const auto& n : dag.names()) {
    if (is_instrument(dag, n, cause, effect)) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool rule_applicable(const Dag& dag, int rule, Mask y, Mask x, Mask z, Mask w) {
  if ((y & x) || (y & z) || (y & w) || (x & z) || (x & w) || (z & w)) {
    throw Error(ErrorCode::OverlappingSets, "do-calculus sets must be disjoint");
  }
  if (!z) return true;
  Dag gx = dag.without_incoming(x);
  switch (rule) {
    case 1: return d_separated(gx, y, z, x | w);
    case 2: return d_separated(gx.without_outgoing(z), y, z, x | w);
    case 3: {
      Mask zw = z & ~gx.ancestors(w);
      return d_separated(gx.without_incoming(zw), y, z, x | w);
    }
    default: break;
  }
  throw Error(ErrorCode::InvalidRequest, "rule must be 1, 2 or 3");
}

}  // namespace

bool do_rule_applicable(const Dag& dag, int rule, const VarSet& y, const VarSet& x,
                        const VarSet& z, const VarSet& w) {
  return rule_applicable(dag, rule, dag.mask(y), dag.mask(x), dag.mask(z), dag.mask(w));
}

Expr Expr::prob(std::vector<VarRef> targets, std::vector<VarRef> given) {
  Expr e;
  e.kind = Kind::Prob;
  e.vars = std::move(targets);
  e.given = std::move(given);
  return e;
}

Expr Expr::sum(std::vector<VarRef> over, Expr body) {
  if (over.empty()) return body;
  Expr e;
  e.kind = Kind::Sum;
  e.vars = std::move(over);
  e.children.push_back(std::move(body));
  return e;
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.size() == 1) return std::move(factors.front());
  Expr e;
  e.kind = Kind::Product;
  e.children = std::move(factors);
  return e;
}

Expr Expr::difference(Expr a, Expr b) {
  Expr e;
  e.kind = Kind::Difference;
  e.children.push_back(std::move(a));
  e.children.push_back(std::move(b));
  return e;
}

VarRef ref(const std::string& var) { return {var, var}; }
VarRef primed(const std::string& var) { return {var, var + "'"}; }

namespace {

std::string ref_text(const VarRef& r, const NameFn& name) {
  std::string suffix = r.symbol.size() > r.var.size() ? r.symbol.substr(r.var.size()) : "";
  return name(r.var) + suffix;
}

std::string join_refs(const std::vector<VarRef>& refs, const NameFn& name) {
  std::string out;
  for (const auto& r : refs) {
    if (!out.empty()) out += ",";
    out += ref_text(r, name);
  }
  return out;
}

}  // namespace

std::string render(const Expr& e, const NameFn& name) {
  switch (e.kind) {
    case Expr::Kind::Prob: {
      std::string out = "P(" + join_refs(e.vars, name);
      if (!e.given.empty()) out += "|" + join_refs(e.given, name);
      return out + ")";
    }
    case Expr::Kind::Sum:
      return "sum_{" + join_refs(e.vars, name) + "} " + render(e.children.front(), name);
    case Expr::Kind::Product: {
      std::string out;
      for (const auto& c : e.children) {
        if (!out.empty()) out += " * ";
        out += render(c, name);
      }
      return out;
    }
    case Expr::Kind::Difference:
      return "(" + render(e.children[0], name) + " - " + render(e.children[1], name) + ")";
  }
  return "";
}

json expr_to_json(const Expr& e) {
  auto refs = [](const std::vector<VarRef>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back({{"var", r.var}, {"symbol", r.symbol}});
    return a;
  };
  json j;
  switch (e.kind) {
    case Expr::Kind::Prob:
      j = {{"op", "prob"}, {"targets", refs(e.vars)}, {"given", refs(e.given)}};
      break;
    case Expr::Kind::Sum:
      j = {{"op", "sum"}, {"over", refs(e.vars)}, {"body", expr_to_json(e.children.front())}};
      break;
    case Expr::Kind::Product:
    case Expr::Kind::Difference: {
      json terms = json::array();
      for (const auto& c : e.children) terms.push_back(expr_to_json(c));
      j = {{"op", e.kind == Expr::Kind::Product ? "product" : "difference"}, {"terms", terms}};
      break;
    }
  }
  return j;
}

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::BackDoor: return "back-door";
    case Strategy::Rule2: return "rule2";
    case Strategy::FrontDoor: return "front-door";
    case Strategy::InstrumentalVariable: return "instrumental-variable";
    case Strategy::DoCalculus: return "do-calculus";
    case Strategy::Unidentified: return "unidentified";
  }
  return "unidentified";
}

std::string Estimand::text(const NameFn& name) const {
  if (expr) return render(*expr, name);
  std::string query = "P(" + name(effect) + "|do(" + name(cause) + "))";
  if (strategy == Strategy::InstrumentalVariable) {
    std::string zs;
    for (const auto& z : instruments) zs += (zs.empty() ? "" : ",") + name(z);
    return "iv{" + zs + "}: " + query;
  }
  return "unidentified: " + query;
}

namespace {

// Best-effort rewrite of P(y | do(x), w) into a do-free expression.
class DoSearch {
 public:
  explicit DoSearch(const Dag& dag) : dag_(dag) {}

  std::optional<Expr> run(Mask y, Mask x, Mask w, const std::map<std::size_t, std::string>& sym,
                          int depth) {
    if (!x) return Expr::prob(refs(y, sym), refs(w, sym));
    if (depth == 0) return std::nullopt;
    Key key{y, x, w, depth};
    if (failed_.count(key)) return std::nullopt;

    std::vector<std::size_t> xs;
    for_each_bit(x, [&](std::size_t i) { xs.push_back(i); });
    for (auto xi : xs) {
      Mask rest = x & ~bit(xi);
      if (rule_applicable(dag_, 3, y, rest, bit(xi), w)) {
        if (auto r = run(y, rest, w, sym, depth - 1)) return r;
      }
      if (rule_applicable(dag_, 2, y, rest, bit(xi), w)) {
        if (auto r = run(y, rest, w | bit(xi), sym, depth - 1)) return r;
      }
    }
    std::vector<std::size_t> ws;
    for_each_bit(w, [&](std::size_t i) { ws.push_back(i); });
    for (auto wi : ws) {
      Mask rest = w & ~bit(wi);
      if (rule_applicable(dag_, 1, y, x, bit(wi), rest)) {
        if (auto r = run(y, x, rest, sym, depth - 1)) return r;
      }
      if (rule_applicable(dag_, 2, y, x, bit(wi), rest)) {
        if (auto r = run(y, x | bit(wi), rest, sym, depth - 1)) return r;
      }
    }
    // sum_v P(y | do(x), w, v) P(v | do(x), w)
    Mask free = dag_.observed_mask() & ~(y | x | w);
    std::vector<std::size_t> vs;
    for_each_bit(free, [&](std::size_t i) { vs.push_back(i); });
    for (auto v : vs) {
      auto inner = sym;
      inner[v] = fresh_symbol(v, sym);
      auto a = run(y, x, w | bit(v), inner, depth - 1);
      if (!a) continue;
      auto b = run(bit(v), x, w, inner, depth - 1);
      if (!b) continue;
      return Expr::sum({VarRef{dag_.name(v), inner[v]}}, Expr::product({*a, *b}));
    }
    failed_.insert(key);
    return std::nullopt;
  }

 private:
  using Key = std::tuple<Mask, Mask, Mask, int>;

  std::vector<VarRef> refs(Mask m, const std::map<std::size_t, std::string>& sym) const {
    std::vector<VarRef> out;
    for_each_bit(m, [&](std::size_t i) {
      auto it = sym.find(i);
      out.push_back({dag_.name(i), it == sym.end() ? dag_.name(i) : it->second});
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string fresh_symbol(std::size_t v, const std::map<std::size_t, std::string>& sym) const {
    std::string s = dag_.name(v);
    auto taken = [&](const std::string& cand) {
      return std::any_of(sym.begin(), sym.end(), [&](const auto& kv) { return kv.second == cand; });
    };
    while (taken(s)) s += "'";
    return s;
  }

  const Dag& dag_;
  std::set<Key> failed_;
};

std::vector<VarRef> refs_of(const VarSet& vars) {
  std::vector<VarRef> out;
  for (const auto& v : vars) out.push_back(ref(v));
  return out;
}

}  // namespace

Expr backdoor_expr(const std::string& cause, const std::string& effect, const VarSet& z) {
  auto given = refs_of(z);
  given.insert(given.begin(), ref(cause));
  if (z.empty()) return Expr::prob({ref(effect)}, given);
  return Expr::sum(refs_of(z), Expr::product({Expr::prob({ref(effect)}, given), Expr::prob(refs_of(z))}));
}

Expr frontdoor_expr(const std::string& cause, const std::string& effect, const VarSet& m) {
  auto ms = refs_of(m);
  auto inner_given = ms;
  inner_given.push_back(primed(cause));
  return Expr::sum(
      ms, Expr::product({Expr::prob(ms, {ref(cause)}),
                         Expr::sum({primed(cause)},
                                   Expr::product({Expr::prob({ref(effect)}, inner_given),
                                                  Expr::prob({primed(cause)})}))}));
}

Estimand identify_effect(const Dag& dag, const std::string& cause, const std::string& effect,
                         int max_adjustment_size, int search_depth) {
  if (!dag.acyclic()) throw Error(ErrorCode::CyclicGraph, "graph has a cycle");
  auto c = dag.index(cause);
  auto e = dag.index(effect);
  if (c == e) throw Error(ErrorCode::InvalidRequest, "cause and effect coincide");

  Estimand est;
  est.cause = cause;
  est.effect = effect;

  auto sets = backdoor_sets(dag, cause, effect, max_adjustment_size);
  if (!sets.empty()) {
    const auto& z = sets.front().variables;
    est.adjustment = z;
    est.strategy = z.empty() ? Strategy::Rule2 : Strategy::BackDoor;
    est.expr = backdoor_expr(cause, effect, z);
    return est;
  }

  if (auto m = frontdoor_check(dag, cause, effect)) {
    est.strategy = Strategy::FrontDoor;
    est.mediators = *m;
    est.expr = frontdoor_expr(cause, effect, *m);
    return est;
  }

  if (auto zs = find_instruments(dag, cause, effect); !zs.empty()) {
    est.strategy = Strategy::InstrumentalVariable;
    est.instruments = zs;
    return est;
  }

  DoSearch search(dag);
  std::map<std::size_t, std::string> sym{{c, cause}, {e, effect}};
  if (auto r = search.run(bit(e), bit(c), 0, sym, search_depth)) {
    est.strategy = Strategy::DoCalculus;
    est.expr = *r;
    return est;
  }
  est.strategy = Strategy::Unidentified;
  return est;
}

json estimand_to_json(const Estimand& e, const NameFn& name) {
  json j;
  j["cause"] = e.cause;
  j["effect"] = e.effect;
  j["strategy"] = strategy_name(e.strategy);
  j["identified"] = e.identified();
  j["text"] = e.text(name);
  j["expression"] = e.expr ? expr_to_json(*e.expr) : json(nullptr);
  if (e.strategy == Strategy::BackDoor || e.strategy == Strategy::Rule2) {
    j["adjustment_set"] = e.adjustment;
  }
  if (e.strategy == Strategy::FrontDoor) j["mediator_set"] = e.mediators;
  if (e.strategy == Strategy::InstrumentalVariable) j["instruments"] = e.instruments;
  if (e.perspective) j["perspective"] = e.perspective->value;
  return j;
}

void record_identification(KnowledgeGraph& kg, const CausalNetwork& net, Estimand& estimand,
                           const NameFn& name) {
  auto base = extract_perspective(kg, net, Iri(estimand.cause), Iri(estimand.effect));
  auto base_id = persist_perspective(kg, base);
  if (!base_id) return;

  std::optional<PerspectiveKind> kind;
  switch (estimand.strategy) {
    case Strategy::BackDoor:
    case Strategy::Rule2: kind = PerspectiveKind::BackDoor; break;
    case Strategy::FrontDoor: kind = PerspectiveKind::FrontDoor; break;
    case Strategy::InstrumentalVariable: kind = PerspectiveKind::InstrumentalVariable; break;
    default: break;
  }
  std::vector<std::pair<Iri, Term>> notes{
      {vocab::kIdentificationStrategy, plain_literal(std::string(strategy_name(estimand.strategy)))},
      {vocab::kHasEstimand, plain_literal(estimand.text(name))}};
  if (!kind) {
    for (const auto& [p, v] : notes) kg.annotate(*base_id, p, v);
    estimand.perspective = base_id;
    return;
  }
  PerspectiveUnit strat = base;
  strat.id.reset();
  strat.kind = *kind;
  strat.annotations = notes;
  for (const auto& v : estimand.adjustment) strat.annotations.emplace_back(vocab::kHasAdjustmentSet, Iri(v));
  for (const auto& v : estimand.mediators) strat.annotations.emplace_back(vocab::kHasMediatorSet, Iri(v));
  for (const auto& v : estimand.instruments) strat.annotations.emplace_back(vocab::kHasInstrument, Iri(v));
  strat.annotations.emplace_back(vocab::kDerivedByDoCalculusFrom, *base_id);
  estimand.perspective = persist_perspective(kg, strat);
}

}  // namespace su
