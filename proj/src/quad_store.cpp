#include "su/quad_store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include "su/error.hpp"

namespace su {

namespace {

bool matches(const Quad& q, const QuadPattern& p) {
  return (!p.s || q.s == *p.s) && (!p.p || q.p == *p.p) && (!p.o || q.o == *p.o) &&
         (!p.g || q.g == *p.g);
}

// Smallest possible Term/Iri for range lower bounds.
const Iri kMinIri{};
const Term kMinTerm{Iri{}};

}  // namespace

bool QuadStore::insert(const Quad& q) {
  if (!by_graph_.insert(q).second) return false;
  by_subject_.insert(q);
  return true;
}

void QuadStore::insert(const std::vector<Quad>& quads) {
  for (const auto& q : quads) insert(q);
}

bool QuadStore::erase(const Quad& q) {
  if (by_graph_.erase(q) == 0) return false;
  by_subject_.erase(q);
  return true;
}

std::size_t QuadStore::erase_graph(const Iri& g) {
  auto quads = graph(g);
  for (const auto& q : quads) erase(q);
  return quads.size();
}

std::vector<Quad> QuadStore::match(const QuadPattern& pattern) const {
  std::vector<Quad> out;
  if (pattern.g) {
    Quad lo{kMinIri, kMinIri, kMinTerm, *pattern.g};
    if (pattern.s) lo.s = *pattern.s;
    for (auto it = by_graph_.lower_bound(lo); it != by_graph_.end() && it->g == *pattern.g;
         ++it) {
      if (pattern.s && it->s != *pattern.s) break;
      if (matches(*it, pattern)) out.push_back(*it);
    }
    return out;
  }
  if (pattern.s) {
    Quad lo{*pattern.s, kMinIri, kMinTerm, kMinIri};
    if (pattern.p) lo.p = *pattern.p;
    for (auto it = by_subject_.lower_bound(lo); it != by_subject_.end() && it->s == *pattern.s;
         ++it) {
      if (pattern.p && it->p != *pattern.p) break;
      if (matches(*it, pattern)) out.push_back(*it);
    }
    return out;
  }
  for (const auto& q : by_graph_) {
    if (matches(q, pattern)) out.push_back(q);
  }
  return out;
}

bool QuadStore::has_graph(const Iri& g) const {
  auto it = by_graph_.lower_bound(Quad{kMinIri, kMinIri, kMinTerm, g});
  return it != by_graph_.end() && it->g == g;
}

std::vector<Iri> QuadStore::graph_names() const {
  std::vector<Iri> out;
  for (const auto& q : by_graph_) {
    if (out.empty() || out.back() != q.g) out.push_back(q.g);
  }
  return out;
}

std::vector<Term> QuadStore::objects(const Iri& s, const Iri& p,
                                     const std::optional<Iri>& g) const {
  std::vector<Term> out;
  for (const auto& q : match({.s = s, .p = p, .g = g})) {
    if (out.empty() || out.back() != q.o) out.push_back(q.o);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Iri> QuadStore::subjects(const Iri& p, const Term& o) const {
  std::vector<Iri> out;
  for (const auto& q : match({.p = p, .o = o})) out.push_back(q.s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Quad> match_pattern(const QuadStore& store, const std::optional<Iri>& s,
                                const std::optional<Iri>& p, const std::optional<Term>& o,
                                const std::optional<Iri>& g) {
  return store.match({s, p, o, g});
}

QuadStore load_nquads_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::StoreLoadError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return QuadStore(parse_nquads(buf.str()));
}

void save_nquads_file(const QuadStore& store, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::StoreLoadError, "cannot write " + path);
  out << store.to_nquads();
}

}  // namespace su
