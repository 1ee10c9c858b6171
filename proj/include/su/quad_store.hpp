#pragma once

#include <optional>
#include <set>
#include <tuple>
#include <string>
#include <vector>

#include "su/rdf.hpp"

namespace su {

// Optional-bound quad pattern; unbound positions are wildcards.
struct QuadPattern {
  std::optional<Iri> s;
  std::optional<Iri> p;
  std::optional<Term> o;
  std::optional<Iri> g;
};

// In-memory quad set with range indexes by graph and by (subject, predicate).
// Set semantics: inserting a duplicate quad is a no-op.
class QuadStore {
 public:
  QuadStore() = default;
  explicit QuadStore(const std::vector<Quad>& quads) { insert(quads); }

  bool insert(const Quad& q);
  void insert(const std::vector<Quad>& quads);
  bool erase(const Quad& q);
  std::size_t erase_graph(const Iri& g);

  bool contains(const Quad& q) const { return by_graph_.count(q) > 0; }
  std::size_t size() const { return by_graph_.size(); }
  bool empty() const { return by_graph_.empty(); }

  std::vector<Quad> match(const QuadPattern& pattern) const;
  std::vector<Quad> graph(const Iri& g) const { return match({.g = g}); }
  bool has_graph(const Iri& g) const;
  std::vector<Iri> graph_names() const;

  // Objects of (s, p, *) in any graph, or only in `g` when given.
  std::vector<Term> objects(const Iri& s, const Iri& p,
                            const std::optional<Iri>& g = std::nullopt) const;
  // Subjects of (*, p, o) in any graph.
  std::vector<Iri> subjects(const Iri& p, const Term& o) const;

  std::vector<Quad> all() const { return {by_graph_.begin(), by_graph_.end()}; }

  // Canonical N-Quads of the whole store.
  std::string to_nquads() const { return write_nquads(all()); }

  bool operator==(const QuadStore& other) const { return by_graph_ == other.by_graph_; }

 private:
  struct GraphOrder {
    bool operator()(const Quad& a, const Quad& b) const {
      return std::tie(a.g, a.s, a.p, a.o) < std::tie(b.g, b.s, b.p, b.o);
    }
  };
  struct SubjectOrder {
    bool operator()(const Quad& a, const Quad& b) const {
      return std::tie(a.s, a.p, a.o, a.g) < std::tie(b.s, b.p, b.o, b.g);
    }
  };

  std::set<Quad, GraphOrder> by_graph_;
  std::set<Quad, SubjectOrder> by_subject_;
};

// Free-function form of QuadStore::match.
std::vector<Quad> match_pattern(const QuadStore& store, const std::optional<Iri>& s,
                                const std::optional<Iri>& p, const std::optional<Term>& o,
                                const std::optional<Iri>& g);

QuadStore load_nquads_file(const std::string& path);
void save_nquads_file(const QuadStore& store, const std::string& path);

}  // namespace su
