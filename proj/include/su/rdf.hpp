#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace su {

// An absolute IRI. Serialized in angle brackets; never empty, never contains
// whitespace (enforced by the parser, not by construction).
struct Iri {
  std::string value;

  Iri() = default;
  explicit Iri(std::string v) : value(std::move(v)) {}

  bool empty() const { return value.empty(); }
  auto operator<=>(const Iri&) const = default;
};

// Last segment after '#', '/' or ':'. Used as the human fallback for
// resources without an rdfs:label.
std::string local_name(const Iri& iri);

struct Literal {
  std::string lexical;
  std::optional<Iri> datatype;
  std::optional<std::string> lang;

  auto operator<=>(const Literal&) const = default;
};

class Term {
 public:
  Term() = default;
  Term(Iri iri) : value_(std::move(iri)) {}  // NOLINT: implicit on purpose
  Term(Literal lit) : value_(std::move(lit)) {}  // NOLINT

  bool is_iri() const { return std::holds_alternative<Iri>(value_); }
  bool is_literal() const { return std::holds_alternative<Literal>(value_); }
  const Iri& iri() const { return std::get<Iri>(value_); }
  const Literal& literal() const { return std::get<Literal>(value_); }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;

 private:
  std::variant<Iri, Literal> value_;
};

Literal plain_literal(std::string lexical);
Literal typed_literal(std::string lexical, const Iri& datatype);
Literal lang_literal(std::string lexical, std::string lang);

// A quad without its graph name; the unit minting API takes these.
struct Triple {
  Iri s;
  Iri p;
  Term o;

  auto operator<=>(const Triple&) const = default;
};

struct Quad {
  Iri s;
  Iri p;
  Term o;
  Iri g;

  Triple triple() const { return {s, p, o}; }
  auto operator<=>(const Quad&) const = default;
};

std::string to_nquads(const Iri& iri);
std::string to_nquads(const Literal& lit);
std::string to_nquads(const Term& term);
std::string to_nquads(const Quad& quad);  // one line, no trailing newline

// Line-oriented N-Quads subset: `#` comments, IRIs, literals (plain, typed,
// language-tagged), exactly four terms and a terminal dot per statement.
// Throws ParseError on the first offending line.
std::vector<Quad> parse_nquads(std::string_view text);

// Canonical form: quads deduplicated and sorted by the serialized
// (graph, subject, predicate, object) tuple, one line each.
std::string write_nquads(const std::vector<Quad>& quads);

}  // namespace su
