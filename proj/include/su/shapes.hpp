#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "su/semantic_units.hpp"

namespace su {

// Compact structural constraint on a unit's primary triple and meta keys.
struct Shape {
  Iri shape_id;
  ResourceKind subject_kind = ResourceKind::Instance;
  std::optional<Iri> subject_class;
  std::set<Iri> predicate_whitelist;
  // nullopt means the object must be a literal.
  std::optional<ResourceKind> object_kind;
  std::optional<Iri> object_class;
  std::set<Iri> required_meta_keys;
};

Shape shape_from_json(const nlohmann::json& j);
nlohmann::json shape_to_json(const Shape& shape);
Shape load_shape_file(const std::string& path);

struct Violation {
  std::optional<Quad> quad;
  std::string constraint;
  std::string detail;
};

struct ValidationReport {
  Iri unit;
  Iri shape;
  std::vector<Violation> violations;

  bool conforms() const { return violations.empty(); }
};

nlohmann::json report_to_json(const ValidationReport& report);

// Checks the unit's primary triple (and meta keys) against the shape.
// Violations are data; this never throws for a well-formed unit.
ValidationReport validate_shape(const StatementUnit& unit, const Shape& shape,
                                const QuadStore* store = nullptr);

// Text pattern with `{subject}`, `{predicate}`, `{object}` holes bound from
// the primary triple, plus named holes bound by following `paths` (predicate
// chains) from the primary subject.
struct LabelTemplate {
  Iri shape_id;
  std::string pattern;
  std::map<std::string, std::vector<Iri>> paths;
};

LabelTemplate label_template_from_json(const nlohmann::json& j);

std::string render_dynamic_label(const StatementUnit& unit, const LabelTemplate& tmpl,
                                 const KnowledgeGraph& kg);

}  // namespace su
