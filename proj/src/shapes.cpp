#include "su/shapes.hpp"

#include <fstream>

#include "su/error.hpp"
#include "su/vocab.hpp"

namespace su {

using nlohmann::json;

namespace {

ResourceKind kind_field(const json& j, const char* key) {
  auto name = j.at(key).get<std::string>();
  auto kind = parse_resource_kind(name);
  if (!kind) throw Error(ErrorCode::InvalidRequest, std::string("bad ") + key + ": " + name);
  return *kind;
}

std::string describe(const Term& t) { return to_nquads(t); }

}  // namespace

Shape shape_from_json(const json& j) {
  Shape s;
  s.shape_id = Iri(j.at("shape_id").get<std::string>());
  s.subject_kind = kind_field(j, "subject_kind");
  if (j.contains("subject_class") && !j["subject_class"].is_null()) {
    s.subject_class = Iri(j["subject_class"].get<std::string>());
  }
  for (const auto& p : j.at("predicate_whitelist")) s.predicate_whitelist.insert(Iri(p.get<std::string>()));
  if (s.predicate_whitelist.empty()) {
    throw Error(ErrorCode::InvalidRequest, "shape predicate_whitelist must not be empty");
  }
  auto object_kind = j.at("object_kind").get<std::string>();
  if (object_kind != "Literal") s.object_kind = kind_field(j, "object_kind");
  if (j.contains("object_class") && !j["object_class"].is_null()) {
    s.object_class = Iri(j["object_class"].get<std::string>());
  }
  if (j.contains("required_meta_keys")) {
    for (const auto& k : j["required_meta_keys"]) s.required_meta_keys.insert(Iri(k.get<std::string>()));
  }
  return s;
}

json shape_to_json(const Shape& s) {
  json j;
  j["shape_id"] = s.shape_id.value;
  j["subject_kind"] = resource_kind_name(s.subject_kind);
  j["subject_class"] = s.subject_class ? json(s.subject_class->value) : json(nullptr);
  j["predicate_whitelist"] = json::array();
  for (const auto& p : s.predicate_whitelist) j["predicate_whitelist"].push_back(p.value);
  j["object_kind"] = s.object_kind ? std::string(resource_kind_name(*s.object_kind)) : "Literal";
  j["object_class"] = s.object_class ? json(s.object_class->value) : json(nullptr);
  j["required_meta_keys"] = json::array();
  for (const auto& k : s.required_meta_keys) j["required_meta_keys"].push_back(k.value);
  return j;
}

Shape load_shape_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::NotFound, "cannot read shape " + path);
  return shape_from_json(json::parse(in));
}

json report_to_json(const ValidationReport& r) {
  json j;
  j["unit"] = r.unit.value;
  j["shape"] = r.shape.value;
  j["conforms"] = r.conforms();
  j["violations"] = json::array();
  for (const auto& v : r.violations) {
    j["violations"].push_back({{"quad", v.quad ? json(to_nquads(*v.quad)) : json(nullptr)},
                               {"constraint", v.constraint},
                               {"detail", v.detail}});
  }
  return j;
}

ValidationReport validate_shape(const StatementUnit& unit, const Shape& shape,
                                const QuadStore* store) {
  ValidationReport report{unit.id, shape.shape_id, {}};
  auto primary = unit.primary();
  if (!primary) {
    report.violations.push_back({std::nullopt, "primary_triple", "content has no primary triple"});
    return report;
  }
  Quad pq{primary->s, primary->p, primary->o, unit.id};

  auto subject = describe_resource(primary->s, unit.content, store);
  if (subject.kind != shape.subject_kind) {
    report.violations.push_back({pq, "subject_kind",
                                 "expected " + std::string(resource_kind_name(shape.subject_kind)) +
                                     ", found " + std::string(resource_kind_name(subject.kind))});
  }
  if (shape.subject_class && !subject.instantiates(*shape.subject_class)) {
    report.violations.push_back(
        {pq, "subject_class", primary->s.value + " does not instantiate " + shape.subject_class->value});
  }
  if (!shape.predicate_whitelist.count(primary->p)) {
    report.violations.push_back({pq, "predicate_whitelist", primary->p.value + " not allowed"});
  }

  if (!shape.object_kind) {
    if (!primary->o.is_literal()) {
      report.violations.push_back({pq, "object_kind", "expected a literal, found " + describe(primary->o)});
    }
  } else if (primary->o.is_literal()) {
    report.violations.push_back({pq, "object_kind",
                                 "expected " + std::string(resource_kind_name(*shape.object_kind)) +
                                     ", found a literal"});
  } else {
    auto object = describe_resource(primary->o.iri(), unit.content, store);
    if (object.kind != *shape.object_kind) {
      report.violations.push_back({pq, "object_kind",
                                   "expected " + std::string(resource_kind_name(*shape.object_kind)) +
                                       ", found " + std::string(resource_kind_name(object.kind))});
    }
    if (shape.object_class && !object.instantiates(*shape.object_class)) {
      report.violations.push_back({pq, "object_class",
                                   primary->o.iri().value + " does not instantiate " +
                                       shape.object_class->value});
    }
  }

  for (const auto& key : shape.required_meta_keys) {
    bool present = std::any_of(unit.meta.begin(), unit.meta.end(),
                               [&](const Quad& q) { return q.s == unit.id && q.p == key; });
    if (!present) report.violations.push_back({std::nullopt, "required_meta_keys", "missing " + key.value});
  }
  return report;
}

LabelTemplate label_template_from_json(const json& j) {
  LabelTemplate t;
  t.shape_id = Iri(j.at("shape_id").get<std::string>());
  t.pattern = j.at("pattern").get<std::string>();
  if (j.contains("paths")) {
    for (const auto& [hole, preds] : j["paths"].items()) {
      auto& path = t.paths[hole];
      for (const auto& p : preds) path.push_back(Iri(p.get<std::string>()));
    }
  }
  return t;
}

namespace {

std::string term_text(const Term& t, const KnowledgeGraph& kg) {
  if (t.is_literal()) return t.literal().lexical;
  return kg.display_label(t.iri());
}

// Follows a predicate chain through the unit content; first match wins
// (content is in canonical order, so this is deterministic).
std::optional<Term> follow(const Iri& start, const std::vector<Iri>& path,
                           const std::vector<Quad>& content) {
  Term current = start;
  for (const auto& p : path) {
    if (!current.is_iri()) return std::nullopt;
    std::optional<Term> next;
    for (const auto& q : content) {
      if (q.s == current.iri() && q.p == p) {
        next = q.o;
        break;
      }
    }
    if (!next) return std::nullopt;
    current = *next;
  }
  return current;
}

}  // namespace

std::string render_dynamic_label(const StatementUnit& unit, const LabelTemplate& tmpl,
                                 const KnowledgeGraph& kg) {
  for (const auto& q : unit.meta) {
    if (q.s == unit.id && q.p == vocab::kConformsToShape && q.o.is_iri() &&
        q.o.iri() != tmpl.shape_id) {
      throw Error(ErrorCode::ShapeMismatch, "unit conforms to " + q.o.iri().value +
                                                ", template is for " + tmpl.shape_id.value);
    }
  }
  auto primary = unit.primary();
  std::string out;
  std::size_t pos = 0;
  while (pos < tmpl.pattern.size()) {
    auto open = tmpl.pattern.find('{', pos);
    if (open == std::string::npos) {
      out += tmpl.pattern.substr(pos);
      break;
    }
    auto close = tmpl.pattern.find('}', open);
    if (close == std::string::npos) {
      throw Error(ErrorCode::UnboundHole, "unterminated hole in template");
    }
    out += tmpl.pattern.substr(pos, open - pos);
    std::string hole = tmpl.pattern.substr(open + 1, close - open - 1);
    pos = close + 1;

    std::optional<Term> value;
    if (primary && hole == "subject") value = Term(primary->s);
    else if (primary && hole == "predicate") value = Term(primary->p);
    else if (primary && hole == "object") value = primary->o;
    else if (auto it = tmpl.paths.find(hole); it != tmpl.paths.end() && primary) {
      value = follow(primary->s, it->second, unit.content);
    }
    if (!value) throw Error(ErrorCode::UnboundHole, "cannot bind {" + hole + "}");
    out += term_text(*value, kg);
  }
  return out;
}

}  // namespace su
