#include "su/fdo_io.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <map>
#include <set>

#include "su/error.hpp"
#include "su/vocab.hpp"

namespace su {

using nlohmann::json;

namespace {

std::string timestamp(bool deterministic) {
  if (deterministic) return "1970-01-01T00:00:00Z";
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Nanopub skeleton(const Iri& unit, const Iri& assertion_graph, const std::vector<Quad>& meta,
                 const ExportOptions& opts) {
  Nanopub np;
  np.id = nanopub_id(unit, opts);
  np.head_graph = Iri(np.id.value + "#Head");
  np.assertion_graph = assertion_graph;
  np.provenance_graph = Iri(np.id.value + "#provenance");
  np.pubinfo_graph = Iri(np.id.value + "#pubinfo");

  np.head = {{np.id, vocab::kType, vocab::kNanopublication, np.head_graph},
             {np.id, vocab::kHasAssertion, np.assertion_graph, np.head_graph},
             {np.id, vocab::kHasProvenance, np.provenance_graph, np.head_graph},
             {np.id, vocab::kHasPublicationInfo, np.pubinfo_graph, np.head_graph}};
  for (const auto& q : meta) np.provenance.push_back({q.s, q.p, q.o, np.provenance_graph});
  np.provenance.push_back({np.id, vocab::kWasDerivedFrom, unit, np.provenance_graph});
  np.pubinfo = {
      {np.id, vocab::kCreated, typed_literal(timestamp(opts.deterministic), vocab::xsd("dateTime")),
       np.pubinfo_graph},
      {np.id, vocab::kExporterVersion, plain_literal(kExporterVersion), np.pubinfo_graph},
      {np.id, vocab::kLicense, vocab::kCcBy4, np.pubinfo_graph},
      {np.id, vocab::kSerializationOf, unit, np.pubinfo_graph}};
  return np;
}

void export_into(const KnowledgeGraph& kg, const Iri& unit, const ExportOptions& opts,
                 std::vector<Iri>& stack, std::set<Iri>& done, std::vector<Nanopub>& out) {
  if (std::find(stack.begin(), stack.end(), unit) != stack.end()) {
    throw Error(ErrorCode::CyclicComposition, "compound unit contains itself: " + unit.value);
  }
  if (done.count(unit)) return;
  if (kg.is_statement_unit(unit)) {
    out.push_back(export_nanopub(kg.statement_unit(unit), opts));
    done.insert(unit);
    return;
  }
  auto compound = kg.compound_unit(unit);
  stack.push_back(unit);
  for (const auto& m : compound.members) export_into(kg, m, opts, stack, done, out);
  stack.pop_back();

  auto np = skeleton(unit, unit, compound.meta, opts);
  for (const auto& m : compound.members) {
    np.head.push_back({np.id, vocab::kHasMemberNanopub, nanopub_id(m, opts), np.head_graph});
  }
  out.push_back(std::move(np));
  done.insert(unit);
}

}  // namespace

std::vector<Quad> Nanopub::quads() const {
  std::vector<Quad> out;
  for (const auto* g : {&head, &assertion, &provenance, &pubinfo}) out.insert(out.end(), g->begin(), g->end());
  return out;
}

Iri nanopub_id(const Iri& unit, const ExportOptions& opts) {
  if (opts.doi_prefix) return Iri(*opts.doi_prefix + sha256_hex(unit.value).substr(0, 32));
  return Iri(unit.value + "/nanopub");
}

Nanopub export_nanopub(const StatementUnit& unit, const ExportOptions& opts) {
  auto np = skeleton(unit.id, unit.id, unit.meta, opts);
  for (const auto& q : unit.content) np.assertion.push_back({q.s, q.p, q.o, np.assertion_graph});
  return np;
}

std::vector<Nanopub> export_nested(const CompoundUnit& compound, const KnowledgeGraph& kg,
                                   const ExportOptions& opts) {
  std::vector<Nanopub> out;
  std::vector<Iri> stack;
  std::set<Iri> done;
  export_into(kg, compound.id, opts, stack, done, out);
  return out;
}

std::vector<Nanopub> export_unit(const KnowledgeGraph& kg, const Iri& unit, const ExportOptions& opts) {
  if (kg.is_statement_unit(unit)) return {export_nanopub(kg.statement_unit(unit), opts)};
  if (kg.is_compound_unit(unit)) return export_nested(kg.compound_unit(unit), kg, opts);
  throw Error(ErrorCode::UnknownUnit, "no unit " + unit.value);
}

std::string bundle_nquads(const std::vector<Nanopub>& nanopubs) {
  std::vector<Quad> all;
  for (const auto& np : nanopubs) {
    auto q = np.quads();
    all.insert(all.end(), q.begin(), q.end());
  }
  return write_nquads(all);
}

json bundle_index(const std::vector<Nanopub>& nanopubs) {
  json ids = json::array();
  for (const auto& np : nanopubs) ids.push_back(np.id.value);
  return {{"nanopubs", ids}};
}

std::vector<SemanticUnit> import_nanopub(const std::vector<Quad>& quads) {
  std::map<Iri, std::vector<Quad>> graphs;
  std::vector<std::pair<Iri, Iri>> heads;  // (nanopub, head graph)
  for (const auto& q : quads) {
    graphs[q.g].push_back(q);
    if (q.p == vocab::kType && q.o == Term(vocab::kNanopublication)) heads.emplace_back(q.s, q.g);
  }
  if (heads.empty()) throw Error(ErrorCode::MalformedHead, "no nanopublication head graph");
  std::sort(heads.begin(), heads.end());

  auto single = [&](const std::vector<Quad>& head, const Iri& np, const Iri& p) -> Iri {
    std::optional<Iri> found;
    for (const auto& q : head) {
      if (q.s != np || q.p != p) continue;
      if (!q.o.is_iri() || found) throw Error(ErrorCode::MalformedHead, "bad " + local_name(p) + " in " + np.value);
      found = q.o.iri();
    }
    if (!found) throw Error(ErrorCode::MalformedHead, np.value + " head lacks " + local_name(p));
    return *found;
  };

  std::vector<SemanticUnit> out;
  for (const auto& [np, head_graph] : heads) {
    const auto& head = graphs[head_graph];
    Iri assertion = single(head, np, vocab::kHasAssertion);
    Iri provenance = single(head, np, vocab::kHasProvenance);
    Iri pubinfo = single(head, np, vocab::kHasPublicationInfo);
    if (!graphs.count(provenance)) throw Error(ErrorCode::MalformedHead, np.value + ": provenance graph missing");
    if (!graphs.count(pubinfo)) throw Error(ErrorCode::MalformedHead, np.value + ": pubinfo graph missing");
    Iri unit = single(graphs[pubinfo], np, vocab::kSerializationOf);
    bool nested = std::any_of(head.begin(), head.end(),
                              [&](const Quad& q) { return q.p == vocab::kHasMemberNanopub; });

    Iri meta_graph = meta_graph_of(unit);
    std::vector<Quad> meta;
    for (const auto& q : graphs[provenance]) {
      if (q.s == np && q.p == vocab::kWasDerivedFrom) continue;
      meta.push_back({q.s, q.p, q.o, meta_graph});
    }
    std::sort(meta.begin(), meta.end());
    std::vector<Iri> classes;
    bool compound = false;
    for (const auto& q : meta) {
      if (q.s == unit && q.p == vocab::kType && q.o.is_iri()) {
        classes.push_back(q.o.iri());
        if (q.o.iri() == vocab::kCompoundUnit) compound = true;
      }
    }
    std::sort(classes.begin(), classes.end());

    auto content_it = graphs.find(assertion);
    bool has_content = content_it != graphs.end() && !content_it->second.empty();
    if (nested || compound) {
      if (has_content) throw Error(ErrorCode::MalformedHead, np.value + ": nested assertion graph not empty");
      CompoundUnit u;
      u.id = unit;
      u.meta = meta;
      u.unit_classes = classes;
      std::vector<std::pair<std::size_t, Iri>> ordered;
      for (const auto& q : meta) {
        std::size_t index = 0;
        if (q.s == unit && q.o.is_iri() && vocab::is_rdf_member(q.p, index)) ordered.emplace_back(index, q.o.iri());
      }
      std::sort(ordered.begin(), ordered.end());
      for (const auto& [index, m] : ordered) u.members.push_back(m);
      out.emplace_back(std::move(u));
    } else {
      if (!has_content) throw Error(ErrorCode::MalformedHead, np.value + ": assertion graph is empty");
      StatementUnit u;
      u.id = unit;
      for (const auto& q : content_it->second) u.content.push_back({q.s, q.p, q.o, unit});
      std::sort(u.content.begin(), u.content.end());
      u.meta = meta;
      u.unit_classes = classes;
      out.emplace_back(std::move(u));
    }
  }
  return out;
}

}  // namespace su
