#pragma once

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>

#include <json.hpp>

#include "su/causal_inference.hpp"
#include "su/error.hpp"
#include "su/causal_model.hpp"
#include "su/fdo_io.hpp"
#include "su/scm_engine.hpp"
#include "su/shapes.hpp"

namespace su {

struct WorkspaceConfig {
  std::string store_path = "store.nq";
  std::optional<std::string> shapes_dir;
  bool deterministic_ids = false;
  int max_adjustment_size = 4;
  std::string listen_addr = "127.0.0.1:8080";
  std::optional<std::string> doi_prefix;
};

// JSON-in/JSON-out operations shared by the CLI and the HTTP service.
// Readers may run concurrently under a shared lock on mutex(); mutating
// calls need the exclusive lock. Mutations are persisted to the store file.
class Service {
 public:
  explicit Service(WorkspaceConfig config);

  const WorkspaceConfig& config() const { return config_; }
  const KnowledgeGraph& graph() const { return kg_; }
  std::shared_mutex& mutex() const { return mutex_; }

  // read-only
  nlohmann::json unit(const std::string& id) const;
  nlohmann::json unit_label(const std::string& id) const;
  nlohmann::json maps() const;
  nlohmann::json map(const std::string& id) const;
  nlohmann::json junctions(const std::string& map_id) const;
  nlohmann::json dsep(const nlohmann::json& request) const;
  nlohmann::json validate(const nlohmann::json& request) const;
  nlohmann::json estimate(const nlohmann::json& request) const;
  nlohmann::json mediate(const nlohmann::json& request) const;
  nlohmann::json whatif(const nlohmann::json& request) const;
  nlohmann::json nanopub(const std::string& id) const;

  // mutating
  // Rebuilds the causal map when new causal statement units arrive.
  nlohmann::json ingest(const std::string& nquads);
  nlohmann::json compose(const std::string& nquads);
  nlohmann::json build_map();
  nlohmann::json perspective(const std::string& map_id, const nlohmann::json& request);
  nlohmann::json identify(const nlohmann::json& request);

  // Human-readable name of a map variable: label, else local name.
  std::string display(const std::string& iri) const;

  void save() const;

 private:
  Iri resolve_map(const nlohmann::json& request) const;
  Iri resolve_map_id(const std::string& id) const;
  CausalNetwork network(const Iri& map_id) const;
  DiscreteScm scm(const nlohmann::json& request) const;
  std::optional<Iri> rebuild_map();
  void load_shapes();

  WorkspaceConfig config_;
  KnowledgeGraph kg_;
  std::map<Iri, Shape> shapes_;
  std::map<Iri, LabelTemplate> templates_;
  mutable std::shared_mutex mutex_;
};

// {"error": {"code": "...", "message": "..."}}
nlohmann::json error_json(ErrorCode code, const std::string& message);

}  // namespace su
