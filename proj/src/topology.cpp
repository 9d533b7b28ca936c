#include "covcomp/topology.hpp"

#include <limits>

#include <json.hpp>

namespace covcomp {

using nlohmann::json;

std::string dump_topology(const Evaluator &evaluator, const Clustering &clustering,
                          const Evaluation &evaluation) {
  json clusters = json::array();
  for (auto m : clustering.masters()) {
    const auto members = clustering.members(m);
    const auto split = optimal_split(m, members, evaluator.alpha());
    json workers = json::array();
    json shares = json::array();
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (members[k] != m)
        workers.push_back(members[k] + 1);
      shares.push_back({{"node", members[k] + 1}, {"eps", split[k]}});
    }
    clusters.push_back({{"master", m + 1},
                        {"workers", workers},
                        {"split", shares},
                        {"rate", cluster_rate(m, members, evaluator.alpha())}});
  }
  const auto &tasks = evaluator.scenario().tasks;
  json doc = {
      {"nodes", clustering.size()},
      {"lambda", evaluation.lambda},
      {"clusters", clusters},
      {"evaluation",
       {{"coverage_fraction", evaluation.coverage.fraction},
        {"coverage_abs_m2", evaluation.coverage.absolute},
        {"rate", evaluation.rate},
        {"lagrangian", evaluation.lagrangian},
        {"master_count", clustering.masters().size()},
        {"stable", stability(evaluation, tasks) == Stability::stable}}}};
  return doc.dump(2) + "\n";
}

Clustering parse_topology(const std::string &text, std::size_t node_count) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ClusteringError(std::string("topology parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("clusters") || !doc.at("clusters").is_array())
    throw ClusteringError("topology: missing 'clusters' array");

  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> master_of(node_count, kUnset);
  const auto node_id = [&](const json &v) -> std::size_t {
    if (!v.is_number_integer())
      throw ClusteringError("topology: node ids must be integers");
    const auto id = v.get<long long>();
    if (id < 1 || id > static_cast<long long>(node_count))
      throw ClusteringError("topology: unknown node id " + std::to_string(id));
    return static_cast<std::size_t>(id - 1);
  };
  const auto claim = [&](std::size_t node, std::size_t master) {
    if (master_of[node] != kUnset)
      throw ClusteringError("topology: node " + std::to_string(node + 1) +
                            " appears in more than one place");
    master_of[node] = master;
  };

  for (const auto &c : doc.at("clusters")) {
    if (!c.is_object() || !c.contains("master"))
      throw ClusteringError("topology: cluster without master");
    const std::size_t m = node_id(c.at("master"));
    claim(m, m);
    if (c.contains("workers")) {
      if (!c.at("workers").is_array())
        throw ClusteringError("topology: workers must be an array");
      for (const auto &w : c.at("workers"))
        claim(node_id(w), m);
    }
  }
  for (std::size_t i = 0; i < node_count; ++i)
    if (master_of[i] == kUnset)
      throw ClusteringError("topology: node " + std::to_string(i + 1) + " is not assigned");
  return Clustering(std::move(master_of));
}

} // namespace covcomp
