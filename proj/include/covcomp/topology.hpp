#pragma once

#include <string>

#include "covcomp/clustering.hpp"

namespace covcomp {

/// JSON topology document: masters with their worker lists, optimal task
/// splits and cluster rates, plus the evaluation summary. Node ids are 1-based.
std::string dump_topology(const Evaluator &evaluator, const Clustering &clustering,
                          const Evaluation &evaluation);

/// Reads the clustering back from a topology document and checks it against
/// a scenario of `node_count` nodes. Throws ClusteringError on unknown or
/// duplicated node ids and on nodes left out of every cluster.
Clustering parse_topology(const std::string &text, std::size_t node_count);

} // namespace covcomp
