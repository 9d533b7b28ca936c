#include "covcomp/clustering.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace covcomp {

Clustering::Clustering(std::vector<std::size_t> master_of) : master_of_(std::move(master_of)) {
  const std::size_t n = master_of_.size();
  if (n == 0)
    throw ClusteringError("clustering must contain at least one node");
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = master_of_[i];
    if (m >= n)
      throw ClusteringError("node " + std::to_string(i + 1) + " assigned to unknown node");
    if (master_of_[m] != m)
      throw ClusteringError("node " + std::to_string(i + 1) + " assigned to non-master " +
                            std::to_string(m + 1));
    if (m == i)
      masters_.push_back(i);
  }
}

Clustering Clustering::all_masters(std::size_t n) {
  std::vector<std::size_t> a(n);
  for (std::size_t i = 0; i < n; ++i)
    a[i] = i;
  return Clustering(std::move(a));
}

Clustering Clustering::single_master(std::size_t n, std::size_t master) {
  return Clustering(std::vector<std::size_t>(n, master));
}

std::vector<std::size_t> Clustering::members(std::size_t master) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < master_of_.size(); ++i)
    if (master_of_[i] == master)
      out.push_back(i);
  return out;
}

std::vector<std::size_t> Clustering::workers(std::size_t master) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < master_of_.size(); ++i)
    if (master_of_[i] == master && i != master)
      out.push_back(i);
  return out;
}

double cluster_rate(std::size_t master, std::span<const std::size_t> members,
                    const AlphaMatrix &alpha) {
  double sum = 0.0;
  for (auto j : members)
    sum += 1.0 / alpha(master, j);
  return sum;
}

std::vector<double> optimal_split(std::size_t master, std::span<const std::size_t> members,
                                  const AlphaMatrix &alpha) {
  const double total = cluster_rate(master, members, alpha);
  std::vector<double> eps;
  eps.reserve(members.size());
  for (auto j : members)
    eps.push_back((1.0 / alpha(master, j)) / total);
  return eps;
}

double split_completion(std::size_t master, std::span<const std::size_t> members,
                        std::span<const double> split, const AlphaMatrix &alpha) {
  double worst = 0.0;
  for (std::size_t k = 0; k < members.size(); ++k)
    worst = std::max(worst, split[k] * alpha(master, members[k]));
  return worst;
}

double network_rate(const Clustering &clustering, const AlphaMatrix &alpha) {
  double rate = std::numeric_limits<double>::infinity();
  for (auto m : clustering.masters())
    rate = std::min(rate, cluster_rate(m, clustering.members(m), alpha));
  return rate;
}

double lagrangian(double rate, const CoverageResult &cov, double lambda, CoverageTerm term) {
  const double c = term == CoverageTerm::fraction ? cov.fraction : cov.absolute;
  return rate + lambda * c;
}

Evaluator::Evaluator(const Scenario &scenario, const CoverageConfig &config, CoverageTerm term)
    : scenario_(scenario), alpha_(build_alpha(scenario)), coverage_(scenario, config),
      term_(term) {}

Evaluation Evaluator::evaluate(const Clustering &clustering, double lambda) const {
  if (clustering.size() != scenario_.size())
    throw ClusteringError("clustering size does not match scenario");
  return evaluate(clustering, coverage_.measure(clustering.masters()), lambda);
}

Evaluation Evaluator::evaluate(const Clustering &clustering, const CoverageResult &coverage,
                               double lambda) const {
  if (clustering.size() != scenario_.size())
    throw ClusteringError("clustering size does not match scenario");
  Evaluation e;
  e.lambda = lambda;
  e.coverage = coverage;
  e.rate = std::numeric_limits<double>::infinity();
  for (auto m : clustering.masters()) {
    const double r = cluster_rate(m, clustering.members(m), alpha_);
    e.per_cluster_rates.push_back({m, r});
    e.rate = std::min(e.rate, r);
  }
  e.lagrangian = lagrangian(e.rate, e.coverage, lambda, term_);
  return e;
}

Evaluation evaluate(const Scenario &scenario, const Clustering &clustering, double lambda,
                    const CoverageConfig &config, CoverageTerm term) {
  return Evaluator(scenario, config, term).evaluate(clustering, lambda);
}

Stability stability(const Evaluation &evaluation, const TaskParams &tasks) {
  return evaluation.rate >= tasks.arrival_rate ? Stability::stable : Stability::unstable;
}

} // namespace covcomp
