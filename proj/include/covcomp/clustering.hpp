#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "covcomp/coverage.hpp"
#include "covcomp/linkmodel.hpp"
#include "covcomp/scenario.hpp"

namespace covcomp {

class ClusteringError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Partition of nodes into masters and per-master worker sets. Every node is
/// a master (master_of[i] == i) or the worker of exactly one master.
class Clustering {
public:
  Clustering() = default;
  explicit Clustering(std::vector<std::size_t> master_of);

  static Clustering all_masters(std::size_t n);
  static Clustering single_master(std::size_t n, std::size_t master);

  std::size_t size() const { return master_of_.size(); }
  const std::vector<std::size_t> &masters() const { return masters_; }
  const std::vector<std::size_t> &assignment() const { return master_of_; }
  std::size_t master_of(std::size_t node) const { return master_of_[node]; }
  bool is_master(std::size_t node) const { return master_of_[node] == node; }

  /// Cluster members in ascending index order, master included.
  std::vector<std::size_t> members(std::size_t master) const;
  std::vector<std::size_t> workers(std::size_t master) const;

  bool operator==(const Clustering &) const = default;

private:
  std::vector<std::size_t> master_of_;
  std::vector<std::size_t> masters_;
};

/// Per-member task fractions eps_j proportional to 1/alpha(master, j),
/// aligned with `members`. All eps_j * alpha(master, j) are equal.
std::vector<double> optimal_split(std::size_t master, std::span<const std::size_t> members,
                                  const AlphaMatrix &alpha);

/// Sum of 1/alpha(master, j) over members, in the order given. Callers that
/// compare rates bit-for-bit pass members in ascending order.
double cluster_rate(std::size_t master, std::span<const std::size_t> members,
                    const AlphaMatrix &alpha);

/// Largest eps_j * alpha(master, j) for an arbitrary split: the per-task
/// completion time the cluster achieves with that split.
double split_completion(std::size_t master, std::span<const std::size_t> members,
                        std::span<const double> split, const AlphaMatrix &alpha);

double network_rate(const Clustering &clustering, const AlphaMatrix &alpha);

/// How coverage enters the Lagrangian. The default uses the covered fraction
/// so lambda is comparable across region sizes.
enum class CoverageTerm { fraction, absolute };

double lagrangian(double rate, const CoverageResult &cov, double lambda,
                  CoverageTerm term = CoverageTerm::fraction);

struct ClusterRate {
  std::size_t master;
  double rate;
};

struct Evaluation {
  CoverageResult coverage;
  double rate = 0.0;
  double lagrangian = 0.0;
  double lambda = 0.0;
  std::vector<ClusterRate> per_cluster_rates;
};

/// Alpha matrix and coverage quadrature for one scenario, reused across many
/// evaluations.
class Evaluator {
public:
  Evaluator(const Scenario &scenario, const CoverageConfig &config,
            CoverageTerm term = CoverageTerm::fraction);

  const Scenario &scenario() const { return scenario_; }
  const AlphaMatrix &alpha() const { return alpha_; }
  const CoverageModel &coverage_model() const { return coverage_; }
  CoverageTerm term() const { return term_; }

  Evaluation evaluate(const Clustering &clustering, double lambda) const;
  /// Evaluation assembled from an already measured master-set coverage.
  Evaluation evaluate(const Clustering &clustering, const CoverageResult &coverage,
                      double lambda) const;

private:
  Scenario scenario_;
  AlphaMatrix alpha_;
  CoverageModel coverage_;
  CoverageTerm term_;
};

Evaluation evaluate(const Scenario &scenario, const Clustering &clustering, double lambda,
                    const CoverageConfig &config, CoverageTerm term = CoverageTerm::fraction);

enum class Stability { stable, unstable };

/// Backlog stays bounded iff the network rate keeps up with task arrivals.
Stability stability(const Evaluation &evaluation, const TaskParams &tasks);

} // namespace covcomp
