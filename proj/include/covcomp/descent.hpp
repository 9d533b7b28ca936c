#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include "covcomp/clustering.hpp"

namespace covcomp {

struct DescentConfig {
  double lambda = 0.0;
  /// A pass improving the Lagrangian by less than this, with no merge,
  /// reassignment or swap, ends the search.
  double tol = 1e-9;
  /// 0 selects 10 * n.
  std::size_t max_outer_iters = 0;
  /// Scan-order perturbation; 0 keeps ascending node order.
  std::uint64_t order_seed = 0;
};

struct MoveCounts {
  std::size_t merges = 0;
  std::size_t remasters = 0;
  std::size_t reassigns = 0;
  std::size_t swaps = 0;

  std::size_t total() const { return merges + remasters + reassigns + swaps; }
};

struct TraceRow {
  std::size_t iteration = 0;
  double lagrangian = 0.0;
  double rate = 0.0;
  double coverage_fraction = 0.0;
  MoveCounts moves;
};

struct DescentTrace {
  std::vector<TraceRow> rows;

  bool non_decreasing() const;
  void write_csv(std::ostream &out) const;
};

/// Mutable search state for the four-move local search. Starts with every
/// node a master. Cluster rates are cached per master and recomputed only
/// for clusters a move touches; coverage is tracked incrementally.
class DescentState {
public:
  DescentState(const Evaluator &evaluator, double lambda, std::uint64_t order_seed = 0);

  /// Merge cluster j into cluster i (i before j in scan order) whenever the
  /// Lagrangian does not drop. Returns the number of merges.
  std::size_t merge_pass();
  /// Per cluster, move the master role to the member maximizing the
  /// Lagrangian with all other clusters fixed. Ties keep the current master.
  std::size_t best_master_pass();
  /// Masters fixed: move each worker to the cluster giving the best sorted
  /// vector of cluster rates (compared lexicographically, so the network rate
  /// decides first and fewer clusters at the minimum breaks ties). Ties keep
  /// the current cluster, then prefer the lowest master.
  std::size_t reassign_pass();
  /// Exchange two workers of different clusters when the sorted cluster-rate
  /// vector strictly improves.
  std::size_t swap_pass();

  double lagrangian() const;
  double rate() const { return rate_; }
  const CoverageResult &coverage() const { return coverage_; }
  std::size_t master_count() const { return masters_.size(); }
  Clustering clustering() const;

private:
  double sum_for(std::size_t master, const std::vector<std::size_t> &members) const;
  double min_excluding(std::size_t a, std::size_t b) const;
  std::vector<double>
  rate_profile(std::initializer_list<std::pair<std::size_t, double>> overrides) const;
  double score(double rate, const CoverageResult &cov) const;
  void sort_masters();

  const Evaluator *eval_;
  double lambda_;
  std::vector<std::size_t> order_; ///< scan order of node indices
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> master_of_;
  std::vector<std::vector<std::size_t>> members_; ///< ascending index, per master
  std::vector<double> sums_;
  std::vector<std::size_t> masters_; ///< in scan order
  CoverageTracker tracker_;
  CoverageResult coverage_;
  double rate_ = 0.0;
};

struct DescentResult {
  Clustering clustering;
  Evaluation evaluation;
  DescentTrace trace;
  std::size_t iterations = 0;
  bool converged = false;
};

DescentResult run_descent(const Evaluator &evaluator, const DescentConfig &config);
DescentResult run_descent(const Scenario &scenario, const DescentConfig &config);

} // namespace covcomp
