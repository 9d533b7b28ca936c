#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "covcomp/descent.hpp"

namespace covcomp {

struct CoverageRate {
  double coverage = 0.0;
  double rate = 0.0;
};

/// Indices of the non-dominated points, ordered by coverage ascending.
/// A point is dropped when another point is at least as good in both
/// coordinates; of several identical points the first is kept.
std::vector<std::size_t> pareto_filter(const std::vector<CoverageRate> &points);

/// `count` values spaced evenly in log10 between `min` and `max` inclusive.
std::vector<double> log_grid(double min, double max, std::size_t count);

/// lambda = 0 followed by 25 log-spaced values in [1e-3, 10].
std::vector<double> default_lambdas();

struct SweepConfig {
  std::vector<double> lambdas = default_lambdas();
  DescentConfig descent;
  std::size_t restarts = 1;
  std::size_t threads = 1;
};

struct SweepPoint {
  double lambda = 0.0;
  DescentResult result;
  std::size_t restart = 0; ///< restart index that produced the best Lagrangian
};

/// One descent per lambda, best over restarts. Restart 0 scans in ascending
/// node order; restart k > 0 uses a scan order shuffled with a seed derived
/// from k. Output order follows the lambda list.
std::vector<SweepPoint> sweep(const Evaluator &evaluator, const SweepConfig &config);

struct FrontierPoint {
  std::optional<double> lambda;
  double coverage_fraction = 0.0;
  double coverage_abs = 0.0;
  double rate = 0.0;
  std::size_t master_count = 0;
  std::size_t iterations = 0;
  bool stable = false;
  Clustering clustering;
};

std::vector<FrontierPoint> to_points(const std::vector<SweepPoint> &sweep_points,
                                     const TaskParams &tasks);
/// Non-dominated subset, coverage ascending.
std::vector<FrontierPoint> frontier(const std::vector<FrontierPoint> &points);

void write_frontier_csv(std::ostream &out, const std::vector<FrontierPoint> &points);

} // namespace covcomp
