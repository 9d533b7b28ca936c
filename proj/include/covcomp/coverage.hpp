#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "covcomp/scenario.hpp"

namespace covcomp {

class CoverageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct CoverageResult {
  double absolute = 0.0; ///< m^d, clipped to the region
  double fraction = 0.0; ///< absolute / |region|
};

/// Precomputed quadrature for the union of master disks inside the region.
///
/// grid and montecarlo reduce the region to a weighted point set and record,
/// per node, which points lie within distance D of it. The covered measure of
/// a master set is then (points covered) x (point weight), so every
/// evaluation of the same master set yields the same bits. exact1d keeps no
/// points and merges intervals directly.
class CoverageModel {
public:
  CoverageModel(const Scenario &scenario, const CoverageConfig &config);

  CoverageResult measure(std::span<const std::size_t> masters) const;

  bool point_based() const { return method_ != CoverageMethod::exact1d; }
  CoverageMethod method() const { return method_; }
  std::size_t point_count() const { return point_count_; }
  /// Indices of quadrature points within D of `node` (point-based only).
  std::span<const std::uint32_t> disk(std::size_t node) const { return disks_[node]; }
  /// Number of quadrature points covered by `masters` (point-based only).
  std::size_t covered_points(std::span<const std::size_t> masters) const;
  CoverageResult from_count(std::size_t covered_points) const;
  /// True when a covered-point count means "everything" (all but one point).
  bool count_covers_everything(std::size_t covered_points) const;
  double region_measure() const { return region_measure_; }
  double exact_union_length(std::span<const std::size_t> masters) const;
  std::size_t node_count() const { return centers_.size(); }

private:
  CoverageMethod method_;
  Region region_;
  double radius_;
  double region_measure_;
  std::vector<std::vector<double>> centers_;
  std::size_t point_count_ = 0;
  std::vector<std::vector<std::uint32_t>> disks_;
};

/// Covered measure of the union of disks of radius D around `masters`.
/// Throws CoverageError on an empty or out-of-range master set.
CoverageResult coverage(const Scenario &scenario, std::span<const std::size_t> masters,
                        const CoverageConfig &config);

/// Fraction >= 1 - eps, where eps is 1e-9 for exact1d and one point's mass
/// for the quadrature methods.
bool covers_everything(const Scenario &scenario, std::span<const std::size_t> masters,
                       const CoverageConfig &config);
bool covers_everything(const CoverageModel &model, std::span<const std::size_t> masters);

/// Incrementally maintained coverage of an evolving master set. Used by the
/// local search, where candidate moves remove or replace single masters.
class CoverageTracker {
public:
  CoverageTracker(const CoverageModel &model, std::span<const std::size_t> masters);

  CoverageResult current() const;
  CoverageResult without(std::size_t master) const;
  CoverageResult replacing(std::size_t old_master, std::size_t new_master) const;

  void remove(std::size_t master);
  void replace(std::size_t old_master, std::size_t new_master);

private:
  std::vector<std::size_t> master_list() const;

  const CoverageModel *model_;
  std::vector<bool> is_master_;
  mutable std::vector<std::uint32_t> counts_;
  std::size_t covered_ = 0;
};

} // namespace covcomp
