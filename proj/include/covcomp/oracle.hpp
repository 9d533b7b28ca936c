#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "covcomp/pareto.hpp"

namespace covcomp {

/// Exhaustive search was asked for more clusterings than the cap allows.
class OracleRefusal : public std::runtime_error {
public:
  OracleRefusal(std::size_t n, std::uint64_t count, std::size_t cap);
  std::uint64_t count() const { return count_; }

private:
  std::uint64_t count_;
};

inline constexpr std::size_t kDefaultOracleCap = 8;

/// sum_{m=1..n} C(n, m) * m^(n - m): clusterings with no idle nodes.
std::uint64_t clustering_count(std::size_t n);

/// Calls `visit` for every clustering of n nodes. Master sets come in
/// lexicographic order of their sorted index lists; for each master set the
/// worker assignments run in mixed-radix order (last worker fastest).
void enumerate_clusterings(std::size_t n, const std::function<void(const Clustering &)> &visit,
                           std::size_t cap = kDefaultOracleCap);

struct OracleEntry {
  Clustering clustering;
  CoverageResult coverage;
  double rate = 0.0;
};

/// Coverage and rate of every clustering, in enumeration order. Coverage is
/// measured once per master set.
std::vector<OracleEntry> oracle_table(const Evaluator &evaluator,
                                      std::size_t cap = kDefaultOracleCap);

struct OracleBest {
  Clustering clustering;
  Evaluation evaluation;
};

/// Maximizer of the Lagrangian; ties go to fewer masters, then to the
/// lexicographically first clustering.
OracleBest oracle_best(const Evaluator &evaluator, const std::vector<OracleEntry> &table,
                       double lambda);
OracleBest oracle_best(const Evaluator &evaluator, double lambda,
                       std::size_t cap = kDefaultOracleCap);

/// Exact coverage/rate Pareto set, coverage ascending.
std::vector<FrontierPoint> oracle_pareto(const std::vector<OracleEntry> &table,
                                         const TaskParams &tasks);
std::vector<FrontierPoint> oracle_pareto(const Evaluator &evaluator,
                                         std::size_t cap = kDefaultOracleCap);

} // namespace covcomp
