#include "covcomp/oracle.hpp"

#include <map>
#include <string>

namespace covcomp {

OracleRefusal::OracleRefusal(std::size_t n, std::uint64_t count, std::size_t cap)
    : std::runtime_error("exhaustive search over n = " + std::to_string(n) + " nodes needs " +
                         std::to_string(count) + " clusterings; cap is n <= " +
                         std::to_string(cap)),
      count_(count) {}

std::uint64_t clustering_count(std::size_t n) {
  // Saturates at the uint64 maximum for large n.
  using wide = unsigned __int128;
  constexpr wide kMax = ~std::uint64_t{0};
  wide total = 0;
  wide binom = 1; // C(n, m)
  for (std::size_t m = 1; m <= n && total < kMax; ++m) {
    binom = binom * (n - m + 1) / m;
    wide term = binom;
    for (std::size_t k = 0; k < n - m && term < kMax; ++k)
      term *= m;
    total += term;
  }
  return total < kMax ? static_cast<std::uint64_t>(total) : ~std::uint64_t{0};
}

namespace {

void assign_all(const std::vector<std::size_t> &masters, std::size_t n,
                const std::function<void(const Clustering &)> &visit) {
  std::vector<bool> is_master(n, false);
  for (auto m : masters)
    is_master[m] = true;
  std::vector<std::size_t> workers;
  for (std::size_t i = 0; i < n; ++i)
    if (!is_master[i])
      workers.push_back(i);

  std::vector<std::size_t> digit(workers.size(), 0);
  std::vector<std::size_t> master_of(n);
  for (auto m : masters)
    master_of[m] = m;
  while (true) {
    for (std::size_t k = 0; k < workers.size(); ++k)
      master_of[workers[k]] = masters[digit[k]];
    visit(Clustering(master_of));
    std::size_t k = workers.size();
    while (k > 0 && ++digit[k - 1] == masters.size()) {
      digit[k - 1] = 0;
      --k;
    }
    if (k == 0)
      return;
  }
}

void subsets_from(std::vector<std::size_t> &prefix, std::size_t start, std::size_t n,
                  const std::function<void(const Clustering &)> &visit) {
  for (std::size_t a = start; a < n; ++a) {
    prefix.push_back(a);
    assign_all(prefix, n, visit);
    subsets_from(prefix, a + 1, n, visit);
    prefix.pop_back();
  }
}

} // namespace

void enumerate_clusterings(std::size_t n, const std::function<void(const Clustering &)> &visit,
                           std::size_t cap) {
  if (n > cap)
    throw OracleRefusal(n, clustering_count(n), cap);
  std::vector<std::size_t> prefix;
  subsets_from(prefix, 0, n, visit);
}

std::vector<OracleEntry> oracle_table(const Evaluator &evaluator, std::size_t cap) {
  const std::size_t n = evaluator.scenario().size();
  std::map<std::vector<std::size_t>, CoverageResult> memo;
  std::vector<OracleEntry> table;
  table.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(clustering_count(n), 1u << 20)));
  enumerate_clusterings(
      n,
      [&](const Clustering &c) {
        auto it = memo.find(c.masters());
        if (it == memo.end())
          it = memo.emplace(c.masters(), evaluator.coverage_model().measure(c.masters())).first;
        const Evaluation e = evaluator.evaluate(c, it->second, 0.0);
        table.push_back({c, e.coverage, e.rate});
      },
      cap);
  return table;
}

OracleBest oracle_best(const Evaluator &evaluator, const std::vector<OracleEntry> &table,
                       double lambda) {
  const OracleEntry *best = nullptr;
  double best_l = 0.0;
  for (const auto &entry : table) {
    const double l = lagrangian(entry.rate, entry.coverage, lambda, evaluator.term());
    // Enumeration order is lexicographic, so the first of equals wins.
    if (!best || l > best_l ||
        (l == best_l &&
         entry.clustering.masters().size() < best->clustering.masters().size())) {
      best = &entry;
      best_l = l;
    }
  }
  return {best->clustering, evaluator.evaluate(best->clustering, best->coverage, lambda)};
}

OracleBest oracle_best(const Evaluator &evaluator, double lambda, std::size_t cap) {
  return oracle_best(evaluator, oracle_table(evaluator, cap), lambda);
}

std::vector<FrontierPoint> oracle_pareto(const std::vector<OracleEntry> &table,
                                         const TaskParams &tasks) {
  std::vector<FrontierPoint> all;
  all.reserve(table.size());
  for (const auto &e : table)
    all.push_back({std::nullopt, e.coverage.fraction, e.coverage.absolute, e.rate,
                   e.clustering.masters().size(), 0, e.rate >= tasks.arrival_rate,
                   e.clustering});
  return frontier(all);
}

std::vector<FrontierPoint> oracle_pareto(const Evaluator &evaluator, std::size_t cap) {
  return oracle_pareto(oracle_table(evaluator, cap), evaluator.scenario().tasks);
}

} // namespace covcomp
