#include "covcomp/pareto.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "number_text.hpp"

namespace covcomp {

std::vector<std::size_t> pareto_filter(const std::vector<CoverageRate> &points) {
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].coverage != points[b].coverage)
      return points[a].coverage > points[b].coverage;
    if (points[a].rate != points[b].rate)
      return points[a].rate > points[b].rate;
    return a < b;
  });
  // Everything before p in this order has coverage >= p's; p survives only
  // if its rate beats all of them.
  std::vector<std::size_t> kept;
  double best_rate = -std::numeric_limits<double>::infinity();
  for (auto i : idx) {
    if (points[i].rate > best_rate) {
      kept.push_back(i);
      best_rate = points[i].rate;
    }
  }
  std::reverse(kept.begin(), kept.end());
  return kept;
}

std::vector<double> log_grid(double min, double max, std::size_t count) {
  if (count == 0)
    throw std::invalid_argument("log_grid: count must be at least 1");
  if (!(min > 0.0) || !(max >= min))
    throw std::invalid_argument("log_grid: need 0 < min <= max");
  if (count == 1)
    return {min};
  std::vector<double> out;
  const double a = std::log10(min);
  const double b = std::log10(max);
  for (std::size_t k = 0; k < count; ++k)
    out.push_back(std::pow(10.0, a + (b - a) * static_cast<double>(k) /
                                      static_cast<double>(count - 1)));
  return out;
}

std::vector<double> default_lambdas() {
  auto grid = log_grid(1e-3, 10.0, 25);
  grid.insert(grid.begin(), 0.0);
  return grid;
}

namespace {

std::uint64_t restart_seed(std::uint64_t base, std::size_t restart) {
  if (restart == 0)
    return 0;
  // splitmix64 finalizer
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (restart + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z ? z : 1;
}

SweepPoint solve_lambda(const Evaluator &evaluator, const SweepConfig &config, double lambda) {
  SweepPoint best;
  best.lambda = lambda;
  for (std::size_t k = 0; k < std::max<std::size_t>(1, config.restarts); ++k) {
    DescentConfig dc = config.descent;
    dc.lambda = lambda;
    dc.order_seed = restart_seed(config.descent.order_seed, k);
    auto r = run_descent(evaluator, dc);
    if (k == 0 || r.evaluation.lagrangian > best.result.evaluation.lagrangian) {
      best.result = std::move(r);
      best.restart = k;
    }
  }
  return best;
}

} // namespace

std::vector<SweepPoint> sweep(const Evaluator &evaluator, const SweepConfig &config) {
  if (config.lambdas.empty())
    throw std::invalid_argument("sweep: lambda list is empty");
  for (double l : config.lambdas)
    if (!(l >= 0.0))
      throw std::invalid_argument("sweep: lambda values must be non-negative");

  std::vector<SweepPoint> out(config.lambdas.size());
  const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, out.size());
  if (workers == 1) {
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] = solve_lambda(evaluator, config, config.lambdas[k]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < out.size(); k = next++)
        out[k] = solve_lambda(evaluator, config, config.lambdas[k]);
    });
  pool.clear();
  return out;
}

std::vector<FrontierPoint> to_points(const std::vector<SweepPoint> &sweep_points,
                                     const TaskParams &tasks) {
  std::vector<FrontierPoint> out;
  out.reserve(sweep_points.size());
  for (const auto &sp : sweep_points) {
    const auto &e = sp.result.evaluation;
    out.push_back({sp.lambda, e.coverage.fraction, e.coverage.absolute, e.rate,
                   sp.result.clustering.masters().size(), sp.result.iterations,
                   stability(e, tasks) == Stability::stable, sp.result.clustering});
  }
  return out;
}

std::vector<FrontierPoint> frontier(const std::vector<FrontierPoint> &points) {
  std::vector<CoverageRate> cr;
  cr.reserve(points.size());
  for (const auto &p : points)
    cr.push_back({p.coverage_fraction, p.rate});
  std::vector<FrontierPoint> out;
  for (auto i : pareto_filter(cr))
    out.push_back(points[i]);
  return out;
}

void write_frontier_csv(std::ostream &out, const std::vector<FrontierPoint> &points) {
  using detail::num;
  out << "lambda,coverage_fraction,coverage_abs_m2,rate_tasks_per_s,master_count,iterations,"
         "stable\n";
  for (const auto &p : points) {
    if (p.lambda)
      out << num(*p.lambda);
    out << ',' << num(p.coverage_fraction) << ',' << num(p.coverage_abs) << ',' << num(p.rate)
        << ',' << p.master_count << ',' << p.iterations << ',' << (p.stable ? 1 : 0) << '\n';
  }
}

} // namespace covcomp
