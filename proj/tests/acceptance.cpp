// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "covcomp/coverage.hpp"
#include "covcomp/descent.hpp"
#include "covcomp/framesim.hpp"
#include "covcomp/linkmodel.hpp"
#include "covcomp/oracle.hpp"
#include "covcomp/pareto.hpp"
#include "covcomp/scenario.hpp"

using namespace covcomp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(int id, const char *title, double budget_s, const std::function<Outcome()> &body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception &e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    out.pass = false;
    out.detail += " (over time budget)";
  }
  if (!out.pass)
    ++failures;
  std::printf("criterion %2d %s: %s [%.2fs] %s\n", id, out.pass ? "PASS" : "FAIL", title, secs,
              out.detail.c_str());
  std::fflush(stdout);
}

std::vector<std::size_t> iota(std::size_t k) {
  std::vector<std::size_t> v(k);
  for (std::size_t i = 0; i < k; ++i)
    v[i] = i;
  return v;
}

Scenario uav(std::size_t n, std::uint64_t seed, double r = 3.0) {
  return generate_scenario(n, Region::square(10000.0), ScenarioDefaults::uav(r), seed);
}

// A random cluster given by its alpha row; member 0 is the master.
struct RandomCluster {
  std::vector<double> alpha;
  std::vector<double> compute_share; ///< fraction of alpha spent computing
};

std::vector<RandomCluster> random_clusters(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(1, 5);
  std::uniform_real_distribution<double> a(0.1, 10.0), f(0.05, 0.95);
  std::vector<RandomCluster> out(count);
  for (auto &c : out) {
    const std::size_t k = size(rng);
    for (std::size_t j = 0; j < k; ++j) {
      c.alpha.push_back(a(rng));
      c.compute_share.push_back(j == 0 ? 1.0 : f(rng));
    }
  }
  return out;
}

AlphaMatrix as_matrix(const std::vector<double> &row) {
  std::vector<double> all;
  for (std::size_t i = 0; i < row.size(); ++i)
    all.insert(all.end(), row.begin(), row.end());
  return AlphaMatrix(row.size(), std::move(all));
}

// Largest grid count k with k * step * alpha <= t.
long max_count(double t, double alpha, long steps) {
  long k = static_cast<long>(std::floor(t * steps / alpha));
  while (k + 1 <= steps && (k + 1) * alpha / steps <= t)
    ++k;
  while (k > 0 && k * alpha / steps > t)
    --k;
  return std::clamp(k, 0L, steps);
}

// Exact minimum over the step-1/steps simplex grid of max_j eps_j * alpha_j.
// A threshold t is reachable iff the per-member caps can hold all steps; the
// minimum is attained at some k * alpha_j / steps.
double grid_search_min(const std::vector<double> &alpha, long steps) {
  std::vector<double> cand;
  for (double a : alpha)
    for (long k = 0; k <= steps; ++k)
      cand.push_back(k * a / steps);
  std::sort(cand.begin(), cand.end());
  const auto feasible = [&](double t) {
    long total = 0;
    for (double a : alpha)
      total += max_count(t, a, steps);
    return total >= steps;
  };
  const auto it = std::partition_point(cand.begin(), cand.end(),
                                       [&](double t) { return !feasible(t); });
  return *it;
}

// Literal enumeration of the grid for up to three members.
double literal_grid_min(const std::vector<double> &a, long steps) {
  double best = 1e300;
  if (a.size() == 1)
    return steps * a[0] / steps;
  if (a.size() == 2) {
    for (long i = 0; i <= steps; ++i)
      best = std::min(best, std::max(i * a[0] / steps, (steps - i) * a[1] / steps));
    return best;
  }
  for (long i = 0; i <= steps; ++i)
    for (long j = 0; i + j <= steps; ++j)
      best = std::min(best, std::max({i * a[0] / steps, j * a[1] / steps,
                                      (steps - i - j) * a[2] / steps}));
  return best;
}

bool weakly_dominated(double c, double r, const std::vector<FrontierPoint> &front) {
  for (const auto &f : front)
    if (f.coverage_fraction >= c && f.rate >= r)
      return true;
  return false;
}

bool frontier_shape_ok(const std::vector<FrontierPoint> &f) {
  for (std::size_t i = 1; i < f.size(); ++i)
    if (!(f[i].coverage_fraction >= f[i - 1].coverage_fraction && f[i].rate <= f[i - 1].rate))
      return false;
  return true;
}

std::string fmt(const char *f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Shared by criteria 4, 5 and 6.
struct SmallRuns {
  std::size_t scenarios = 0, runs = 0;
  std::size_t lagrangian_violations = 0, dominance_violations = 0;
  std::size_t collapse_failures = 0;
  std::size_t trace_failures = 0;
  double worst_gap = -1e300;
};

SmallRuns small_runs() {
  SmallRuns s;
  const auto lambdas = default_lambdas();
  for (std::uint64_t k = 0; k < 50; ++k) {
    const std::size_t n = 4 + k % 3;
    const Scenario sc = uav(n, 5000 + k);
    const Evaluator ev(sc, sc.coverage);
    const auto table = oracle_table(ev);
    const auto front = oracle_pareto(table, sc.tasks);
    ++s.scenarios;
    for (double lambda : lambdas) {
      const DescentConfig cfg{.lambda = lambda};
      const auto r = run_descent(ev, cfg);
      ++s.runs;
      const auto best = oracle_best(ev, table, lambda);
      const double gap = r.evaluation.lagrangian - best.evaluation.lagrangian;
      s.worst_gap = std::max(s.worst_gap, gap);
      if (gap > 1e-9)
        ++s.lagrangian_violations;
      if (!weakly_dominated(r.evaluation.coverage.fraction, r.evaluation.rate, front))
        ++s.dominance_violations;
      if (!r.trace.non_decreasing() || !r.converged || r.iterations >= 10 * n)
        ++s.trace_failures;
      if (lambda == 0.0) {
        double top = 0.0;
        for (std::size_t m = 0; m < n; ++m)
          top = std::max(top, cluster_rate(m, iota(n), ev.alpha()));
        if (r.clustering.masters().size() != 1 || r.evaluation.rate != top ||
            r.evaluation.rate != best.evaluation.rate)
          ++s.collapse_failures;
      }
    }
  }
  return s;
}

} // namespace

int main() {
  const auto clusters = random_clusters(200, 314159);

  run(1, "split optimality vs step-1e-3 simplex grid", 10.0, [&] {
    Outcome o;
    std::size_t literal_checked = 0;
    double worst = 1e300;
    for (const auto &c : clusters) {
      const auto a = as_matrix(c.alpha);
      const double closed = 1.0 / cluster_rate(0, iota(c.alpha.size()), a);
      const double grid = grid_search_min(c.alpha, 1000);
      worst = std::min(worst, grid - closed);
      if (grid < closed - 1e-6)
        o.pass = false;
      if (c.alpha.size() <= 3) {
        ++literal_checked;
        if (literal_grid_min(c.alpha, 1000) != grid)
          o.pass = false;
      }
    }
    o.detail = "200 clusters, min(grid - closed) = " + fmt("%.3g", worst) + ", " +
               std::to_string(literal_checked) + " cross-checked by literal enumeration";
    return o;
  });

  run(2, "equal finish times under the optimal split", 0, [&] {
    Outcome o;
    double worst = 0.0;
    const double b0 = 0.7, b1 = 0.3;
    for (const auto &c : clusters) {
      // Worker j: compute share f of alpha_j, the rest is round-trip transfer.
      std::vector<MemberLink> links;
      for (std::size_t j = 0; j < c.alpha.size(); ++j) {
        const double f = c.compute_share[j];
        const double gamma = 1.0 / (f * c.alpha[j]);
        links.push_back({j, j == 0 ? LinkRate::infinite()
                                   : LinkRate::finite((b0 + b1) / ((1.0 - f) * c.alpha[j])),
                         gamma});
      }
      const auto a = as_matrix(c.alpha);
      const auto split = optimal_split(0, iota(c.alpha.size()), a);
      const auto sch = simulate_frame(0, links, split, b0, b1, 1.0);
      for (const auto &m : sch.members) {
        const double rel = std::abs(m.result_return.end - sch.completion) / sch.completion;
        worst = std::max(worst, rel);
      }
    }
    o.pass = worst <= 1e-9;
    o.detail = "200 clusters, max relative spread = " + fmt("%.3g", worst);
    return o;
  });

  run(3, "analytical vs simulated cluster rate", 0, [&] {
    Outcome o;
    std::mt19937_64 rng(2718);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const double r = std::array{2.0, 2.5, 3.0}[t % 3];
      const Scenario s = uav(8, 7000 + t, r);
      const AlphaMatrix a = build_alpha(s);
      std::uniform_int_distribution<std::size_t> pick(0, 7), size(1, 8);
      const std::size_t master = pick(rng);
      auto order = iota(8);
      std::shuffle(order.begin(), order.end(), rng);
      const std::size_t k = size(rng);
      std::vector<std::size_t> members{master};
      for (auto j : order)
        if (j != master && members.size() < k)
          members.push_back(j);
      std::sort(members.begin(), members.end());
      const auto split = optimal_split(master, members, a);
      const auto sch = simulate_cluster(s, master, members, split, 1.0);
      const double analytic = cluster_rate(master, members, a);
      worst = std::max(worst, std::abs(throughput_check(sch, 1.0) - analytic) / analytic);
    }
    o.pass = worst <= 1e-9;
    o.detail = "100 clusters, max relative error = " + fmt("%.3g", worst);
    return o;
  });

  SmallRuns small;
  run(4, "oracle dominance on n in {4,5,6}", 120.0, [&] {
    small = small_runs();
    Outcome o;
    o.pass = small.lagrangian_violations == 0 && small.dominance_violations == 0;
    o.detail = std::to_string(small.scenarios) + " scenarios, " + std::to_string(small.runs) +
               " runs, L violations " + std::to_string(small.lagrangian_violations) +
               ", dominance violations " + std::to_string(small.dominance_violations) +
               ", max L(descent) - L* = " + fmt("%.3g", small.worst_gap);
    return o;
  });

  run(5, "lambda = 0 collapses to the best single master", 0, [&] {
    Outcome o;
    o.pass = small.scenarios == 50 && small.collapse_failures == 0;
    o.detail = std::to_string(small.collapse_failures) + " of 50 scenarios differ";
    return o;
  });

  run(6, "monotone Lagrangian and termination", 0, [&] {
    Outcome o;
    o.pass = small.runs > 0 && small.trace_failures == 0;
    o.detail = std::to_string(small.trace_failures) + " of " + std::to_string(small.runs) +
               " runs non-monotone or capped";
    return o;
  });

  run(7, "link rate at 10 m, r = 2", 0, [&] {
    Outcome o;
    const double rho = link_rate(10.0, ScenarioDefaults::uav(2.0).radio).bits_per_second();
    const double reference = 19424437.643989277;
    o.pass = std::abs(rho - 1.942e7) / 1.942e7 <= 0.01 &&
             std::abs(rho - reference) / reference <= 1e-12;
    o.detail = "rho = " + fmt("%.6f", rho) + " b/s";
    return o;
  });

  run(8, "coverage accuracy", 0, [&] {
    Outcome o;
    Scenario disk = uav(1, 1);
    disk.nodes[0].position = {5000.0, 5000.0};
    const CoverageConfig grid{CoverageMethod::grid, 25.0};
    const double frac = coverage(disk, iota(1), grid).fraction;
    const double expect = 4.0 * std::numbers::pi / 100.0;
    const double disk_err = std::abs(frac - expect) / expect;

    std::mt19937_64 rng(1618);
    std::uniform_int_distribution<std::size_t> count(1, 5);
    std::uniform_real_distribution<double> radius(100.0, 3000.0);
    std::size_t over = 0, over_per_component = 0;
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      Scenario s = generate_scenario(count(rng), Region::segment(0.0, 10000.0),
                                     ScenarioDefaults::uav(), 8000 + t);
      s.coverage_radius_m = radius(rng);
      const auto all = iota(s.size());
      const double g = coverage(s, all, grid).absolute;
      const double e = coverage(s, all, {CoverageMethod::exact1d}).absolute;
      worst = std::max(worst, std::abs(g - e));
      if (std::abs(g - e) > 25.0 + 1e-9)
        ++over;
      // Each disjoint covered interval carries its own endpoint error.
      std::vector<std::pair<double, double>> iv;
      for (const auto &nd : s.nodes)
        iv.emplace_back(std::max(0.0, nd.position[0] - s.coverage_radius_m),
                        std::min(10000.0, nd.position[0] + s.coverage_radius_m));
      std::sort(iv.begin(), iv.end());
      std::size_t components = 0;
      double reach = -1.0;
      for (const auto &[lo, hi] : iv) {
        if (lo > reach)
          ++components;
        reach = std::max(reach, hi);
      }
      if (std::abs(g - e) > 25.0 * components + 1e-9)
        ++over_per_component;
    }
    o.pass = disk_err <= 5e-3 && over == 0;
    o.detail = "disk relative error " + fmt("%.3g", disk_err) + "; 1d: " +
               std::to_string(over) + " of 50 layouts beyond one 25 m cell, worst " +
               fmt("%.3g", worst) + " m; " + std::to_string(over_per_component) +
               " beyond one cell per covered component";
    return o;
  });

  run(9, "path loss exponent dominance on 50 nodes", 300.0, [&] {
    Outcome o;
    const Scenario base = uav(50, 2020);
    const std::array<double, 3> exps{2.0, 2.5, 3.0};
    std::vector<Evaluator> evs;
    for (double r : exps) {
      const Scenario s = base.with_pathloss(r);
      evs.emplace_back(s, s.coverage);
    }
    SweepConfig cfg;
    cfg.lambdas = log_grid(1e-3, 10.0, 25);
    std::size_t ordered = 0, strict = 0, total = 0;
    bool shapes = true;
    std::string sizes;
    for (std::size_t e = 0; e < exps.size(); ++e) {
      const auto pts = sweep(evs[e], cfg);
      const auto front = frontier(to_points(pts, base.tasks));
      shapes = shapes && !front.empty() && frontier_shape_ok(front);
      sizes += (e ? "/" : "") + std::to_string(front.size());
      if (e != 0)
        continue;
      for (const auto &p : pts) {
        const auto &c = p.result.clustering;
        const double r2 = evs[0].evaluate(c, 0.0).rate;
        const double r25 = evs[1].evaluate(c, 0.0).rate;
        const double r3 = evs[2].evaluate(c, 0.0).rate;
        ++total;
        if (r2 >= r25 && r25 >= r3)
          ++ordered;
        if (r2 > r25 && r25 > r3)
          ++strict;
      }
    }
    o.pass = ordered == total && shapes;
    o.detail = std::to_string(ordered) + "/" + std::to_string(total) + " ordered (" +
               std::to_string(strict) + " strictly); frontier sizes r=2/2.5/3: " + sizes +
               (shapes ? ", all non-increasing" : ", NOT monotone");
    return o;
  });

  run(10, "pareto filter vs quadratic dominance", 0, [&] {
    Outcome o;
    std::mt19937_64 rng(1729);
    std::size_t mismatches = 0;
    for (int t = 0; t < 1000; ++t) {
      std::uniform_int_distribution<std::size_t> size(1, 100);
      std::vector<CoverageRate> pts(size(rng));
      const bool coarse = t % 2 == 0; // coarse values force ties and duplicates
      std::uniform_int_distribution<int> q(0, 9);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (auto &p : pts)
        p = coarse ? CoverageRate{q(rng) / 9.0, q(rng) / 3.0} : CoverageRate{u(rng), u(rng)};
      std::vector<std::size_t> expect;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < pts.size() && !drop; ++j) {
          if (i == j)
            continue;
          const bool weak = pts[j].coverage >= pts[i].coverage && pts[j].rate >= pts[i].rate;
          const bool same = pts[j].coverage == pts[i].coverage && pts[j].rate == pts[i].rate;
          drop = weak && (!same || j < i);
        }
        if (!drop)
          expect.push_back(i);
      }
      std::sort(expect.begin(), expect.end(), [&](std::size_t a, std::size_t b) {
        return pts[a].coverage < pts[b].coverage;
      });
      if (pareto_filter(pts) != expect)
        ++mismatches;
    }
    o.pass = mismatches == 0;
    o.detail = std::to_string(mismatches) + " of 1000 point sets differ";
    return o;
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
