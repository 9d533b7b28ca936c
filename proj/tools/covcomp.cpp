// covcomp: plan master/worker clusterings that trade sensing coverage
// against distributed computation rate.
//
//   covcomp gen      --n 50 --square-km 10 --seed 7 --preset uav --out s.json
//   covcomp solve    --scenario s.json --lambda 0.1 --out-topology t.json --trace tr.csv
//   covcomp sweep    --scenario s.json [--lambdas ... | --grid MIN MAX COUNT] --out-csv f.csv
//   covcomp oracle   --scenario s.json (--lambda L | --pareto) --out-csv o.csv
//   covcomp simulate --scenario s.json --topology t.json --T 1 --out-csv ev.csv

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "covcomp/descent.hpp"
#include "covcomp/framesim.hpp"
#include "covcomp/oracle.hpp"
#include "covcomp/pareto.hpp"
#include "covcomp/scenario.hpp"
#include "covcomp/topology.hpp"

namespace fs = std::filesystem;
using namespace covcomp;

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Writes go to a sibling temp file first so a failed run never leaves a
// half-written artifact behind.
void write_atomically(const fs::path &path, const std::string &content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out)
      throw std::runtime_error("write failed for '" + path.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct GenOptions {
  long long n = 0;
  double square_km = 10.0;
  std::vector<double> region;
  std::uint64_t seed = 1;
  std::string out;
  std::string preset = "uav";
  std::optional<double> pathloss, radius, gamma, b0, b1, rt, resolution;
  std::string method;
  std::optional<std::uint64_t> samples;
};

struct SolveOptions {
  std::string scenario;
  double lambda = 0.0;
  std::string topology, trace;
  double tol = 1e-9;
  std::size_t max_iters = 0;
  std::size_t restarts = 1;
  bool absolute = false;
};

struct SweepOptions {
  std::string scenario;
  std::vector<double> lambdas;
  std::vector<double> grid;
  bool include_zero = false;
  std::size_t restarts = 1;
  std::size_t threads = 1;
  std::string out_csv;
  bool pareto = false;
  std::optional<double> pathloss;
  bool absolute = false;
};

struct OracleOptions {
  std::string scenario;
  std::optional<double> lambda;
  bool pareto = false;
  std::string out_csv, topology;
  std::size_t cap = kDefaultOracleCap;
};

struct SimulateOptions {
  std::string scenario, topology, out_csv;
  double tasks = 1.0;
};

CoverageTerm term_of(bool absolute) {
  return absolute ? CoverageTerm::absolute : CoverageTerm::fraction;
}

int run_gen(const GenOptions &o) {
  if (o.n < 1)
    throw UsageError("--n must be at least 1");
  ScenarioDefaults d;
  if (o.preset == "uav")
    d = ScenarioDefaults::uav(o.pathloss.value_or(3.0));
  else if (o.preset != "none")
    throw UsageError("unknown preset '" + o.preset + "'");
  if (o.pathloss)
    d.radio.pathloss_r = *o.pathloss;
  if (o.radius)
    d.coverage_radius_m = *o.radius;
  if (o.gamma)
    d.gamma = *o.gamma;
  if (o.b0)
    d.tasks.b0_bits = *o.b0;
  if (o.b1)
    d.tasks.b1_bits = *o.b1;
  if (o.rt)
    d.tasks.arrival_rate = *o.rt;
  if (o.resolution)
    d.coverage.resolution_m = *o.resolution;
  if (!o.method.empty())
    d.coverage.method = coverage_method_from_string(o.method);
  if (o.samples)
    d.coverage.samples = *o.samples;

  Region region;
  if (!o.region.empty()) {
    if (o.region.size() != 2 && o.region.size() != 4)
      throw UsageError("--region takes LO HI [LO HI] (one or two axes)");
    for (std::size_t k = 0; k < o.region.size(); k += 2)
      region.bounds.push_back({o.region[k], o.region[k + 1]});
  } else {
    region = Region::square(o.square_km * 1000.0);
  }
  const Scenario s = generate_scenario(static_cast<std::size_t>(o.n), region, d, o.seed);
  const std::string text = dump_scenario(s);
  if (o.out.empty())
    std::cout << text;
  else
    write_atomically(o.out, text);
  return 0;
}

void print_summary(const Scenario &s, const Clustering &c, const Evaluation &e) {
  std::cout << std::setprecision(10) << "lambda            " << e.lambda << "\n"
            << "masters           " << c.masters().size() << " of " << c.size() << "\n"
            << "coverage_fraction " << e.coverage.fraction << "\n"
            << "coverage_abs_m2   " << e.coverage.absolute << "\n"
            << "rate_tasks_per_s  " << e.rate << "\n"
            << "lagrangian        " << e.lagrangian << "\n"
            << "stable            "
            << (stability(e, s.tasks) == Stability::stable ? "yes" : "no") << " (RT = "
            << s.tasks.arrival_rate << ")\n";
}

int run_solve(const SolveOptions &o) {
  if (!(o.lambda >= 0.0))
    throw UsageError("--lambda must be non-negative");
  const Scenario s = load_scenario(o.scenario);
  const Evaluator ev(s, s.coverage, term_of(o.absolute));
  SweepConfig sc;
  sc.lambdas = {o.lambda};
  sc.restarts = o.restarts;
  sc.descent.tol = o.tol;
  sc.descent.max_outer_iters = o.max_iters;
  const auto point = sweep(ev, sc).front();
  const auto &r = point.result;
  print_summary(s, r.clustering, r.evaluation);
  std::cout << "iterations        " << r.iterations << (r.converged ? "" : " (capped)") << "\n";
  if (!o.topology.empty())
    write_atomically(o.topology, dump_topology(ev, r.clustering, r.evaluation));
  if (!o.trace.empty()) {
    std::ostringstream csv;
    r.trace.write_csv(csv);
    write_atomically(o.trace, csv.str());
  }
  return 0;
}

int run_sweep(const SweepOptions &o) {
  SweepConfig sc;
  if (!o.lambdas.empty() && !o.grid.empty())
    throw UsageError("use either --lambdas or --grid, not both");
  if (!o.grid.empty()) {
    if (o.grid.size() != 3)
      throw UsageError("--grid takes MIN MAX COUNT");
    const double count = o.grid[2];
    if (!(count >= 1.0) || count != std::floor(count))
      throw UsageError("--grid COUNT must be a positive integer");
    sc.lambdas = log_grid(o.grid[0], o.grid[1], static_cast<std::size_t>(count));
    if (o.include_zero)
      sc.lambdas.insert(sc.lambdas.begin(), 0.0);
  } else if (!o.lambdas.empty()) {
    sc.lambdas = o.lambdas;
  }
  if (sc.lambdas.empty())
    throw UsageError("empty lambda grid");
  for (double l : sc.lambdas)
    if (!(l >= 0.0))
      throw UsageError("lambda values must be non-negative");
  sc.restarts = o.restarts;
  sc.threads = o.threads;

  Scenario s = load_scenario(o.scenario);
  if (o.pathloss)
    s = s.with_pathloss(*o.pathloss);
  const Evaluator ev(s, s.coverage, term_of(o.absolute));
  auto points = to_points(sweep(ev, sc), s.tasks);
  if (o.pareto)
    points = frontier(points);
  std::ostringstream csv;
  write_frontier_csv(csv, points);
  if (o.out_csv.empty())
    std::cout << csv.str();
  else
    write_atomically(o.out_csv, csv.str());
  return 0;
}

int run_oracle(const OracleOptions &o) {
  if (o.lambda.has_value() == o.pareto)
    throw UsageError("give exactly one of --lambda or --pareto");
  const Scenario s = load_scenario(o.scenario);
  if (s.size() > o.cap)
    throw OracleRefusal(s.size(), clustering_count(s.size()), o.cap);
  const Evaluator ev(s, s.coverage);
  const auto table = oracle_table(ev, o.cap);
  std::vector<FrontierPoint> rows;
  if (o.pareto) {
    rows = oracle_pareto(table, s.tasks);
  } else {
    if (!(*o.lambda >= 0.0))
      throw UsageError("--lambda must be non-negative");
    const auto best = oracle_best(ev, table, *o.lambda);
    const auto &e = best.evaluation;
    rows.push_back({*o.lambda, e.coverage.fraction, e.coverage.absolute, e.rate,
                    best.clustering.masters().size(), 0,
                    stability(e, s.tasks) == Stability::stable, best.clustering});
    print_summary(s, best.clustering, e);
    if (!o.topology.empty())
      write_atomically(o.topology, dump_topology(ev, best.clustering, e));
  }
  std::cout << "clusterings       " << table.size() << "\n";
  std::ostringstream csv;
  write_frontier_csv(csv, rows);
  if (o.out_csv.empty())
    std::cout << csv.str();
  else
    write_atomically(o.out_csv, csv.str());
  return 0;
}

int run_simulate(const SimulateOptions &o) {
  if (!(o.tasks > 0.0))
    throw UsageError("--T must be positive");
  const Scenario s = load_scenario(o.scenario);
  const Clustering c = parse_topology(read_file(o.topology), s.size());
  const AlphaMatrix alpha = build_alpha(s);
  std::vector<FrameSchedule> schedules;
  std::cout << std::setprecision(15) << "master,analytical_rate,simulated_rate\n";
  double network = std::numeric_limits<double>::infinity();
  for (auto m : c.masters()) {
    const auto members = c.members(m);
    const auto split = optimal_split(m, members, alpha);
    schedules.push_back(simulate_cluster(s, m, members, split, o.tasks));
    const double sim = throughput_check(schedules.back(), o.tasks);
    network = std::min(network, sim);
    std::cout << m + 1 << ',' << cluster_rate(m, members, alpha) << ',' << sim << "\n";
  }
  std::cout << "network_rate " << network << "\n";
  if (!o.out_csv.empty()) {
    std::ostringstream csv;
    write_schedule_csv(csv, schedules);
    write_atomically(o.out_csv, csv.str());
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Coverage vs. computation-rate planner for master/worker node clusterings"};
  app.require_subcommand(1);

  GenOptions gen;
  auto *g = app.add_subcommand("gen", "Generate a random scenario");
  g->add_option("--n", gen.n, "Number of nodes")->required();
  g->add_option("--square-km", gen.square_km, "Side of a square region in km");
  g->add_option("--region", gen.region, "Explicit bounds LO HI [LO HI] in meters");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--out", gen.out, "Output scenario file (stdout if omitted)");
  g->add_option("--preset", gen.preset, "Parameter preset: uav | none");
  g->add_option("--pathloss", gen.pathloss, "Path loss exponent r");
  g->add_option("--D", gen.radius, "Coverage radius in meters");
  g->add_option("--gamma", gen.gamma, "Processing speed, tasks/s");
  g->add_option("--b0", gen.b0, "Input bits per task");
  g->add_option("--b1", gen.b1, "Output bits per task");
  g->add_option("--RT", gen.rt, "Task arrival rate, tasks/s");
  g->add_option("--resolution", gen.resolution, "Coverage grid cell size in meters");
  g->add_option("--coverage-method", gen.method, "grid | montecarlo | exact1d");
  g->add_option("--samples", gen.samples, "Monte Carlo sample count");

  SolveOptions solve;
  auto *so = app.add_subcommand("solve", "Run the local search at one lambda");
  so->add_option("--scenario", solve.scenario)->required();
  so->add_option("--lambda", solve.lambda, "Lagrange multiplier")->required();
  so->add_option("--out-topology", solve.topology, "Topology JSON output");
  so->add_option("--trace", solve.trace, "Per-iteration trace CSV output");
  so->add_option("--tol", solve.tol, "Minimum improvement per pass");
  so->add_option("--max-iters", solve.max_iters, "Outer iteration cap (0: 10 n)");
  so->add_option("--restarts", solve.restarts, "Restarts with shuffled scan order");
  so->add_flag("--absolute-coverage", solve.absolute, "Use m^2 instead of fraction in L");

  SweepOptions sw;
  auto *sp = app.add_subcommand("sweep", "Sweep lambda and emit coverage/rate points");
  sp->add_option("--scenario", sw.scenario)->required();
  sp->add_option("--lambdas", sw.lambdas, "Explicit lambda values");
  sp->add_option("--grid", sw.grid, "Log grid MIN MAX COUNT");
  sp->add_flag("--include-zero", sw.include_zero, "Prepend lambda = 0 to --grid");
  sp->add_option("--restarts", sw.restarts, "Restarts per lambda");
  sp->add_option("--threads", sw.threads, "Worker threads across lambdas");
  sp->add_option("--out-csv", sw.out_csv, "CSV output (stdout if omitted)");
  sp->add_flag("--pareto", sw.pareto, "Keep only the Pareto frontier");
  sp->add_option("--pathloss", sw.pathloss, "Override the scenario's path loss exponent");
  sp->add_flag("--absolute-coverage", sw.absolute, "Use m^2 instead of fraction in L");

  OracleOptions orc;
  auto *op = app.add_subcommand("oracle", "Exhaustive search for small scenarios");
  op->add_option("--scenario", orc.scenario)->required();
  op->add_option("--lambda", orc.lambda, "Best clustering at this lambda");
  op->add_flag("--pareto", orc.pareto, "Exact Pareto frontier");
  op->add_option("--out-csv", orc.out_csv, "CSV output (stdout if omitted)");
  op->add_option("--out-topology", orc.topology, "Topology JSON of the --lambda optimum");
  op->add_option("--cap", orc.cap, "Largest n to enumerate");

  SimulateOptions sim;
  auto *si = app.add_subcommand("simulate", "Simulate one frame per cluster of a topology");
  si->add_option("--scenario", sim.scenario)->required();
  si->add_option("--topology", sim.topology)->required();
  si->add_option("--T", sim.tasks, "Tasks per frame");
  si->add_option("--out-csv", sim.out_csv, "Schedule events CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (g->parsed())
      return run_gen(gen);
    if (so->parsed())
      return run_solve(solve);
    if (sp->parsed())
      return run_sweep(sw);
    if (op->parsed())
      return run_oracle(orc);
    if (si->parsed())
      return run_simulate(sim);
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
