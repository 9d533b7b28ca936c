#include "covcomp/scenario.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace covcomp {

using nlohmann::json;

double Region::measure() const {
  double m = 1.0;
  for (const auto &b : bounds)
    m *= b.length();
  return m;
}

bool Region::contains(const std::vector<double> &p) const {
  if (p.size() != bounds.size())
    return false;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (!bounds[k].contains(p[k]))
      return false;
  return true;
}

Region Region::square(double side_m) {
  return Region{{{0.0, side_m}, {0.0, side_m}}};
}

Region Region::segment(double lo, double hi) { return Region{{{lo, hi}}}; }

std::string to_string(CoverageMethod m) {
  switch (m) {
  case CoverageMethod::grid:
    return "grid";
  case CoverageMethod::montecarlo:
    return "montecarlo";
  case CoverageMethod::exact1d:
    return "exact1d";
  }
  return "grid";
}

CoverageMethod coverage_method_from_string(const std::string &s) {
  if (s == "grid")
    return CoverageMethod::grid;
  if (s == "montecarlo")
    return CoverageMethod::montecarlo;
  if (s == "exact1d")
    return CoverageMethod::exact1d;
  throw ScenarioError("unknown coverage method '" + s + "'");
}

double Scenario::distance(std::size_t i, std::size_t j) const {
  const auto &a = nodes[i].position;
  const auto &b = nodes[j].position;
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

Scenario Scenario::with_pathloss(double r) const {
  Scenario copy = *this;
  copy.radio.pathloss_r = r;
  return copy;
}

void Scenario::validate() const {
  const int dim = region.dimension();
  if (dim == 3)
    throw ScenarioError("dimension 3 is not supported (only 1 and 2)");
  if (dim != 1 && dim != 2)
    throw ScenarioError("region dimension must be 1 or 2");
  for (const auto &b : region.bounds)
    if (!(b.lo < b.hi))
      throw ScenarioError("region bounds must satisfy lo < hi");
  if (nodes.empty())
    throw ScenarioError("scenario must contain at least one node");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto &nd = nodes[i];
    const std::string who = "node " + std::to_string(i + 1);
    if (static_cast<int>(nd.position.size()) != dim)
      throw ScenarioError(who + ": position dimension mismatch");
    for (double x : nd.position)
      if (!std::isfinite(x))
        throw ScenarioError(who + ": position is not finite");
    if (!region.contains(nd.position))
      throw ScenarioError(who + ": position outside region");
    if (!(nd.gamma > 0.0) || !std::isfinite(nd.gamma))
      throw ScenarioError(who + ": gamma must be positive");
  }
  const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(radio.bandwidth_hz))
    throw ScenarioError("radio: bandwidth must be positive");
  if (!positive(radio.power_w))
    throw ScenarioError("radio: power must be positive");
  if (!positive(radio.noise_w_per_hz))
    throw ScenarioError("radio: noise density must be positive");
  if (!positive(radio.wavelength_m))
    throw ScenarioError("radio: wavelength must be positive");
  if (!positive(radio.ref_dist_m))
    throw ScenarioError("radio: reference distance must be positive");
  if (!positive(radio.pathloss_r))
    throw ScenarioError("radio: path loss exponent must be positive");
  if (!(tasks.b0_bits >= 0.0) || !(tasks.b1_bits >= 0.0))
    throw ScenarioError("tasks: b0_bits and b1_bits must be non-negative");
  if (!positive(tasks.arrival_rate))
    throw ScenarioError("tasks: RT must be positive");
  if (!positive(coverage_radius_m))
    throw ScenarioError("coverage: D_m must be positive");
  switch (coverage.method) {
  case CoverageMethod::grid:
    if (!positive(coverage.resolution_m))
      throw ScenarioError("coverage: resolution_m must be positive");
    break;
  case CoverageMethod::montecarlo:
    if (coverage.samples < 1)
      throw ScenarioError("coverage: samples must be at least 1");
    break;
  case CoverageMethod::exact1d:
    if (dim != 1)
      throw ScenarioError("coverage: exact1d requires dimension 1");
    break;
  }
}

ScenarioDefaults ScenarioDefaults::uav(double pathloss_r) {
  ScenarioDefaults d;
  d.radio = RadioParams{1e6, dbm_to_watts(0.0), dbm_to_watts(-170.0),
                        1.0 / 3.0, 10.0, pathloss_r};
  d.tasks = TaskParams{4e6, 0.0, 1.0};
  d.coverage_radius_m = 2000.0;
  d.gamma = 1.0 / 5.4;
  d.coverage = CoverageConfig{};
  return d;
}

Scenario generate_scenario(std::size_t n, const Region &region,
                           const ScenarioDefaults &defaults,
                           std::uint64_t seed) {
  if (n < 1)
    throw ScenarioError("generate_scenario: n must be at least 1");
  Scenario s;
  s.region = region;
  s.radio = defaults.radio;
  s.tasks = defaults.tasks;
  s.coverage_radius_m = defaults.coverage_radius_m;
  s.coverage = defaults.coverage;
  if (region.dimension() == 1 && s.coverage.method == CoverageMethod::grid)
    s.coverage.method = CoverageMethod::exact1d;

  std::mt19937_64 rng(seed);
  s.nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Node nd;
    nd.gamma = defaults.gamma;
    for (const auto &b : region.bounds) {
      std::uniform_real_distribution<double> u(b.lo, b.hi);
      nd.position.push_back(u(rng));
    }
    s.nodes.push_back(std::move(nd));
  }
  s.validate();
  return s;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

namespace {

void require_keys(const json &obj, const std::string &where,
                  std::initializer_list<const char *> allowed) {
  if (!obj.is_object())
    throw ScenarioError(where + ": expected an object");
  std::set<std::string> ok;
  for (const char *k : allowed)
    ok.insert(k);
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!ok.count(it.key()))
      throw ScenarioError(where + ": unknown key '" + it.key() + "'");
}

double number_at(const json &obj, const std::string &where, const char *key) {
  if (!obj.contains(key))
    throw ScenarioError(where + ": missing key '" + key + "'");
  const auto &v = obj.at(key);
  if (!v.is_number())
    throw ScenarioError(where + "." + key + ": expected a number");
  return v.get<double>();
}

} // namespace

Scenario parse_scenario(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ScenarioError(std::string("parse error: ") + e.what());
  }
  require_keys(doc, "scenario", {"region", "nodes", "radio", "tasks", "coverage"});
  for (const char *k : {"region", "nodes", "radio", "tasks", "coverage"})
    if (!doc.contains(k))
      throw ScenarioError(std::string("scenario: missing key '") + k + "'");

  Scenario s;

  const auto &reg = doc.at("region");
  require_keys(reg, "region", {"dimension", "bounds"});
  const int dim = static_cast<int>(number_at(reg, "region", "dimension"));
  if (dim == 3)
    throw ScenarioError("dimension 3 is not supported (only 1 and 2)");
  if (!reg.contains("bounds") || !reg.at("bounds").is_array())
    throw ScenarioError("region.bounds: expected an array");
  for (const auto &b : reg.at("bounds")) {
    if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
      throw ScenarioError("region.bounds: each entry must be [lo, hi]");
    s.region.bounds.push_back({b[0].get<double>(), b[1].get<double>()});
  }
  if (s.region.dimension() != dim)
    throw ScenarioError("region: dimension does not match number of bounds");

  const auto &nodes = doc.at("nodes");
  if (!nodes.is_array())
    throw ScenarioError("nodes: expected an array");
  std::vector<bool> seen(nodes.size(), false);
  s.nodes.resize(nodes.size());
  for (const auto &nj : nodes) {
    require_keys(nj, "nodes[]", {"id", "pos", "gamma"});
    if (!nj.contains("id") || !nj.at("id").is_number_integer())
      throw ScenarioError("nodes[]: id must be an integer");
    const auto id = nj.at("id").get<long long>();
    if (id < 1 || id > static_cast<long long>(nodes.size()))
      throw ScenarioError("nodes: ids must be contiguous 1..n (got " +
                          std::to_string(id) + ")");
    if (seen[id - 1])
      throw ScenarioError("nodes: duplicate id " + std::to_string(id));
    seen[id - 1] = true;
    Node nd;
    if (!nj.contains("pos") || !nj.at("pos").is_array())
      throw ScenarioError("node " + std::to_string(id) + ": pos must be an array");
    for (const auto &x : nj.at("pos")) {
      if (!x.is_number())
        throw ScenarioError("node " + std::to_string(id) + ": pos entries must be numbers");
      nd.position.push_back(x.get<double>());
    }
    nd.gamma = number_at(nj, "node " + std::to_string(id), "gamma");
    s.nodes[id - 1] = std::move(nd);
  }

  const auto &radio = doc.at("radio");
  require_keys(radio, "radio",
               {"B_hz", "P_dBm", "N0_dBm_per_hz", "lambda_c_m", "d0_m", "pathloss_r"});
  s.radio.bandwidth_hz = number_at(radio, "radio", "B_hz");
  s.radio.power_w = dbm_to_watts(number_at(radio, "radio", "P_dBm"));
  s.radio.noise_w_per_hz = dbm_to_watts(number_at(radio, "radio", "N0_dBm_per_hz"));
  s.radio.wavelength_m = number_at(radio, "radio", "lambda_c_m");
  s.radio.ref_dist_m = number_at(radio, "radio", "d0_m");
  s.radio.pathloss_r = number_at(radio, "radio", "pathloss_r");

  const auto &tasks = doc.at("tasks");
  require_keys(tasks, "tasks", {"b0_bits", "b1_bits", "RT"});
  s.tasks.b0_bits = number_at(tasks, "tasks", "b0_bits");
  s.tasks.b1_bits = number_at(tasks, "tasks", "b1_bits");
  s.tasks.arrival_rate = number_at(tasks, "tasks", "RT");

  const auto &cov = doc.at("coverage");
  require_keys(cov, "coverage", {"D_m", "method", "resolution_m", "samples", "seed"});
  s.coverage_radius_m = number_at(cov, "coverage", "D_m");
  if (cov.contains("method")) {
    if (!cov.at("method").is_string())
      throw ScenarioError("coverage.method: expected a string");
    s.coverage.method = coverage_method_from_string(cov.at("method").get<std::string>());
  }
  if (cov.contains("resolution_m"))
    s.coverage.resolution_m = number_at(cov, "coverage", "resolution_m");
  if (cov.contains("samples")) {
    if (!cov.at("samples").is_number_unsigned())
      throw ScenarioError("coverage.samples: expected a non-negative integer");
    s.coverage.samples = cov.at("samples").get<std::uint64_t>();
  }
  if (cov.contains("seed")) {
    if (!cov.at("seed").is_number_unsigned())
      throw ScenarioError("coverage.seed: expected a non-negative integer");
    s.coverage.seed = cov.at("seed").get<std::uint64_t>();
  }

  s.validate();
  return s;
}

std::string dump_scenario(const Scenario &s) {
  json doc;
  json bounds = json::array();
  for (const auto &b : s.region.bounds)
    bounds.push_back({b.lo, b.hi});
  doc["region"] = {{"dimension", s.region.dimension()}, {"bounds", bounds}};

  json nodes = json::array();
  for (std::size_t i = 0; i < s.nodes.size(); ++i)
    nodes.push_back({{"id", i + 1}, {"pos", s.nodes[i].position}, {"gamma", s.nodes[i].gamma}});
  doc["nodes"] = std::move(nodes);

  doc["radio"] = {{"B_hz", s.radio.bandwidth_hz},
                  {"P_dBm", watts_to_dbm(s.radio.power_w)},
                  {"N0_dBm_per_hz", watts_to_dbm(s.radio.noise_w_per_hz)},
                  {"lambda_c_m", s.radio.wavelength_m},
                  {"d0_m", s.radio.ref_dist_m},
                  {"pathloss_r", s.radio.pathloss_r}};
  doc["tasks"] = {{"b0_bits", s.tasks.b0_bits},
                  {"b1_bits", s.tasks.b1_bits},
                  {"RT", s.tasks.arrival_rate}};

  json cov = {{"D_m", s.coverage_radius_m}, {"method", to_string(s.coverage.method)}};
  switch (s.coverage.method) {
  case CoverageMethod::grid:
    cov["resolution_m"] = s.coverage.resolution_m;
    break;
  case CoverageMethod::montecarlo:
    cov["samples"] = s.coverage.samples;
    cov["seed"] = s.coverage.seed;
    break;
  case CoverageMethod::exact1d:
    break;
  }
  doc["coverage"] = std::move(cov);
  return doc.dump(2) + "\n";
}

Scenario load_scenario(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ScenarioError("cannot open scenario file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

void save_scenario(const Scenario &s, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ScenarioError("cannot write scenario file '" + path.string() + "'");
  out << dump_scenario(s);
}

} // namespace covcomp
