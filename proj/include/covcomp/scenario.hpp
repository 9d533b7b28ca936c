#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace covcomp {

/// Raised for malformed scenario documents and violated invariants.
class ScenarioError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool operator==(const Interval &) const = default;
};

/// Axis-aligned box in one or two dimensions, meters.
struct Region {
  std::vector<Interval> bounds;

  int dimension() const { return static_cast<int>(bounds.size()); }
  double measure() const;
  bool contains(const std::vector<double> &p) const;
  bool operator==(const Region &) const = default;

  static Region square(double side_m);
  static Region segment(double lo, double hi);
};

struct Node {
  std::vector<double> position;
  double gamma = 1.0; ///< tasks/second

  bool operator==(const Node &) const = default;
};

/// Radio parameters in linear units (Watts, Watts/Hz).
struct RadioParams {
  double bandwidth_hz = 1e6;
  double power_w = 1e-3;
  double noise_w_per_hz = 1e-20;
  double wavelength_m = 1.0 / 3.0;
  double ref_dist_m = 10.0;
  double pathloss_r = 2.0;
};

struct TaskParams {
  double b0_bits = 4e6;
  double b1_bits = 0.0;
  double arrival_rate = 1.0; ///< R_T, tasks/second per master

  double round_trip_bits() const { return b0_bits + b1_bits; }
};

enum class CoverageMethod { grid, montecarlo, exact1d };

struct CoverageConfig {
  CoverageMethod method = CoverageMethod::grid;
  double resolution_m = 25.0; ///< grid cell edge
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
};

std::string to_string(CoverageMethod m);
CoverageMethod coverage_method_from_string(const std::string &s);

/// Immutable problem instance. Node indices are 0-based internally;
/// files and topology documents use 1-based ids.
struct Scenario {
  Region region;
  std::vector<Node> nodes;
  RadioParams radio;
  TaskParams tasks;
  double coverage_radius_m = 2000.0;
  CoverageConfig coverage;

  std::size_t size() const { return nodes.size(); }
  double distance(std::size_t i, std::size_t j) const;

  /// Same layout under a different path loss exponent.
  Scenario with_pathloss(double r) const;

  /// Throws ScenarioError naming the first violated invariant.
  void validate() const;
};

/// Defaults shared by generated scenarios.
struct ScenarioDefaults {
  RadioParams radio;
  TaskParams tasks;
  double coverage_radius_m = 2000.0;
  double gamma = 1.0 / 5.4;
  CoverageConfig coverage;

  /// 50-UAV wildfire-monitoring setting: 10 km square, D = 2 km,
  /// gamma = 1/5.4, b0 = 4 Mbit, b1 = 0, B = 1 MHz, P = 0 dBm,
  /// N0 = -170 dBm/Hz, lambda_c = 1/3 m, d0 = 10 m.
  static ScenarioDefaults uav(double pathloss_r = 3.0);
};

Scenario generate_scenario(std::size_t n, const Region &region,
                           const ScenarioDefaults &defaults,
                           std::uint64_t seed);

double dbm_to_watts(double dbm);
double watts_to_dbm(double w);

Scenario parse_scenario(const std::string &text);
std::string dump_scenario(const Scenario &s);
Scenario load_scenario(const std::filesystem::path &path);
void save_scenario(const Scenario &s, const std::filesystem::path &path);

} // namespace covcomp
