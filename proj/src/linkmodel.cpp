#include "covcomp/linkmodel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace covcomp {

LinkRate link_rate(double distance_m, const RadioParams &radio) {
  if (distance_m == 0.0)
    return LinkRate::infinite();
  const double snr_ref = radio.power_w / (radio.bandwidth_hz * radio.noise_w_per_hz);
  const double gain = radio.wavelength_m / (4.0 * std::numbers::pi * radio.ref_dist_m);
  const double snr = snr_ref * gain * gain *
                     std::pow(radio.ref_dist_m / distance_m, radio.pathloss_r);
  // log1p keeps precision when the SNR is tiny (far links).
  return LinkRate::finite(radio.bandwidth_hz * std::log1p(snr) / std::numbers::ln2);
}

AlphaMatrix::AlphaMatrix(std::size_t n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (values_.size() != n * n)
    throw std::invalid_argument("AlphaMatrix: expected n*n values");
  for (double v : values_)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("AlphaMatrix: entries must be finite and positive");
}

std::vector<LinkRate> build_link_rates(const Scenario &scenario) {
  const std::size_t n = scenario.size();
  std::vector<LinkRate> rates(n * n, LinkRate::infinite());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const LinkRate r = link_rate(scenario.distance(i, j), scenario.radio);
      rates[i * n + j] = r;
      rates[j * n + i] = r;
    }
  return rates;
}

AlphaMatrix build_alpha(const Scenario &scenario) {
  const std::size_t n = scenario.size();
  const double bits = scenario.tasks.round_trip_bits();
  const auto rates = build_link_rates(scenario);
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double compute = 1.0 / scenario.nodes[j].gamma;
      a[i * n + j] = i == j ? compute : rates[i * n + j].transfer_time(bits) + compute;
    }
  return AlphaMatrix(n, std::move(a));
}

} // namespace covcomp
