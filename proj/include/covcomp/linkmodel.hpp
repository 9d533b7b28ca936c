#pragma once

#include <cstddef>
#include <vector>

#include "covcomp/scenario.hpp"

namespace covcomp {

/// Link throughput in bits/second. The self-link (zero distance) is
/// represented as an infinite rate whose transfer time is exactly zero.
class LinkRate {
public:
  static LinkRate infinite() { return LinkRate(0.0, true); }
  static LinkRate finite(double bits_per_second) { return LinkRate(bits_per_second, false); }

  bool is_infinite() const { return infinite_; }
  double bits_per_second() const { return bps_; }

  /// Seconds needed to move `bits` over this link.
  double transfer_time(double bits) const {
    if (infinite_ || bits == 0.0)
      return 0.0;
    return bits / bps_;
  }

private:
  LinkRate(double bps, bool inf) : bps_(bps), infinite_(inf) {}
  double bps_;
  bool infinite_;
};

/// Free-space path loss Shannon rate at distance d (meters):
///   B log2(1 + P/(B N0) (lambda_c / (4 pi d0))^2 (d0/d)^r)
/// Distances below d0 use the same expression. d == 0 is the self-link.
LinkRate link_rate(double distance_m, const RadioParams &radio);

/// Per-pair delay coefficients alpha(i, j) in seconds/task:
///   alpha(i, j) = (b0 + b1) / rho(|u_i - u_j|) + 1/gamma_j,  alpha(i, i) = 1/gamma_i.
/// Row i is the master, column j the member doing the work.
class AlphaMatrix {
public:
  AlphaMatrix() = default;
  /// Row-major n x n values; every entry must be finite and positive.
  AlphaMatrix(std::size_t n, std::vector<double> values);

  std::size_t size() const { return n_; }
  double operator()(std::size_t master, std::size_t member) const {
    return values_[master * n_ + member];
  }

private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

AlphaMatrix build_alpha(const Scenario &scenario);

/// Link rates between every pair of nodes (row-major, symmetric).
std::vector<LinkRate> build_link_rates(const Scenario &scenario);

} // namespace covcomp
