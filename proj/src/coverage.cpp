#include "covcomp/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace covcomp {

namespace {

std::size_t cells_along(const Interval &b, double resolution) {
  const double n = std::ceil(b.length() / resolution - 1e-9);
  return static_cast<std::size_t>(std::max(1.0, n));
}

} // namespace

CoverageModel::CoverageModel(const Scenario &scenario, const CoverageConfig &config)
    : method_(config.method), region_(scenario.region), radius_(scenario.coverage_radius_m),
      region_measure_(scenario.region.measure()) {
  const int dim = region_.dimension();
  if (dim != 1 && dim != 2)
    throw CoverageError("coverage supports dimension 1 and 2 only");
  if (method_ == CoverageMethod::exact1d && dim != 1)
    throw CoverageError("exact1d coverage requires a one-dimensional region");
  centers_.reserve(scenario.size());
  for (const auto &nd : scenario.nodes)
    centers_.push_back(nd.position);
  disks_.resize(centers_.size());
  const double r2 = radius_ * radius_;

  if (method_ == CoverageMethod::grid) {
    if (!(config.resolution_m > 0.0))
      throw CoverageError("grid coverage requires resolution_m > 0");
    std::vector<std::size_t> cells;
    std::vector<double> step;
    for (const auto &b : region_.bounds) {
      cells.push_back(cells_along(b, config.resolution_m));
      step.push_back(b.length() / static_cast<double>(cells.back()));
    }
    point_count_ = 1;
    for (auto c : cells)
      point_count_ *= c;

    // Index range of cell centers lo + (k + 1/2) h within [a, b].
    const auto span_of = [&](int axis, double a, double b) {
      const auto &iv = region_.bounds[axis];
      const double h = step[axis];
      const double kmin = std::ceil((a - iv.lo) / h - 0.5);
      const double kmax = std::floor((b - iv.lo) / h - 0.5);
      const long lo = static_cast<long>(std::max(0.0, kmin));
      const long hi = static_cast<long>(std::min(static_cast<double>(cells[axis]) - 1.0, kmax));
      return std::pair<long, long>{lo, hi};
    };
    const auto center = [&](int axis, long k) {
      return region_.bounds[axis].lo + (static_cast<double>(k) + 0.5) * step[axis];
    };

    for (std::size_t i = 0; i < centers_.size(); ++i) {
      const auto &u = centers_[i];
      auto &out = disks_[i];
      const auto [x0, x1] = span_of(0, u[0] - radius_, u[0] + radius_);
      if (dim == 1) {
        for (long ix = x0; ix <= x1; ++ix) {
          const double dx = center(0, ix) - u[0];
          if (dx * dx <= r2)
            out.push_back(static_cast<std::uint32_t>(ix));
        }
        continue;
      }
      const auto [y0, y1] = span_of(1, u[1] - radius_, u[1] + radius_);
      for (long ix = x0; ix <= x1; ++ix) {
        const double dx = center(0, ix) - u[0];
        for (long iy = y0; iy <= y1; ++iy) {
          const double dy = center(1, iy) - u[1];
          if (dx * dx + dy * dy <= r2)
            out.push_back(static_cast<std::uint32_t>(ix * static_cast<long>(cells[1]) + iy));
        }
      }
    }
  } else if (method_ == CoverageMethod::montecarlo) {
    if (config.samples < 1)
      throw CoverageError("montecarlo coverage requires samples >= 1");
    point_count_ = config.samples;
    std::mt19937_64 rng(config.seed);
    std::vector<std::vector<double>> pts(point_count_);
    for (auto &p : pts)
      for (const auto &b : region_.bounds)
        p.push_back(std::uniform_real_distribution<double>(b.lo, b.hi)(rng));
    for (std::size_t i = 0; i < centers_.size(); ++i) {
      const auto &u = centers_[i];
      for (std::size_t s = 0; s < pts.size(); ++s) {
        double d2 = 0.0;
        for (int k = 0; k < dim; ++k) {
          const double d = pts[s][k] - u[k];
          d2 += d * d;
        }
        if (d2 <= r2)
          disks_[i].push_back(static_cast<std::uint32_t>(s));
      }
    }
  }
}

CoverageResult CoverageModel::from_count(std::size_t covered_points) const {
  const double fraction =
      static_cast<double>(covered_points) / static_cast<double>(point_count_);
  return {fraction * region_measure_, fraction};
}

bool CoverageModel::count_covers_everything(std::size_t covered_points) const {
  return covered_points + 1 >= point_count_;
}

double CoverageModel::exact_union_length(std::span<const std::size_t> masters) const {
  const auto &iv = region_.bounds[0];
  std::vector<Interval> parts;
  for (auto m : masters) {
    const double a = std::max(iv.lo, centers_[m][0] - radius_);
    const double b = std::min(iv.hi, centers_[m][0] + radius_);
    if (a < b)
      parts.push_back({a, b});
  }
  std::sort(parts.begin(), parts.end(),
            [](const Interval &x, const Interval &y) { return x.lo < y.lo; });
  double total = 0.0;
  double cur_lo = 0.0, cur_hi = 0.0;
  bool open = false;
  for (const auto &p : parts) {
    if (open && p.lo <= cur_hi) {
      cur_hi = std::max(cur_hi, p.hi);
      continue;
    }
    if (open)
      total += cur_hi - cur_lo;
    cur_lo = p.lo;
    cur_hi = p.hi;
    open = true;
  }
  if (open)
    total += cur_hi - cur_lo;
  return total;
}

CoverageResult CoverageModel::measure(std::span<const std::size_t> masters) const {
  if (masters.empty())
    throw CoverageError("coverage of an empty master set is undefined");
  for (auto m : masters)
    if (m >= centers_.size())
      throw CoverageError("master index out of range");
  if (method_ == CoverageMethod::exact1d) {
    const double len = exact_union_length(masters);
    return {len, std::min(1.0, len / region_measure_)};
  }
  return from_count(covered_points(masters));
}

std::size_t CoverageModel::covered_points(std::span<const std::size_t> masters) const {
  std::vector<char> marked(point_count_, 0);
  std::size_t covered = 0;
  for (auto m : masters)
    for (auto p : disks_.at(m))
      if (!marked[p]) {
        marked[p] = 1;
        ++covered;
      }
  return covered;
}

CoverageResult coverage(const Scenario &scenario, std::span<const std::size_t> masters,
                        const CoverageConfig &config) {
  if (masters.empty())
    throw CoverageError("coverage of an empty master set is undefined");
  return CoverageModel(scenario, config).measure(masters);
}

bool covers_everything(const CoverageModel &model, std::span<const std::size_t> masters) {
  if (!model.point_based())
    return model.measure(masters).fraction >= 1.0 - 1e-9;
  if (masters.empty())
    throw CoverageError("coverage of an empty master set is undefined");
  return model.count_covers_everything(model.covered_points(masters));
}

bool covers_everything(const Scenario &scenario, std::span<const std::size_t> masters,
                       const CoverageConfig &config) {
  return covers_everything(CoverageModel(scenario, config), masters);
}

// --- CoverageTracker -------------------------------------------------------

CoverageTracker::CoverageTracker(const CoverageModel &model,
                                 std::span<const std::size_t> masters)
    : model_(&model), is_master_(model.node_count(), false) {
  for (auto m : masters)
    is_master_.at(m) = true;
  if (model.point_based()) {
    counts_.assign(model.point_count(), 0);
    for (auto m : masters)
      for (auto p : model.disk(m))
        if (counts_[p]++ == 0)
          ++covered_;
  }
}

std::vector<std::size_t> CoverageTracker::master_list() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < is_master_.size(); ++i)
    if (is_master_[i])
      out.push_back(i);
  return out;
}

CoverageResult CoverageTracker::current() const {
  if (model_->point_based())
    return model_->from_count(covered_);
  return model_->measure(master_list());
}

CoverageResult CoverageTracker::without(std::size_t master) const {
  if (!model_->point_based()) {
    auto ms = master_list();
    std::erase(ms, master);
    return model_->measure(ms);
  }
  std::size_t lost = 0;
  for (auto p : model_->disk(master))
    if (counts_[p] == 1)
      ++lost;
  return model_->from_count(covered_ - lost);
}

CoverageResult CoverageTracker::replacing(std::size_t old_master, std::size_t new_master) const {
  if (old_master == new_master)
    return current();
  if (!model_->point_based()) {
    auto ms = master_list();
    std::erase(ms, old_master);
    ms.push_back(new_master);
    return model_->measure(ms);
  }
  std::size_t covered = covered_;
  for (auto p : model_->disk(old_master))
    if (--counts_[p] == 0)
      --covered;
  for (auto p : model_->disk(new_master))
    if (counts_[p] == 0)
      ++covered;
  for (auto p : model_->disk(old_master))
    ++counts_[p];
  return model_->from_count(covered);
}

void CoverageTracker::remove(std::size_t master) {
  is_master_.at(master) = false;
  if (!model_->point_based())
    return;
  for (auto p : model_->disk(master))
    if (--counts_[p] == 0)
      --covered_;
}

void CoverageTracker::replace(std::size_t old_master, std::size_t new_master) {
  if (old_master == new_master)
    return;
  remove(old_master);
  is_master_.at(new_master) = true;
  if (!model_->point_based())
    return;
  for (auto p : model_->disk(new_master))
    if (counts_[p]++ == 0)
      ++covered_;
}

} // namespace covcomp
