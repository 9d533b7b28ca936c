#include "covcomp/descent.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

#include "number_text.hpp"

namespace covcomp {

namespace {

std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

std::vector<std::size_t> with_inserted(const std::vector<std::size_t> &v, std::size_t x) {
  std::vector<std::size_t> out;
  out.reserve(v.size() + 1);
  auto it = std::lower_bound(v.begin(), v.end(), x);
  out.insert(out.end(), v.begin(), it);
  out.push_back(x);
  out.insert(out.end(), it, v.end());
  return out;
}

std::vector<std::size_t> with_removed(const std::vector<std::size_t> &v, std::size_t x) {
  std::vector<std::size_t> out;
  out.reserve(v.size());
  for (auto y : v)
    if (y != x)
      out.push_back(y);
  return out;
}

} // namespace

bool DescentTrace::non_decreasing() const {
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (rows[k].lagrangian < rows[k - 1].lagrangian)
      return false;
  return true;
}

void DescentTrace::write_csv(std::ostream &out) const {
  using detail::num;
  out << "iteration,lagrangian,rate,coverage_fraction,merges,remasters,reassigns,swaps\n";
  for (const auto &r : rows)
    out << r.iteration << ',' << num(r.lagrangian) << ',' << num(r.rate) << ','
        << num(r.coverage_fraction) << ',' << r.moves.merges << ',' << r.moves.remasters << ','
        << r.moves.reassigns << ',' << r.moves.swaps << '\n';
}

DescentState::DescentState(const Evaluator &evaluator, double lambda, std::uint64_t order_seed)
    : eval_(&evaluator), lambda_(lambda), order_(iota_vec(evaluator.scenario().size())),
      rank_(order_.size()), master_of_(iota_vec(order_.size())), members_(order_.size()),
      sums_(order_.size()), tracker_(evaluator.coverage_model(), iota_vec(order_.size())) {
  const std::size_t n = order_.size();
  if (order_seed != 0) {
    std::mt19937_64 rng(order_seed);
    std::shuffle(order_.begin(), order_.end(), rng);
  }
  for (std::size_t k = 0; k < n; ++k)
    rank_[order_[k]] = k;
  masters_ = order_;
  rate_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    members_[i] = {i};
    sums_[i] = sum_for(i, members_[i]);
    rate_ = std::min(rate_, sums_[i]);
  }
  coverage_ = tracker_.current();
}

double DescentState::sum_for(std::size_t master, const std::vector<std::size_t> &members) const {
  return cluster_rate(master, members, eval_->alpha());
}

double DescentState::min_excluding(std::size_t a, std::size_t b) const {
  double r = std::numeric_limits<double>::infinity();
  for (auto m : masters_)
    if (m != a && m != b)
      r = std::min(r, sums_[m]);
  return r;
}

std::vector<double>
DescentState::rate_profile(std::initializer_list<std::pair<std::size_t, double>> overrides) const {
  std::vector<double> out;
  out.reserve(masters_.size());
  for (auto m : masters_) {
    double v = sums_[m];
    for (const auto &[k, s] : overrides)
      if (k == m)
        v = s;
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double DescentState::score(double rate, const CoverageResult &cov) const {
  return covcomp::lagrangian(rate, cov, lambda_, eval_->term());
}

double DescentState::lagrangian() const { return score(rate_, coverage_); }

void DescentState::sort_masters() {
  std::sort(masters_.begin(), masters_.end(),
            [&](std::size_t a, std::size_t b) { return rank_[a] < rank_[b]; });
}

Clustering DescentState::clustering() const { return Clustering(master_of_); }

std::size_t DescentState::merge_pass() {
  std::size_t merges = 0;
  for (std::size_t a = 0; a < masters_.size(); ++a) {
    std::size_t b = a + 1;
    while (b < masters_.size()) {
      const std::size_t i = masters_[a];
      const std::size_t j = masters_[b];
      std::vector<std::size_t> merged;
      merged.reserve(members_[i].size() + members_[j].size());
      std::merge(members_[i].begin(), members_[i].end(), members_[j].begin(), members_[j].end(),
                 std::back_inserter(merged));
      const double s = sum_for(i, merged);
      const double r = std::min(min_excluding(i, j), s);
      const CoverageResult cov = tracker_.without(j);
      if (score(r, cov) >= lagrangian()) {
        for (auto k : members_[j])
          master_of_[k] = i;
        members_[i] = std::move(merged);
        members_[j].clear();
        sums_[i] = s;
        masters_.erase(masters_.begin() + static_cast<std::ptrdiff_t>(b));
        tracker_.remove(j);
        coverage_ = cov;
        rate_ = r;
        ++merges;
      } else {
        ++b;
      }
    }
  }
  return merges;
}

std::size_t DescentState::best_master_pass() {
  std::size_t changes = 0;
  const auto snapshot = masters_;
  for (auto i : snapshot) {
    const double others = min_excluding(i, i);
    double best_score = lagrangian();
    std::size_t best = i;
    double best_sum = sums_[i];
    double best_rate = rate_;
    CoverageResult best_cov = coverage_;

    auto candidates = members_[i];
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) { return rank_[a] < rank_[b]; });
    for (auto j : candidates) {
      if (j == i)
        continue;
      const double s = sum_for(j, members_[i]);
      const double r = std::min(others, s);
      const CoverageResult cov = tracker_.replacing(i, j);
      const double l = score(r, cov);
      if (l > best_score) {
        best_score = l;
        best = j;
        best_sum = s;
        best_rate = r;
        best_cov = cov;
      }
    }
    if (best == i)
      continue;
    for (auto k : members_[i])
      master_of_[k] = best;
    members_[best] = std::move(members_[i]);
    members_[i].clear();
    sums_[best] = best_sum;
    *std::find(masters_.begin(), masters_.end(), i) = best;
    tracker_.replace(i, best);
    coverage_ = best_cov;
    rate_ = best_rate;
    ++changes;
  }
  sort_masters();
  return changes;
}

std::size_t DescentState::reassign_pass() {
  std::size_t moves = 0;
  auto by_index = masters_;
  std::sort(by_index.begin(), by_index.end());
  for (auto w : order_) {
    const std::size_t c = master_of_[w];
    if (c == w)
      continue;
    const auto rest = with_removed(members_[c], w);
    const double s_rest = sum_for(c, rest);
    auto best_profile = rate_profile({});
    std::size_t best = c;
    double best_sum = 0.0;
    for (auto m : by_index) {
      if (m == c)
        continue;
      const double s_m = sum_for(m, with_inserted(members_[m], w));
      auto prof = rate_profile({{c, s_rest}, {m, s_m}});
      if (best_profile < prof) {
        best_profile = std::move(prof);
        best = m;
        best_sum = s_m;
      }
    }
    const double best_rate = best_profile.front();
    if (best == c)
      continue;
    members_[best] = with_inserted(members_[best], w);
    members_[c] = rest;
    sums_[best] = best_sum;
    sums_[c] = s_rest;
    master_of_[w] = best;
    rate_ = best_rate;
    ++moves;
  }
  return moves;
}

std::size_t DescentState::swap_pass() {
  std::size_t swaps = 0;
  const std::size_t n = order_.size();
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t a = order_[x];
    if (master_of_[a] == a)
      continue;
    for (std::size_t y = x + 1; y < n; ++y) {
      const std::size_t b = order_[y];
      if (master_of_[b] == b)
        continue;
      const std::size_t ca = master_of_[a];
      const std::size_t cb = master_of_[b];
      if (ca == cb)
        continue;
      auto new_a = with_inserted(with_removed(members_[ca], a), b);
      auto new_b = with_inserted(with_removed(members_[cb], b), a);
      const double s_a = sum_for(ca, new_a);
      const double s_b = sum_for(cb, new_b);
      const double r = std::min({min_excluding(ca, cb), s_a, s_b});
      if (rate_profile({}) < rate_profile({{ca, s_a}, {cb, s_b}})) {
        members_[ca] = std::move(new_a);
        members_[cb] = std::move(new_b);
        sums_[ca] = s_a;
        sums_[cb] = s_b;
        master_of_[a] = cb;
        master_of_[b] = ca;
        rate_ = r;
        ++swaps;
      }
    }
  }
  return swaps;
}

DescentResult run_descent(const Evaluator &evaluator, const DescentConfig &config) {
  const std::size_t n = evaluator.scenario().size();
  const std::size_t cap = config.max_outer_iters ? config.max_outer_iters : 10 * n;
  DescentState state(evaluator, config.lambda, config.order_seed);
  DescentResult result;

  const auto row = [&](std::size_t it, const MoveCounts &mc) {
    return TraceRow{it, state.lagrangian(), state.rate(), state.coverage().fraction, mc};
  };
  result.trace.rows.push_back(row(0, {}));

  for (std::size_t it = 1; it <= cap; ++it) {
    const double before = state.lagrangian();
    MoveCounts mc;
    mc.merges = state.merge_pass();
    mc.remasters = state.best_master_pass();
    mc.reassigns = state.reassign_pass();
    mc.swaps = state.swap_pass();
    result.trace.rows.push_back(row(it, mc));
    result.iterations = it;
    // Merges, reassignments and swaps can make progress on a plateau of
    // equal L (fewer masters, fewer clusters at the minimum rate), so only a
    // pass without them and with a sub-tolerance gain ends the search.
    const bool plateau_progress = mc.merges + mc.reassigns + mc.swaps > 0;
    if (state.lagrangian() - before < config.tol && !plateau_progress) {
      result.converged = true;
      break;
    }
  }
  result.clustering = state.clustering();
  result.evaluation = evaluator.evaluate(result.clustering, config.lambda);
  return result;
}

DescentResult run_descent(const Scenario &scenario, const DescentConfig &config) {
  const Evaluator evaluator(scenario, scenario.coverage);
  return run_descent(evaluator, config);
}

} // namespace covcomp
