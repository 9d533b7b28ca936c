#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "covcomp/coverage.hpp"
#include "test_support.hpp"

using namespace covcomp;

namespace {

Scenario square_with(std::vector<std::vector<double>> pos, double radius = 2000.0) {
  Scenario s = testing::unit_scenario(std::move(pos), Region::square(10000.0), radius);
  s.coverage = CoverageConfig{};
  return s;
}

} // namespace

TEST_CASE("single interior disk matches its analytic area") {
  const Scenario s = square_with({{5000.0, 5000.0}});
  const std::vector<std::size_t> m{0};
  const auto r = coverage(s, m, s.coverage);
  const double expected = 4.0 * std::numbers::pi / 100.0;
  CHECK(r.fraction == doctest::Approx(expected).epsilon(5e-3));
  CHECK(r.absolute == doctest::Approx(std::numbers::pi * 4e6).epsilon(5e-3));
}

TEST_CASE("duplicate masters count once") {
  const Scenario s = square_with({{3000.0, 4000.0}, {3000.0, 4000.0}});
  const std::vector<std::size_t> one{0}, both{0, 1};
  CHECK(coverage(s, both, s.coverage).fraction == coverage(s, one, s.coverage).fraction);
}

TEST_CASE("corner node covers only the in-region quarter disk") {
  const Scenario s = square_with({{0.0, 0.0}});
  const std::vector<std::size_t> m{0};
  const auto r = coverage(s, m, s.coverage);
  CHECK(r.absolute == doctest::Approx(std::numbers::pi * 4e6 / 4.0).epsilon(1e-2));
}

TEST_CASE("exact1d interval union") {
  const Scenario s = testing::unit_scenario({{2.0}, {3.0}}, Region::segment(0, 10), 1.0);
  const std::vector<std::size_t> m{0, 1};
  const auto r = coverage(s, m, s.coverage);
  CHECK(r.absolute == 3.0);
  CHECK(r.fraction == doctest::Approx(0.3));
  const Scenario edge = testing::unit_scenario({{0.5}}, Region::segment(0, 10), 1.0);
  const std::vector<std::size_t> e{0};
  CHECK(coverage(edge, e, edge.coverage).absolute == 1.5);
}

TEST_CASE("empty master set is an error") {
  const Scenario s = square_with({{1.0, 1.0}});
  const std::vector<std::size_t> none;
  CHECK_THROWS_AS(coverage(s, none, s.coverage), CoverageError);
}

TEST_CASE("covers_everything") {
  SUBCASE("dense 4x4 layout tiles the square") {
    std::vector<std::vector<double>> pos;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        pos.push_back({1250.0 + 2500.0 * i, 1250.0 + 2500.0 * j});
    const Scenario s = square_with(pos);
    CHECK(covers_everything(s, testing::iota(16), s.coverage));
    const std::vector<std::size_t> fifteen(testing::iota(15));
    CHECK_FALSE(covers_everything(s, fifteen, s.coverage));
  }
  SUBCASE("one small disk") {
    const Scenario s = square_with({{5000.0, 5000.0}});
    CHECK_FALSE(covers_everything(s, testing::iota(1), s.coverage));
  }
  SUBCASE("1d centered master with D at half length") {
    const Scenario s = testing::unit_scenario({{5.0}}, Region::segment(0, 10), 5.0);
    CHECK(covers_everything(s, testing::iota(1), s.coverage));
    const Scenario t = testing::unit_scenario({{5.0}}, Region::segment(0, 10), 4.9);
    CHECK_FALSE(covers_everything(t, testing::iota(1), t.coverage));
  }
}

TEST_CASE("adding a master never decreases coverage") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Scenario s2 = testing::small_uav(10, 300 + trial);
    const CoverageModel grid(s2, s2.coverage);
    Scenario s1 = generate_scenario(10, Region::segment(0, 10000), ScenarioDefaults::uav(),
                                    400 + trial);
    const CoverageModel exact(s1, s1.coverage);
    auto order = testing::iota(10);
    std::shuffle(order.begin(), order.end(), rng);
    double prev_grid = 0.0, prev_exact = 0.0;
    std::vector<std::size_t> masters;
    for (auto m : order) {
      masters.push_back(m);
      const double g = grid.measure(masters).fraction;
      const double e = exact.measure(masters).fraction;
      CHECK(g >= prev_grid);
      CHECK(e >= prev_exact);
      prev_grid = g;
      prev_exact = e;
    }
  }
}

TEST_CASE("halving the grid cell barely moves smooth layouts") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scenario s = testing::small_uav(6, seed);
    CoverageConfig coarse{CoverageMethod::grid, 50.0};
    CoverageConfig fine{CoverageMethod::grid, 25.0};
    const auto all = testing::iota(6);
    const double a = coverage(s, all, coarse).fraction;
    const double b = coverage(s, all, fine).fraction;
    CHECK(std::abs(a - b) < 2e-3);
  }
}

TEST_CASE("1d grid agrees with exact1d within one cell per covered component") {
  // Each maximal covered interval contributes at most one cell of error.
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Scenario s = generate_scenario(3, Region::segment(0, 10000), ScenarioDefaults::uav(),
                                   500 + trial);
    s.coverage_radius_m = std::uniform_real_distribution<double>(100.0, 3000.0)(rng);
    const CoverageConfig grid{CoverageMethod::grid, 10.0};
    const CoverageConfig exact{CoverageMethod::exact1d};
    const auto all = testing::iota(3);
    const double g = coverage(s, all, grid).absolute;
    const double e = coverage(s, all, exact).absolute;
    CHECK(std::abs(g - e) <= 3 * 10.0);
  }
}

TEST_CASE("montecarlo is seeded and close to the grid") {
  const Scenario s = testing::small_uav(8, 3);
  CoverageConfig mc{CoverageMethod::montecarlo, 25.0, 200000, 42};
  const auto all = testing::iota(8);
  const double a = coverage(s, all, mc).fraction;
  const double b = coverage(s, all, mc).fraction;
  CHECK(a == b);
  mc.seed = 43;
  const double c = coverage(s, all, mc).fraction;
  const double g = coverage(s, all, CoverageConfig{}).fraction;
  CHECK(a == doctest::Approx(g).epsilon(1e-2));
  CHECK(c == doctest::Approx(g).epsilon(1e-2));
}

TEST_CASE("tracker matches fresh evaluation bit for bit") {
  std::mt19937_64 rng(21);
  for (auto method : {CoverageMethod::grid, CoverageMethod::montecarlo}) {
    const Scenario s = testing::small_uav(12, 77);
    CoverageConfig cfg{method, 25.0, 20000, 3};
    const CoverageModel model(s, cfg);
    std::vector<std::size_t> masters = testing::iota(12);
    CoverageTracker tracker(model, masters);
    for (int step = 0; step < 30 && masters.size() > 1; ++step) {
      std::uniform_int_distribution<std::size_t> pick(0, masters.size() - 1);
      const std::size_t victim = masters[pick(rng)];
      auto without = masters;
      std::erase(without, victim);
      CHECK(tracker.without(victim).fraction == model.measure(without).fraction);

      std::vector<std::size_t> outside;
      for (std::size_t i = 0; i < 12; ++i)
        if (std::find(masters.begin(), masters.end(), i) == masters.end())
          outside.push_back(i);
      if (!outside.empty() && step % 2 == 0) {
        const std::size_t in = outside[step % outside.size()];
        auto replaced = without;
        replaced.push_back(in);
        CHECK(tracker.replacing(victim, in).fraction == model.measure(replaced).fraction);
        tracker.replace(victim, in);
        masters = replaced;
      } else {
        tracker.remove(victim);
        masters = without;
      }
      CHECK(tracker.current().fraction == model.measure(masters).fraction);
    }
  }
}
