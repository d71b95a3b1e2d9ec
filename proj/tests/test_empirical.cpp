#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "paircorr/empirical.hpp"

using namespace paircorr;

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();

CorrelationConfig small_config(std::int64_t d, std::int64_t n, double alpha, double beta) {
  CorrelationConfig cfg;
  cfg.field = FieldParams::from_discriminant(d);
  cfg.alpha = alpha;
  cfg.scaling = {1.0, beta};
  cfg.n_cap = n;
  cfg.psi = PsiSpec::value(1.0);
  cfg.lo = -20.0;
  cfg.hi = 20.0;
  return cfg;
}

bool same_atoms(const std::vector<Atom>& x, const std::vector<Atom>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].a != y[i].a || x[i].b != y[i].b || x[i].count != y[i].count || x[i].position != y[i].position) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("gap stream example") {
  auto cfg = small_config(-4, 3, 0.4, 1.0);
  const auto gaps = pair_gap_stream(cfg);
  REQUIRE(!gaps.empty());
  const double expected = 3.0 * std::log(2.25);
  CHECK(std::any_of(gaps.begin(), gaps.end(), [&](double g) { return std::abs(g - expected) < 1e-12; }));
  CHECK(expected == doctest::Approx(2.4328).epsilon(1e-4));
  for (double g : gaps) CHECK(g > 0.0);
}

TEST_CASE("N = 1 gives no pairs") {
  for (double alpha : {0.1, 0.3, 0.49}) {
    auto cfg = small_config(-4, 1, alpha, 1.0);
    CHECK(pair_gap_stream(cfg).empty());
    const auto h = empirical_measure(cfg);
    CHECK(h.total_pairs == 0);
    CHECK(h.total_mass() == 0.0);
    REQUIRE(h.atoms.has_value());
    CHECK(h.atoms->empty());
    CHECK(integrate_against(h, IndicatorFn{-kInfD, kInfD}) == 0.0);
  }
}

TEST_CASE("pair offsets are the points with |p| <= N^alpha") {
  // 3^0.4 = 1.55 admits norms 1 and 2
  auto cfg = small_config(-4, 3, 0.4, 1.0);
  CHECK(pair_offsets(cfg).size() == 8);
  cfg.n_cap = 316;  // 316^0.4 = 9.9995
  CHECK(pair_offsets(cfg).size() == 304);
  cfg.n_cap = 317;  // 317^0.4 = 10.0007
  CHECK(pair_offsets(cfg).size() == 316);
}

TEST_CASE("histogram is symmetric") {
  for (auto d : {-3, -4, -7}) {
    auto cfg = small_config(d, 40, 0.3, 0.9);
    cfg.lo = -3.0;
    cfg.hi = 3.0;
    cfg.bin_width = 0.1;
    const auto h = empirical_measure(cfg, 1, 0);
    const auto n = h.bin_count();
    REQUIRE(n == 60);
    for (std::size_t i = 0; i < n; ++i) CHECK(h.count(i) == h.count(n - 1 - i));
    CHECK(h.underflow_count() == h.overflow_count());
    CHECK(h.sample_count() == 2 * h.total_pairs);
  }
}

TEST_CASE("total mass counts both orientations") {
  auto cfg = small_config(-4, 3, 0.4, 1.0);
  const auto h = empirical_measure(cfg);
  const auto oracle = oracle_measure(cfg);
  std::int64_t oracle_pairs = 0;
  for (const auto& a : oracle.atoms) oracle_pairs += a.count;
  CHECK(h.total_mass() == doctest::Approx(static_cast<double>(oracle_pairs)));
  CHECK(2 * h.total_pairs == oracle_pairs);
  std::int64_t j_total = 0;
  for (const auto& p : pair_offsets(cfg)) j_total += static_cast<std::int64_t>(enumerate_J(make_frame(p, cfg.field), 3).size());
  CHECK(h.total_pairs == j_total);
  // the four units contribute ten points each
  CHECK(enumerate_J(make_frame({1, 0}, cfg.field), 3).size() == 10);
}

TEST_CASE("oracle atoms are symmetric") {
  const auto m = oracle_measure(small_config(-4, 12, 0.4, 1.0));
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> c;
  for (const auto& a : m.atoms) c[{a.a, a.b}] = a.count;
  for (const auto& [key, count] : c) {
    CHECK(c.count({key.second, key.first}) == 1);
    CHECK(c[{key.second, key.first}] == count);
  }
}

TEST_CASE("oracle weight reaches r(a) r(b) for large N") {
  const auto m = oracle_measure(small_config(-4, 50, 0.49, 1.0));
  std::int64_t c12 = 0;
  for (const auto& a : m.atoms) {
    if (a.a == 1 && a.b == 2) c12 = a.count;
  }
  CHECK(c12 == 16);
  CHECK_THROWS_AS(oracle_measure(small_config(-4, 61, 0.2, 1.0)), std::invalid_argument);
}

TEST_CASE("line enumeration and the pair scan give the same atoms") {
  for (auto d : {-4, -3}) {
    for (double alpha : {0.2, 0.4}) {
      for (double beta : {0.5, 1.0}) {
        for (std::int64_t n = 2; n <= 12; ++n) {
          const auto cfg = small_config(d, n, alpha, beta);
          const auto h = empirical_measure(cfg);
          const auto o = oracle_measure(cfg);
          REQUIRE(h.atoms.has_value());
          CHECK(same_atoms(*h.atoms, o.atoms));
          CHECK(h.weight() == o.weight);
        }
      }
    }
  }
}

TEST_CASE("smallest positive atom respects the level spacing bound") {
  for (auto d : {-3, -4, -7}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      const auto cfg = small_config(d, 30, 0.3, beta);
      const auto h = empirical_measure(cfg);
      double smallest = kInfD;
      for (const auto& a : *h.atoms) {
        CHECK(a.a != a.b);
        if (a.position > 0) smallest = std::min(smallest, a.position);
        CHECK(a.position != 0.0);
      }
      const double n2 = 900.0;
      CHECK(smallest >= cfg.phi() * std::log1p(1.0 / n2) * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("doubling phi doubles every atom") {
  auto cfg = small_config(-4, 20, 0.35, 0.7);
  const auto h1 = empirical_measure(cfg);
  cfg.scaling.coef = 2.0;
  const auto h2 = empirical_measure(cfg);
  REQUIRE(h1.atoms->size() == h2.atoms->size());
  for (std::size_t i = 0; i < h1.atoms->size(); ++i) {
    const auto& x = (*h1.atoms)[i];
    const auto& y = (*h2.atoms)[i];
    CHECK(x.count == y.count);
    CHECK(2.0 * x.position == y.position);
  }
  CHECK(h1.weight() == h2.weight());
}

TEST_CASE("worker count does not change the result") {
  auto cfg = small_config(-4, 120, 0.3, 0.85);
  cfg.psi = PsiSpec::power(2.3);
  cfg.lo = -2.0;
  cfg.hi = 2.0;
  const auto one = empirical_measure(cfg, 1, 0);
  for (int threads : {2, 3, 8}) {
    const auto many = empirical_measure(cfg, threads, 0);
    REQUIRE(many.bin_count() == one.bin_count());
    for (std::size_t i = 0; i < one.bin_count(); ++i) CHECK(many.count(i) == one.count(i));
    CHECK(many.underflow_count() == one.underflow_count());
    CHECK(many.overflow_count() == one.overflow_count());
    CHECK(many.total_pairs == one.total_pairs);
    CHECK(many.weight() == one.weight());
  }
  const auto exact1 = empirical_measure(small_config(-3, 25, 0.4, 1.0), 1);
  const auto exact4 = empirical_measure(small_config(-3, 25, 0.4, 1.0), 4);
  CHECK(same_atoms(*exact1.atoms, *exact4.atoms));
}

TEST_CASE("atom list is dropped above the limit") {
  const auto cfg = small_config(-4, 20, 0.35, 1.0);
  CHECK(empirical_measure(cfg, 1, 1'000'000).atoms.has_value());
  CHECK(!empirical_measure(cfg, 1, 10).atoms.has_value());
  CHECK(!empirical_measure(cfg, 2, 10).atoms.has_value());
}

TEST_CASE("histogram bins are half open") {
  Histogram h(-1.0, 1.0, 0.5);
  REQUIRE(h.bin_count() == 4);
  CHECK(h.locate(-1.0) == 0);
  CHECK(h.locate(-0.5) == 1);
  CHECK(h.locate(0.0) == 2);
  CHECK(h.locate(1.0) == 4);
  CHECK(h.locate(-1.0000001) == -1);
  h.add(1.0);
  h.add(-2.0);
  h.add(0.25, 3);
  CHECK(h.overflow_count() == 1);
  CHECK(h.underflow_count() == 1);
  CHECK(h.count(2) == 3);
  CHECK(h.sample_count() == 5);
  // a width that does not divide the range leaves a short last bin
  Histogram g(0.0, 1.0, 0.3);
  CHECK(g.bin_count() == 4);
  CHECK(g.edges().back() == 1.0);
}

TEST_CASE("integration against test functions") {
  Histogram zero(-2.0, 2.0, 0.1);
  CHECK(integrate_against(zero, TriangleFn{0.0, 1.0}) == 0.0);

  auto cfg = small_config(-4, 25, 0.4, 1.0);
  cfg.lo = -5.0;
  cfg.hi = 5.0;
  const auto h = empirical_measure(cfg);
  CHECK(integrate_against(h, IndicatorFn{-kInfD, kInfD}) == doctest::Approx(h.total_mass()).epsilon(1e-14));

  // synthetic histogram from the density 1 - |x| / 3 on [-3, 3]
  Histogram s(-3.0, 3.0, 0.01);
  s.set_weight(1e-6);
  for (std::size_t i = 0; i < s.bin_count(); ++i) {
    const double c = s.bin_center(i);
    s.add(c, static_cast<std::int64_t>(std::llround((1.0 - std::abs(c) / 3.0) * 1e4)));
  }
  const TriangleFn tri{0.5, 1.0};
  double reference = 0.0;
  for (std::size_t i = 0; i < s.bin_count(); ++i) reference += evaluate(tri, s.bin_center(i)) * s.mass(i);
  CHECK(integrate_against(s, tri) == doctest::Approx(reference).epsilon(1e-12));

  const GaussianFn gauss{0.0, 0.5, 4.0};
  CHECK(evaluate(gauss, 0.0) == 1.0);
  CHECK(evaluate(gauss, 2.01) == 0.0);
  CHECK(evaluate(tri, 0.5) == 1.0);
  CHECK(evaluate(tri, 1.5) == 0.0);
  CHECK(evaluate(IndicatorFn{0.0, 1.0}, 1.0) == 1.0);
}

TEST_CASE("configuration validation") {
  auto cfg = small_config(-4, 10, 0.3, 1.0);
  cfg.n_cap = 0;
  CHECK_THROWS_WITH_AS(empirical_measure(cfg), doctest::Contains("--n"), std::invalid_argument);
  cfg.n_cap = 10;
  cfg.alpha = 0.5;
  CHECK_THROWS_WITH_AS(empirical_measure(cfg), doctest::Contains("--alpha"), std::invalid_argument);
  cfg.alpha = 0.3;
  cfg.bin_width = 0.0;
  CHECK_THROWS_WITH_AS(empirical_measure(cfg), doctest::Contains("--bins"), std::invalid_argument);
}
