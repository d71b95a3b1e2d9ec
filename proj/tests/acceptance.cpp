// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "paircorr/empirical.hpp"
#include "paircorr/pairgeom.hpp"
#include "paircorr/runner.hpp"
#include "paircorr/theory.hpp"

using namespace paircorr;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

CorrelationConfig gaussian(double alpha, double beta, std::int64_t n) {
  CorrelationConfig cfg;
  cfg.field = FieldParams::from_discriminant(-4);
  cfg.alpha = alpha;
  cfg.scaling = {1.0, beta};
  cfg.n_cap = n;
  return cfg;
}

Outcome oracle_geometry() {
  std::size_t cases = 0, points = 0;
  for (auto d : {-3, -4, -7, -8, -11}) {
    const auto k = FieldParams::from_discriminant(d);
    for (std::int64_t n = 1; n <= 40; ++n) {
      for (const auto& p : points_in_disc(std::pow(static_cast<double>(n), 0.4), k)) {
        auto fast = enumerate_J(make_frame(p, k), n);
        auto slow = brute_force_J(p, n, k);
        std::sort(fast.begin(), fast.end());
        std::sort(slow.begin(), slow.end());
        if (fast != slow) return {false, fmt("mismatch at D=%lld N=%lld p=(%lld,%lld)", (long long)d, (long long)n,
                                             (long long)p.x, (long long)p.y)};
        ++cases;
        points += fast.size();
      }
    }
  }
  return {true, fmt("%zu (D, N, p) cases, %zu points", cases, points)};
}

Outcome oracle_measure_identity() {
  std::size_t configs = 0, atoms = 0;
  for (auto d : {-4, -3}) {
    for (double alpha : {0.2, 0.4}) {
      for (double beta : {0.5, 1.0}) {
        for (std::int64_t n = 1; n <= 25; ++n) {
          CorrelationConfig cfg = gaussian(alpha, beta, n);
          cfg.field = FieldParams::from_discriminant(d);
          cfg.psi = PsiSpec::value(1.0);
          const Histogram h = empirical_measure(cfg, 1);
          const ExactMeasure o = oracle_measure(cfg);
          if (!h.atoms) return {false, "atom list missing"};
          const auto& a = *h.atoms;
          bool same = a.size() == o.atoms.size() && h.weight() == o.weight;
          for (std::size_t i = 0; same && i < a.size(); ++i) {
            same = a[i].a == o.atoms[i].a && a[i].b == o.atoms[i].b && a[i].count == o.atoms[i].count &&
                   a[i].position == o.atoms[i].position;
          }
          if (!same) return {false, fmt("mismatch at D=%d alpha=%g beta=%g N=%lld", d, alpha, beta, (long long)n)};
          ++configs;
          atoms += a.size();
        }
      }
    }
  }
  return {true, fmt("%zu configurations, %zu atoms", configs, atoms)};
}

Outcome closed_forms() {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto g = [](double u) { return kernel_g(u); };
  struct Item {
    const char* name;
    double value, target, tol;
  };
  const Item items[] = {
      {"g(0)", kernel_g(0.0), 2.0 / 3.0, 1e-12},
      {"g(1)", kernel_g(1.0), pi / 2.0, 1e-12},
      {"int g over [0,inf)", ts.integrate(g, 0.0, 1.0) + ts.integrate(g, 1.0, kInf), pi / 2.0, 1e-8},
      {"int g over [0,1]", ts.integrate(g, 0.0, 1.0), pi / 4.0, 1e-8},
      {"h(1)", primitive_h(1.0), -pi / 8.0, 1e-12},
      {"rho(0)", density_rho(0.0, 1.0, -4), 8.0 * pi / 12.0, 1e-12},
      {"rho(2-)", density_rho(std::nextafter(2.0, 0.0), 1.0, -4), pi * pi / 8.0, 1e-12},
      {"rho(2+)", density_rho(std::nextafter(2.0, 3.0), 1.0, -4), pi * pi / 8.0, 1e-12},
      {"rho(0), D=-3", density_rho(0.0, 1.0, -3), 8.0 * pi / 9.0, 1e-12},
      {"rho(2-), D=-3", density_rho(std::nextafter(2.0, 0.0), 1.0, -3), pi * pi / 6.0, 1e-12},
      {"rho(2+), D=-3", density_rho(std::nextafter(2.0, 3.0), 1.0, -3), pi * pi / 6.0, 1e-12},
  };
  double worst = 0.0;
  for (const Item& it : items) {
    const double err = std::abs(it.value - it.target);
    if (!(err <= it.tol)) return {false, fmt("%s off by %.3g", it.name, err)};
    worst = std::max(worst, err);
  }
  return {true, fmt("%zu constants, largest error %.3g", std::size(items), worst)};
}

Outcome theta_mass() {
  const double target = 2.0 * pi * pi / 4.0;
  double worst = 0.0;
  for (double n : {1e7, 1e9}) {
    const ThetaModel theta(FieldParams::from_discriminant(-4), 0.15, {1.0, 0.8}, n, PsiSpec::automatic());
    if (theta.regime().case_id != 1) return {false, "parameters not classified as case 1"};
    worst = std::max(worst, std::abs(theta.mass() / target - 1.0));
  }
  return {worst <= 1e-6, fmt("largest relative error %.3g (limit 1e-6)", worst)};
}

Outcome theta_convergence() {
  const double target = 2.0 * pi / 3.0;
  std::vector<double> sups;
  for (double n : {1e10, 1e12, 1e14}) {
    const ThetaModel theta(FieldParams::from_discriminant(-4), 0.15, {1.0, 0.9}, n, PsiSpec::automatic());
    double sup = 0.0;
    for (int i = 0; i <= 2000; ++i) sup = std::max(sup, std::abs(theta(10.0 * i / 2000.0) - target));
    sups.push_back(sup);
  }
  const bool monotone = sups[1] <= sups[0] && sups[2] <= sups[1];
  return {monotone && sups[2] <= 0.1,
          fmt("sup |Theta_N - 2pi/3| on [0,10] = %.4f, %.4f, %.4f for N = 1e10, 1e12, 1e14 (%s; need <= 0.1)",
              sups[0], sups[1], sups[2], monotone ? "monotone" : "not monotone")};
}

CorrelationConfig fig1_config() {
  CorrelationConfig cfg = gaussian(0.15, 0.85, 3000);
  cfg.psi = PsiSpec::power(2.3);
  cfg.bin_width = 0.1;
  cfg.lo = -2.0;
  cfg.hi = 2.0;
  return cfg;
}

std::string fig1_csv;

Outcome figure_one() {
  const CorrelationConfig cfg = fig1_config();
  const Histogram h = empirical_measure(cfg, 1, 0);
  fig1_csv = to_csv_text(histogram_table(h, cfg, 1.0 / h.weight()));
  const auto rho = bin_averaged_rho(h, 1.0, -4);
  double l1 = 0.0;
  for (std::size_t i = 0; i < h.bin_count(); ++i) l1 += std::abs(h.density(i) - rho[i]) * h.bin_width();
  const double bound = 0.15 * density_rho_integral(-2.0, 2.0, 1.0, -4);
  return {l1 <= bound, fmt("L1 = %.4f, bound 0.15 * int rho = %.4f", l1, bound)};
}

Outcome cardinality() {
  const std::int64_t n = 500;
  double worst = 0.0;
  std::size_t offsets = 0;
  for (auto d : {-3, -4, -7, -8, -11}) {
    const auto k = FieldParams::from_discriminant(d);
    for (const auto& p : points_in_disc(3.0, k)) {
      const PairFrame f = make_frame(p, k);
      std::int64_t card = 0;
      for_each_in_J(f, n, [&](QuadInt, std::int64_t, std::int64_t) { ++card; });
      const double ratio = static_cast<double>(card) * static_cast<double>(f.cp_prime) * f.abs_v /
                           (pi * f.abs_p * static_cast<double>(n * n));
      worst = std::max(worst, std::abs(ratio - 1.0));
      ++offsets;
    }
  }
  return {worst <= 0.05, fmt("%zu offsets over D in {-3,-4,-7,-8,-11}, largest |ratio - 1| = %.4f", offsets, worst)};
}

Outcome level_repulsion() {
  CorrelationConfig cfg = gaussian(0.15, 2.0, 2000);
  cfg.psi = PsiSpec::power(3.0 + 0.15 - 2.0);
  const std::int64_t n2 = cfg.n_cap * cfg.n_cap;
  const double phi = cfg.phi();
  // exact: every pair has a < b <= N^2, hence ln b - ln a >= ln(1 + 1/(N^2 - 1))
  bool ordered = true;
  double smallest = kInf;
  std::int64_t pairs = 0;
  for_each_pair(cfg, [&](QuadInt, QuadInt, std::int64_t a, std::int64_t b) {
    ordered = ordered && 0 < a && a < b && b <= n2;
    smallest = std::min(smallest, pair_gap(phi, a, b));
    ++pairs;
  });
  const double bound = static_cast<double>(n2) * std::log1p(1.0 / static_cast<double>(n2));
  cfg.lo = 0.0;
  cfg.hi = 0.99;
  cfg.bin_width = 0.99;
  const Histogram h = empirical_measure(cfg, 1, 0);
  const bool empty_bin = h.bin_count() == 1 && h.count(0) == 0;
  const bool pass = ordered && smallest >= bound && bound > 0.9999998 && empty_bin;
  return {pass, fmt("%lld pairs, smallest positive atom %.10f >= N^2 ln(1 + 1/N^2) = %.10f, bin (0, 0.99) count %lld",
                    (long long)pairs, smallest, bound, (long long)h.count(0))};
}

Outcome determinism() {
  if (fig1_csv.empty()) return {false, "criterion 6 did not produce a CSV"};
  const CorrelationConfig cfg = fig1_config();
  const Histogram h = empirical_measure(cfg, 8, 0);
  const std::string csv = to_csv_text(histogram_table(h, cfg, 1.0 / h.weight()));
  return {csv == fig1_csv, fmt("1 worker vs 8 workers: %zu vs %zu bytes, %s", fig1_csv.size(), csv.size(),
                               csv == fig1_csv ? "identical" : "different")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "line enumeration equals box scan", oracle_geometry},
      {2, "pair measure equals direct pair scan", oracle_measure_identity},
      {3, "closed-form constants", closed_forms},
      {4, "Theta_N mass identity", theta_mass},
      {5, "Theta_N convergence to the constant", theta_convergence},
      {6, "N = 3000 histogram against rho", figure_one},
      {7, "cardinality of J(p, N)", cardinality},
      {8, "level repulsion at beta = 2", level_repulsion},
      {9, "worker-count determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s -- %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
