#include "paircorr/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "paircorr/empirical.hpp"
#include "paircorr/theory.hpp"

namespace paircorr {

namespace fs = std::filesystem;

std::vector<double> TGrid::points() const {
  if (!values.empty()) return values;
  if (steps == 0) throw std::invalid_argument("--t-range needs at least one step");
  if (steps == 1) return {lo};
  if (!(hi > lo)) throw std::invalid_argument("--t-range needs lo < hi");
  std::vector<double> out(steps);
  const double h = (hi - lo) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) out[i] = lo + h * static_cast<double>(i);
  out.back() = hi;
  return out;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PAIRCORR_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CsvTable histogram_table(const Histogram& h, const CorrelationConfig& cfg, double psi) {
  CsvTable t;
  t.header.set("kind", "empirical");
  describe_config(t.header, cfg);
  t.header.set("psi", psi);
  t.header.set("case_id", classify_regime(cfg.alpha, cfg.scaling, cfg.field).case_label());
  t.header.set("mass", h.total_mass());
  t.header.set("pairs", std::to_string(h.total_pairs));
  t.header.set("underflow_mass", h.underflow_mass());
  t.header.set("overflow_mass", h.overflow_mass());
  for (std::size_t i = 0; i < h.bin_count(); ++i) t.rows.push_back({h.bin_center(i), h.density(i)});
  return t;
}

CsvTable empirical_table(const CorrelationConfig& cfg, int threads) {
  const Histogram h = empirical_measure(cfg, threads, 0);
  return histogram_table(h, cfg, 1.0 / h.weight());
}

CsvTable theta_table(const CorrelationConfig& cfg, const TGrid& grid) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 0.5)) throw std::invalid_argument("--alpha must lie in (0, 1/2)");
  if (cfg.n_cap < 1) throw std::invalid_argument("--n must be >= 1");
  if (!(cfg.scaling.coef > 0.0)) throw std::invalid_argument("--coef must be > 0");
  const ThetaModel theta(cfg.field, cfg.alpha, cfg.scaling, static_cast<double>(cfg.n_cap), cfg.psi);
  CsvTable t;
  t.header.set("kind", "theta");
  describe_config(t.header, cfg);
  t.header.set("psi", theta.psi());
  t.header.set("case_id", theta.regime().case_label());
  // 2^14 panels keep large N fast; the header value is informational
  t.header.set("mass", 2.0 * theta.mass(std::size_t{1} << 14));
  for (double x : grid.points()) t.rows.push_back({x, theta(x)});
  return t;
}

CsvTable density_table(std::int64_t d_k, double lambda, const TGrid& grid) {
  const FieldParams field = FieldParams::from_discriminant(d_k);
  if (!(lambda > 0.0)) throw std::invalid_argument("--lambda must be > 0");
  CsvTable t;
  t.header.set("kind", "density");
  t.header.set("field", std::to_string(field.d_k));
  t.header.set("lambda", lambda);
  t.header.set("mass", density_rho_integral(-kInf, kInf, lambda, d_k));
  for (double x : grid.points()) t.rows.push_back({x, density_rho(x, lambda, d_k)});
  return t;
}

namespace {

double interpolate(const CsvTable& table, double x) {
  const auto& rows = table.rows;
  auto it = std::lower_bound(rows.begin(), rows.end(), x,
                             [](const std::vector<double>& r, double v) { return r[0] < v; });
  constexpr double tol = 1e-9;
  if (it != rows.end() && std::abs((*it)[0] - x) <= tol * std::max(1.0, std::abs(x))) return (*it)[1];
  if (it != rows.begin() && std::abs((*(it - 1))[0] - x) <= tol * std::max(1.0, std::abs(x))) return (*(it - 1))[1];
  if (it == rows.begin() || it == rows.end()) {
    throw std::invalid_argument("theory grid does not cover t = " + format_double(x));
  }
  const auto& a = *(it - 1);
  const auto& b = *it;
  const double w = (x - a[0]) / (b[0] - a[0]);
  return a[1] + w * (b[1] - a[1]);
}

}  // namespace

CompareMetrics compare_tables(const CsvTable& histogram, const CsvTable& theory, double lo, double hi) {
  if (histogram.rows.empty() || theory.rows.empty()) throw std::invalid_argument("compare: empty CSV");
  if (!(lo < hi)) throw std::invalid_argument("--range needs lo < hi");
  double width = 0.0;
  if (auto bw = histogram.header.get("bin_width")) {
    width = std::stod(*bw);
  } else if (histogram.rows.size() > 1) {
    width = histogram.rows[1][0] - histogram.rows[0][0];
  }
  if (!(width > 0.0)) throw std::invalid_argument("compare: cannot infer the bin width");
  for (std::size_t i = 1; i < theory.rows.size(); ++i) {
    if (!(theory.rows[i][0] > theory.rows[i - 1][0])) throw std::invalid_argument("compare: theory grid not increasing");
  }
  CompareMetrics m;
  m.lo = lo;
  m.hi = hi;
  double mass_h = 0.0, mass_t = 0.0;
  for (const auto& row : histogram.rows) {
    const double x = row[0];
    if (x < lo || x > hi) continue;
    const double th = interpolate(theory, x);
    const double d = std::abs(row[1] - th);
    m.sup_norm = std::max(m.sup_norm, d);
    m.l1 += d * width;
    mass_h += row[1] * width;
    mass_t += th * width;
    ++m.points;
  }
  m.mass_diff = mass_h - mass_t;
  return m;
}

CsvTable metrics_table(const CompareMetrics& m) {
  CsvTable t;
  t.header.set("kind", "compare");
  t.header.set("interval", format_double(m.lo) + ":" + format_double(m.hi));
  t.header.set("points", std::to_string(m.points));
  t.columns = {"sup_norm", "l1", "mass_diff"};
  t.rows.push_back({m.sup_norm, m.l1, m.mass_diff});
  return t;
}

std::vector<double> bin_averaged_rho(const Histogram& h, double lambda, std::int64_t d_k) {
  std::vector<double> out(h.bin_count());
  for (std::size_t i = 0; i < h.bin_count(); ++i) {
    const double a = h.edges()[i], b = h.edges()[i + 1];
    out[i] = density_rho_integral(a, b, lambda, d_k) / (b - a);
  }
  return out;
}

namespace {

CorrelationConfig gaussian_preset(double alpha, double beta, std::int64_t n) {
  CorrelationConfig cfg;
  cfg.field = FieldParams::from_discriminant(-4);
  cfg.alpha = alpha;
  cfg.scaling = {1.0, beta};
  cfg.n_cap = n;
  return cfg;
}

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::vector<fs::path> reproduce(const std::string& figure_id, const fs::path& dir, int threads,
                                double bin_width_override, std::ostream& log) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<fs::path> written;
  auto emit = [&](const std::string& name, const CsvTable& t) {
    const fs::path path = dir / name;
    write_csv(path, t);
    written.push_back(path);
    log << "wrote " << path.string() << "\n";
  };
  auto bins = [&](double dflt) { return bin_width_override > 0 ? bin_width_override : dflt; };

  if (figure_id == "fig1") {
    for (auto [n, half] : {std::pair<std::int64_t, double>{2000, 10.0}, {3000, 2.0}}) {
      CorrelationConfig cfg = gaussian_preset(0.15, 0.85, n);
      cfg.psi = PsiSpec::power(2.3);
      cfg.bin_width = bins(0.1);
      cfg.lo = -half;
      cfg.hi = half;
      emit("fig1_n" + std::to_string(n) + ".csv", empirical_table(cfg, threads));
    }
    emit("fig1_density.csv", density_table(-4, 1.0, {-10.0, 10.0, 2001, {}}));
    return written;
  }

  struct Ladder {
    const char* id;
    double beta;
    int m_lo, m_hi;
    double t_hi;
  };
  static constexpr Ladder ladders[] = {
      {"fig4", 0.8, 7, 14, 2.0},   {"fig5", 0.85, 7, 10, 10.0}, {"fig6", 0.9, 7, 14, 10.0},
      {"fig7", 1.05, 6, 11, 10.0}, {"fig8", 0.95, 6, 11, 10.0},
  };
  for (const Ladder& l : ladders) {
    if (figure_id != l.id) continue;
    for (int m = l.m_lo; m <= l.m_hi; ++m) {
      CorrelationConfig cfg = gaussian_preset(0.15, l.beta, static_cast<std::int64_t>(std::llround(std::pow(10.0, m))));
      char name[32];
      std::snprintf(name, sizeof name, "%s_m%02d.csv", l.id, m);
      emit(name, theta_table(cfg, {0.0, l.t_hi, 1001, {}}));
    }
    return written;
  }

  if (figure_id == "fig9") {
    for (double beta : {1.3, 1.5, 1.7, 1.9, 2.0}) {
      CorrelationConfig cfg = gaussian_preset(0.15, beta, 2000);
      cfg.psi = PsiSpec::power(3.0 + 0.15 - beta);
      cfg.bin_width = bins(0.05);
      cfg.lo = -10.0;
      cfg.hi = 10.0;
      emit("fig9_beta" + tag(beta) + ".csv", empirical_table(cfg, threads));
    }
    return written;
  }
  throw std::invalid_argument("unknown figure '" + figure_id + "' (expected fig1, fig4..fig9)");
}

int run(const Scenario& sc, std::ostream& log, std::ostream& err) {
  try {
    const int threads = resolve_threads(sc.threads);
    auto need_out = [&] {
      if (sc.out.empty()) throw std::invalid_argument("--out is required");
    };
    switch (sc.kind) {
      case Scenario::Kind::empirical:
        need_out();
        write_csv(sc.out, empirical_table(sc.cfg, threads));
        break;
      case Scenario::Kind::theta:
        need_out();
        write_csv(sc.out, theta_table(sc.cfg, sc.t_grid));
        break;
      case Scenario::Kind::density:
        need_out();
        write_csv(sc.out, density_table(sc.cfg.field.d_k, sc.lambda, sc.t_grid));
        break;
      case Scenario::Kind::compare: {
        need_out();
        if (sc.inputs.size() != 2) throw std::invalid_argument("compare needs a histogram CSV and a theory CSV");
        const CsvTable hist = read_csv(sc.inputs[0]);
        const CsvTable theory = read_csv(sc.inputs[1]);
        const CompareMetrics m = compare_tables(hist, theory, sc.cfg.lo, sc.cfg.hi);
        write_csv(sc.out, metrics_table(m));
        log << "sup_norm=" << format_double(m.sup_norm) << " l1=" << format_double(m.l1)
            << " mass_diff=" << format_double(m.mass_diff) << "\n";
        break;
      }
      case Scenario::Kind::reproduce:
        need_out();
        reproduce(sc.figure_id, sc.out, threads, sc.bin_override, log);
        break;
    }
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const UnresolvedPsi& e) {
    err << "error: --psi: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace paircorr
