// paircorr <empirical|theta|density|compare|reproduce> [flags]

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "paircorr/runner.hpp"

namespace {

using paircorr::Scenario;

struct RawFlags {
  long long dk = -4;
  double alpha = 0.15;
  double beta = 1.0;
  double coef = 1.0;
  std::string n = "1000";
  double bins = 0.0;
  std::string range;
  std::string t_range;
  std::string psi = "auto";
  int threads = 0;
  std::string out;
  double lambda = 1.0;
  std::vector<double> t_points;
};

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  // a leading '-' belongs to the first number, so only split on ':'
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ':') {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

double parse_real(const std::string& s, const char* flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument(std::string(flag) + ": bad number '" + s + "'");
  return v;
}

// Accepts 3000 as well as 1e14.
std::int64_t parse_count(const std::string& s) {
  const double v = parse_real(s, "--n");
  if (!(v >= 1.0) || v != std::floor(v) || v > 9.0e18) {
    throw std::invalid_argument("--n must be a positive integer, got '" + s + "'");
  }
  return static_cast<std::int64_t>(v);
}

void add_common(CLI::App* sub, RawFlags& f) {
  sub->add_option("--dk", f.dk, "fundamental discriminant D_K < 0")->capture_default_str();
  sub->add_option("--alpha", f.alpha, "pair radius exponent in (0, 1/2)")->capture_default_str();
  sub->add_option("--beta", f.beta, "phi(N) = coef * N^beta")->capture_default_str();
  sub->add_option("--coef", f.coef, "phi(N) = coef * N^beta")->capture_default_str();
  sub->add_option("--n", f.n, "cutoff N (1e14 notation accepted)")->capture_default_str();
  sub->add_option("--psi", f.psi, "auto | n^X | value:V")->capture_default_str();
  sub->add_option("--threads", f.threads, "worker cap (default PAIRCORR_THREADS or all cores)");
  sub->add_option("--out", f.out, "output path")->required();
}

Scenario build(Scenario::Kind kind, const RawFlags& f, bool have_range) {
  Scenario sc;
  sc.kind = kind;
  sc.threads = f.threads;
  sc.out = f.out;
  sc.lambda = f.lambda;
  if (f.threads < 0) throw std::invalid_argument("--threads must be >= 0");
  try {
    sc.cfg.field = paircorr::FieldParams::from_discriminant(f.dk);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("--dk: ") + e.what());
  }
  sc.cfg.alpha = f.alpha;
  sc.cfg.scaling = {f.coef, f.beta};
  if (kind != Scenario::Kind::density && kind != Scenario::Kind::compare) sc.cfg.n_cap = parse_count(f.n);
  try {
    sc.cfg.psi = paircorr::PsiSpec::parse(f.psi);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("--psi: ") + e.what());
  }
  if (f.bins != 0.0) sc.cfg.bin_width = f.bins;
  if (have_range) {
    const auto parts = split_colon(f.range);
    if (parts.size() != 2) throw std::invalid_argument("--range expects lo:hi, got '" + f.range + "'");
    sc.cfg.lo = parse_real(parts[0], "--range");
    sc.cfg.hi = parse_real(parts[1], "--range");
  } else if (kind == Scenario::Kind::compare) {
    sc.cfg.lo = -std::numeric_limits<double>::infinity();
    sc.cfg.hi = std::numeric_limits<double>::infinity();
  }
  if (!f.t_range.empty()) {
    const auto parts = split_colon(f.t_range);
    if (parts.size() != 3) throw std::invalid_argument("--t-range expects lo:hi:steps, got '" + f.t_range + "'");
    sc.t_grid.lo = parse_real(parts[0], "--t-range");
    sc.t_grid.hi = parse_real(parts[1], "--t-range");
    const double steps = parse_real(parts[2], "--t-range");
    if (!(steps >= 1.0) || steps != std::floor(steps)) throw std::invalid_argument("--t-range steps must be a positive integer");
    sc.t_grid.steps = static_cast<std::size_t>(steps);
  }
  return sc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pair correlation of norms in imaginary quadratic fields"};
  app.require_subcommand(1);
  RawFlags f;
  std::string figure_id;
  std::vector<std::string> compare_inputs;

  auto* emp = app.add_subcommand("empirical", "binned empirical pair correlation histogram");
  add_common(emp, f);
  emp->add_option("--bins", f.bins, "bin width (default 0.1)");
  emp->add_option("--range", f.range, "histogram range lo:hi (default -2:2)");

  auto* theta = app.add_subcommand("theta", "intermediate density Theta_N on a t grid");
  add_common(theta, f);
  theta->add_option("--t-range", f.t_range, "grid lo:hi:steps (default 0:10:1001)");

  auto* dens = app.add_subcommand("density", "transition density rho_lambda on a t grid");
  dens->add_option("--dk", f.dk, "fundamental discriminant D_K < 0")->capture_default_str();
  dens->add_option("--alpha", f.alpha, "accepted for symmetry with the other commands");
  dens->add_option("--lambda", f.lambda, "lambda > 0")->capture_default_str();
  dens->add_option("--t-range", f.t_range, "grid lo:hi:steps (default 0:10:1001)");
  dens->add_option("--t", f.t_points, "explicit t values instead of a grid");
  dens->add_option("--out", f.out, "output path")->required();

  auto* cmp = app.add_subcommand("compare", "sup, L1 and mass distances of a histogram CSV to a theory CSV");
  cmp->add_option("inputs", compare_inputs, "histogram.csv theory.csv")->required()->expected(2);
  cmp->add_option("--range", f.range, "interval lo:hi (default: all bins)");
  cmp->add_option("--out", f.out, "metrics CSV")->required();

  auto* rep = app.add_subcommand("reproduce", "figure presets fig1, fig4..fig9");
  rep->add_option("figure", figure_id, "figure id")->required();
  rep->add_option("--out", f.out, "output directory")->required();
  rep->add_option("--bins", f.bins, "override the preset bin width");
  rep->add_option("--threads", f.threads, "worker cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : paircorr::kExitInvalid;
  }

  Scenario sc;
  try {
    if (*emp) {
      sc = build(Scenario::Kind::empirical, f, !f.range.empty());
    } else if (*theta) {
      sc = build(Scenario::Kind::theta, f, false);
    } else if (*dens) {
      sc = build(Scenario::Kind::density, f, false);
    } else if (*cmp) {
      sc = build(Scenario::Kind::compare, f, !f.range.empty());
      sc.inputs.assign(compare_inputs.begin(), compare_inputs.end());
    } else {
      sc = build(Scenario::Kind::reproduce, f, false);
      sc.figure_id = figure_id;
      sc.bin_override = f.bins;
      if (f.bins < 0.0) throw std::invalid_argument("--bins must be > 0");
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return paircorr::kExitInvalid;
  }

  if (!f.t_points.empty()) sc.t_grid.values = f.t_points;
  return paircorr::run(sc, std::cerr, std::cerr);
}
