#include "paircorr/theory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "paircorr/pairgeom.hpp"

namespace paircorr {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this argument the closed forms lose digits to cancellation and the
// Taylor series are used instead.
constexpr double kSeriesCutoff = 0.03;

// (asin u - u sqrt(1-u^2)) / u^3 near 0.
double g_series(double u) {
  const double s = u * u;
  return 2.0 / 3.0 + s * (1.0 / 5.0 + s * (3.0 / 28.0 + s * (5.0 / 72.0 + s * (35.0 / 704.0))));
}

// (asin a - a (1 - 2a^2) sqrt(1-a^2)) / a^3 near 0.
double rho_series(double a) {
  const double s = a * a;
  return 8.0 / 3.0 - s * (4.0 / 5.0 + s * (1.0 / 7.0 + s * (1.0 / 18.0 + s * (5.0 / 176.0))));
}

double rho_core(double a) {
  if (a < kSeriesCutoff) return rho_series(a);
  return (std::asin(a) - a * (1.0 - 2.0 * a * a) * std::sqrt(1.0 - a * a)) / (a * a * a);
}

double tanh_sinh_integral(const auto& fn, double a, double b) {
  if (!(b > a)) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(fn, a, b, 1e-13);
}

}  // namespace

double kernel_g(double u) {
  if (u < 0 || std::isnan(u)) throw std::domain_error("kernel_g: argument must be >= 0");
  if (u > 1.0) return kPi / (2.0 * u * u * u);
  if (u < kSeriesCutoff) return g_series(u);
  return (std::asin(u) - u * std::sqrt(1.0 - u * u)) / (u * u * u);
}

double primitive_h(double u) {
  if (!(u > 0.0) || u > 1.0) throw std::domain_error("primitive_h: argument must lie in (0, 1]");
  return -rho_core(u) / (4.0 * u);
}

double density_rho(double t, double lambda, std::int64_t d_k) {
  if (!(lambda > 0)) throw std::domain_error("density_rho: lambda must be > 0");
  const double abs_d = static_cast<double>(-d_k);
  const double at = std::abs(t);
  if (at > 2.0 * lambda) {
    const double r = lambda / at;
    return 4.0 * kPi * kPi * r * r * r / abs_d;
  }
  return kPi / abs_d * rho_core(at / (2.0 * lambda));
}

double density_rho_integral(double a, double b, double lambda, std::int64_t d_k) {
  if (!(lambda > 0)) throw std::domain_error("density_rho_integral: lambda must be > 0");
  if (a > b) return -density_rho_integral(b, a, lambda, d_k);
  const double kink = 2.0 * lambda;
  const double c = 4.0 * kPi * kPi * lambda * lambda * lambda / static_cast<double>(-d_k);
  // integral of c / t^3 over [x1, x2] with kink <= x1 <= x2 <= inf
  auto tail = [&](double x1, double x2) {
    const double inv2 = std::isinf(x2) ? 0.0 : 1.0 / (x2 * x2);
    return 0.5 * c * (1.0 / (x1 * x1) - inv2);
  };
  auto inner = [&](double x1, double x2) {  // 0 <= x1 <= x2 <= kink
    return tanh_sinh_integral([&](double t) { return density_rho(t, lambda, d_k); }, x1, x2);
  };
  // integral over [0, x] for x >= 0, by symmetry handles any [a, b]
  auto from_zero = [&](double x) {
    if (x <= kink) return inner(0.0, x);
    return inner(0.0, kink) + tail(kink, x);
  };
  if (a >= 0) return from_zero(b) - from_zero(a);
  if (b <= 0) return from_zero(-a) - from_zero(-b);
  return from_zero(-a) + from_zero(b);
}

std::string RegimeInfo::case_label() const {
  return experimental ? "experimental" : std::to_string(case_id);
}

RegimeInfo classify_regime(double alpha, Scaling scaling, const FieldParams& field) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("--alpha must lie in (0, 1/2)");
  RegimeInfo r;
  constexpr double tol = 1e-9;
  const double beta = scaling.beta;
  auto lam = [&](double exponent) {
    if (beta < exponent - tol) return 0.0;
    if (beta <= exponent + tol) return scaling.coef;
    return kInf;
  };
  r.lambda = lam(1.0 - alpha);
  r.lambda1 = lam(1.0 - alpha / 2.0);
  r.lambda2 = lam(1.0);
  r.lambda3 = lam(1.0 + alpha / 2.0);
  const double gamma_max = (1.0 - 2.0 * alpha) / 2.0;
  r.gamma = gamma_max / 2.0;

  auto experimental = [&] {
    r.case_id = 0;
    r.experimental = true;
    r.psi_formula = PsiFormula::none;
    r.limit = LimitKind::none;
    r.alpha_ok = false;
    return r;
  };
  if (!(alpha > 0.0 && alpha < 0.5) || !(scaling.coef > 0.0)) return experimental();

  if (r.lambda == 0.0) {
    r.case_id = 1;
    r.psi_formula = PsiFormula::n2_s1;
    r.limit = LimitKind::dirac;
  } else if (std::isfinite(r.lambda)) {
    if (!field.d_is_zero_mod_4()) return experimental();
    r.case_id = 2;
    r.psi_formula = PsiFormula::n3alpha_over_phi;
    r.limit = LimitKind::density_rho;
  } else if (std::isfinite(r.lambda1)) {
    r.case_id = 3;
    r.psi_formula = PsiFormula::n3_s0_over_phi;
    r.limit = LimitKind::constant;
    r.gamma = (2.0 - 3.0 * alpha) / 8.0;
    r.alpha_ok = alpha < 2.0 / 5.0;
  } else if (r.lambda2 == 0.0 || r.lambda3 == 0.0) {
    r.case_id = (r.lambda2 == 0.0) ? 4 : 5;
    r.psi_formula = PsiFormula::n3_s0_over_phi;
    r.limit = LimitKind::constant;
    r.gamma = (1.0 - 4.0 * alpha) / 2.0;
    r.alpha_ok = alpha <= 2.0 / 11.0;
  } else {
    return experimental();
  }
  if (!(r.gamma > 0.0 && r.gamma < gamma_max)) r.gamma = gamma_max / 2.0;
  return r;
}

DiscSummary::DiscSummary(std::int64_t max_norm, const FieldParams& field) : field_(field) {
  std::map<std::int64_t, NormClass> by_norm;
  for_each_point_in_norm_ball(max_norm, field, [&](QuadInt p) {
    const PairFrame f = make_frame(p, field);
    NormClass& c = by_norm[f.norm_p];
    c.norm = f.norm_p;
    c.abs = f.abs_p;
    c.multiplicity += 1;
    c.inv_cv_sum += 1.0 / (static_cast<double>(f.cp_prime) * f.abs_v);
  });
  classes_.reserve(by_norm.size());
  for (auto& [n, c] : by_norm) classes_.push_back(c);
}

std::int64_t DiscSummary::point_count() const {
  std::int64_t n = 0;
  for (const auto& c : classes_) n += c.multiplicity;
  return n;
}

double DiscSummary::s_nk(int k) const {
  double sum = 0.0;
  for (const auto& c : classes_) sum += std::pow(c.abs, k) * c.inv_cv_sum;
  return static_cast<double>(field_.abs_d()) * (k + 1) / (4.0 * kPi) * sum;
}

double DiscSummary::s_nk_reduced(int k) const {
  double sum = 0.0;
  for (const auto& c : classes_) sum += static_cast<double>(c.multiplicity) * std::pow(c.abs, k - 1);
  return std::sqrt(static_cast<double>(field_.abs_d())) * (k + 1) / (4.0 * kPi) * sum;
}

double s_nk(int k, double n_cap, double alpha, const FieldParams& field) {
  if (k < 0) throw std::invalid_argument("s_nk: k must be >= 0");
  return DiscSummary(pair_norm_bound(n_cap, alpha), field).s_nk(k);
}

double resolve_psi(const PsiSpec& spec, const RegimeInfo& regime, const DiscSummary& disc,
                   double n_cap, Scaling scaling, double alpha) {
  double psi = 0.0;
  switch (spec.mode) {
    case PsiSpec::Mode::power:
      psi = std::pow(n_cap, spec.x);
      break;
    case PsiSpec::Mode::value:
      psi = spec.x;
      break;
    case PsiSpec::Mode::automatic:
      switch (regime.psi_formula) {
        case PsiFormula::n2_s1:
          psi = n_cap * n_cap * disc.s_nk(1);
          break;
        case PsiFormula::n3alpha_over_phi:
          psi = std::pow(n_cap, 3.0 + alpha) / scaling(n_cap);
          break;
        case PsiFormula::n3_s0_over_phi:
          psi = n_cap * n_cap * n_cap * disc.s_nk(0) / scaling(n_cap);
          break;
        case PsiFormula::none:
          throw UnresolvedPsi("psi cannot be chosen automatically in the " + regime.case_label() +
                              " regime; pass an explicit --psi");
      }
      break;
  }
  if (!(psi > 0.0) || !std::isfinite(psi)) {
    throw UnresolvedPsi("psi(N) must be positive and finite (is there any p with 0 < |p| <= N^alpha?)");
  }
  return psi;
}

ThetaModel::ThetaModel(const FieldParams& field, double alpha, Scaling scaling, double n_cap,
                       const PsiSpec& psi)
    : field_(field),
      alpha_(alpha),
      scaling_(scaling),
      n_(n_cap),
      phi_(scaling(n_cap)),
      regime_(classify_regime(alpha, scaling, field)),
      disc_(pair_norm_bound(n_cap, alpha), field),
      psi_(resolve_psi(psi, regime_, disc_, n_cap, scaling, alpha)),
      prefactor_(n_cap * n_cap * n_cap / (psi_ * phi_)) {}

double ThetaModel::operator()(double t) const {
  const double scale = std::abs(t) * n_ / (2.0 * phi_);
  double sum = 0.0;
  for (const auto& c : disc_.classes()) sum += c.inv_cv_sum * kernel_g(scale / c.abs);
  return prefactor_ * sum;
}

double ThetaModel::largest_kink() const { return 2.0 * phi_ * std::pow(n_, alpha_ - 1.0); }

double ThetaModel::tail_value(double t) const {
  const double r = 2.0 * phi_ / (std::abs(t) * n_);
  double sum = 0.0;
  for (const auto& c : disc_.classes()) sum += c.inv_cv_sum * c.abs * c.abs * c.abs;
  return prefactor_ * kPi / 2.0 * r * r * r * sum;
}

double ThetaModel::mass(std::size_t steps) const {
  if (steps == 0) throw std::invalid_argument("ThetaModel::mass: steps must be > 0");
  const double top = largest_kink();
  const double h = top / static_cast<double>(steps);
  double interior = 0.0;
  for (std::size_t i = 1; i < steps; ++i) interior += (*this)(h * static_cast<double>(i));
  const double body = h * (0.5 * (*this)(0.0) + interior + 0.5 * (*this)(top));
  // beyond top, Theta(t) = tail_value(top) (top / t)^3
  return body + tail_value(top) * top / 2.0;
}

double limit_measure_eval(const RegimeInfo& regime, const TestFunction& f, const FieldParams& field) {
  const double abs_d = static_cast<double>(field.abs_d());
  switch (regime.limit) {
    case LimitKind::dirac:
      return 4.0 * kPi * kPi / abs_d * evaluate(f, 0.0);
    case LimitKind::constant: {
      const double height = 8.0 * kPi / (3.0 * abs_d);
      const double area = std::visit(
          [](const auto& fn) -> double {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, IndicatorFn>) {
              return fn.hi - fn.lo;
            } else if constexpr (std::is_same_v<T, TriangleFn>) {
              return fn.half_width;
            } else {
              return fn.sigma * std::sqrt(2.0 * kPi) * std::erf(fn.cutoff_sigmas / std::sqrt(2.0));
            }
          },
          f);
      if (!std::isfinite(area)) throw std::invalid_argument("limit_measure_eval: infinite mass against a constant density");
      return height * area;
    }
    case LimitKind::density_rho: {
      const double lambda = regime.lambda;
      if (const auto* ind = std::get_if<IndicatorFn>(&f)) {
        return density_rho_integral(ind->lo, ind->hi, lambda, field.d_k);
      }
      auto [lo, hi] = support(f);
      std::vector<double> cuts{lo, hi, -2.0 * lambda, 0.0, 2.0 * lambda};
      if (const auto* tri = std::get_if<TriangleFn>(&f)) cuts.push_back(tri->center);
      std::sort(cuts.begin(), cuts.end());
      double sum = 0.0;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = std::max(cuts[i], lo), b = std::min(cuts[i + 1], hi);
        sum += tanh_sinh_integral([&](double t) { return evaluate(f, t) * density_rho(t, lambda, field.d_k); },
                                  a, b);
      }
      return sum;
    }
    case LimitKind::none:
      break;
  }
  throw std::invalid_argument("limit_measure_eval: regime " + regime.case_label() + " has no limit measure");
}

}  // namespace paircorr
