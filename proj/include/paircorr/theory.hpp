// Closed-form limit objects of the pair correlation measures: the kernel g,
// its primitive h, the transition density rho, the normalizations S_{N,k},
// the intermediate density Theta_N and the scaling-regime classification.

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "paircorr/config.hpp"
#include "paircorr/histogram.hpp"
#include "paircorr/ring.hpp"

namespace paircorr {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// g(u) = (asin u - u sqrt(1 - u^2)) / u^3 on [0, 1], pi / (2 u^3) beyond,
// g(0) = 2/3. Throws std::domain_error for u < 0.
double kernel_g(double u);

// h(u) = (u (1 - 2u^2) sqrt(1 - u^2) - asin u) / (4 u^4), a primitive of
// g(u) / u^2 on (0, 1]. Throws std::domain_error outside (0, 1].
double primitive_h(double u);

// The even transition density with parameter lambda. Throws for lambda <= 0.
double density_rho(double t, double lambda, std::int64_t d_k);

// Integral of density_rho over [a, b]; infinite ends are allowed.
double density_rho_integral(double a, double b, double lambda, std::int64_t d_k);

enum class PsiFormula { n2_s1, n3alpha_over_phi, n3_s0_over_phi, none };
enum class LimitKind { dirac, density_rho, constant, none };

struct RegimeInfo {
  int case_id = 0;  // 1..5, 0 when experimental
  bool experimental = false;
  double lambda = 0.0;   // lim phi / N^(1-alpha)
  double lambda1 = 0.0;  // lim phi / N^(1-alpha/2)
  double lambda2 = 0.0;  // lim phi / N
  double lambda3 = 0.0;  // lim phi / N^(1+alpha/2)
  PsiFormula psi_formula = PsiFormula::none;
  double gamma = 0.0;
  bool alpha_ok = true;
  LimitKind limit = LimitKind::none;

  // "1".."5" or "experimental"
  std::string case_label() const;
};

RegimeInfo classify_regime(double alpha, Scaling scaling, const FieldParams& field);

struct UnresolvedPsi : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lattice points 0 < |p| <= R grouped by norm, with the per-norm sum of
// 1 / (c'_p |v_p|) taken from the actual frames.
struct NormClass {
  std::int64_t norm = 0;
  double abs = 0.0;
  std::int64_t multiplicity = 0;
  double inv_cv_sum = 0.0;
};

class DiscSummary {
 public:
  DiscSummary(std::int64_t max_norm, const FieldParams& field);

  const std::vector<NormClass>& classes() const { return classes_; }
  const FieldParams& field() const { return field_; }
  std::int64_t point_count() const;
  double max_abs() const { return classes_.empty() ? 0.0 : classes_.back().abs; }

  // |D|(k+1)/(4 pi) * sum |p|^k / (c'_p |v_p|)
  double s_nk(int k) const;
  // sqrt|D|(k+1)/(4 pi) * sum |p|^(k-1); equal to s_nk when D = 0 mod 4.
  double s_nk_reduced(int k) const;

 private:
  FieldParams field_;
  std::vector<NormClass> classes_;
};

double s_nk(int k, double n_cap, double alpha, const FieldParams& field);

// psi(N) from the spec (explicit modes) or from the regime's formula.
// Throws UnresolvedPsi when the regime has no formula.
double resolve_psi(const PsiSpec& spec, const RegimeInfo& regime, const DiscSummary& disc,
                   double n_cap, Scaling scaling, double alpha);

// Theta_N(t) = N^3 / (psi phi) * sum_p g(t N / (2 phi |p|)) / (c'_p |v_p|),
// extended evenly to t < 0.
class ThetaModel {
 public:
  ThetaModel(const FieldParams& field, double alpha, Scaling scaling, double n_cap, const PsiSpec& psi);

  double operator()(double t) const;
  double psi() const { return psi_; }
  double phi() const { return phi_; }
  double n_cap() const { return n_; }
  const RegimeInfo& regime() const { return regime_; }
  const DiscSummary& disc() const { return disc_; }

  // 2 phi N^(alpha-1): beyond it every kernel argument is >= 1.
  double largest_kink() const;
  // Trapezoid on [0, largest_kink] with `steps` panels plus the exact tail.
  double mass(std::size_t steps = std::size_t{1} << 20) const;
  // Value from the closed form valid beyond largest_kink().
  double tail_value(double t) const;

 private:
  FieldParams field_;
  double alpha_;
  Scaling scaling_;
  double n_;
  double phi_;
  RegimeInfo regime_;
  DiscSummary disc_;
  double psi_;
  double prefactor_;  // N^3 / (psi phi)
};

// Integral of f against the limit measure of the regime. Throws
// std::invalid_argument for regimes without a limit.
double limit_measure_eval(const RegimeInfo& regime, const TestFunction& f, const FieldParams& field);

}  // namespace paircorr
