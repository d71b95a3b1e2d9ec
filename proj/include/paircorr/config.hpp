// Parameters shared by the empirical and theoretical sides.

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "paircorr/ring.hpp"

namespace paircorr {

// phi(N) = coef * N^beta
struct Scaling {
  double coef = 1.0;
  double beta = 1.0;
  double operator()(double n) const { return coef * std::pow(n, beta); }
};

// How the renormalization psi(N) is chosen:
//   "auto"     from the regime classification
//   "n^X"      psi = N^X
//   "value:V"  psi = V
struct PsiSpec {
  enum class Mode { automatic, power, value };
  Mode mode = Mode::automatic;
  double x = 0.0;

  static PsiSpec automatic() { return {}; }
  static PsiSpec power(double e) { return {Mode::power, e}; }
  static PsiSpec value(double v) { return {Mode::value, v}; }

  // Throws std::invalid_argument on malformed text.
  static PsiSpec parse(std::string_view text);
  std::string to_string() const;
};

struct CorrelationConfig {
  FieldParams field = FieldParams::from_discriminant(-4);
  double alpha = 0.15;
  Scaling scaling;
  std::int64_t n_cap = 1;
  PsiSpec psi;
  double bin_width = 0.1;
  double lo = -2.0;
  double hi = 2.0;

  double phi() const { return scaling(static_cast<double>(n_cap)); }
  // Throws std::invalid_argument naming the offending parameter.
  void validate() const;
};

// Largest norm n(p) with |p| <= N^alpha.
std::int64_t pair_norm_bound(double n_cap, double alpha);

}  // namespace paircorr
