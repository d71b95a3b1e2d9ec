#include "paircorr/ring.hpp"

#include <cmath>
#include <string>

namespace paircorr {

namespace detail {
void overflow(const char* what) {
  throw std::overflow_error(std::string("64-bit overflow in ") + what);
}
}  // namespace detail

FieldParams FieldParams::from_discriminant(std::int64_t d) {
  const std::int64_t r = ((d % 4) + 4) % 4;
  if (d >= 0 || (r != 0 && r != 1)) {
    throw std::invalid_argument("discriminant must be negative and = 0 or 1 mod 4, got " +
                                std::to_string(d));
  }
  FieldParams k;
  k.d_k = d;
  k.tr_omega = (r == 0) ? 0 : 1;
  k.n_omega = (r == 0) ? (-d) / 4 : (1 - d) / 4;
  k.covol = std::sqrt(static_cast<double>(-d)) / 2.0;
  k.omega_im = k.covol;
  return k;
}

double abs_value(QuadInt q, const FieldParams& k) {
  return std::sqrt(static_cast<double>(norm(q, k)));
}

std::int64_t norm_bound_for_radius(double radius) {
  if (!(radius > 0)) return 0;
  const double r2 = radius * radius;
  auto b = static_cast<std::int64_t>(std::floor(r2 * (1.0 + 1e-12)));
  return b < 0 ? 0 : b;
}

std::int64_t count_representations(std::int64_t a, const FieldParams& k) {
  if (a < 0) throw std::invalid_argument("count_representations: a must be >= 0");
  if (a == 0) return 1;
  // x^2 + tr y x + n y^2 = a has discriminant 4a - |D| y^2 in x.
  const std::int64_t y_max = isqrt(static_cast<i128>(4) * a / k.abs_d());
  std::int64_t count = 0;
  for (std::int64_t y = -y_max; y <= y_max; ++y) {
    const i128 disc = static_cast<i128>(4) * a - static_cast<i128>(y) * y * k.abs_d();
    if (disc < 0) continue;
    const std::int64_t s = isqrt(disc);
    if (static_cast<i128>(s) * s != disc) continue;
    const std::int64_t b = -y * k.tr_omega;
    for (std::int64_t num : {b - s, b + s}) {
      if (num % 2 == 0 && norm(QuadInt{num / 2, y}, k) == a) ++count;
      if (s == 0) break;  // double root counted once
    }
  }
  return count;
}

std::vector<QuadInt> points_in_disc(double radius, const FieldParams& k) {
  std::vector<QuadInt> out;
  for_each_point_in_norm_ball(norm_bound_for_radius(radius), k, [&](QuadInt q) { out.push_back(q); });
  return out;
}

}  // namespace paircorr
