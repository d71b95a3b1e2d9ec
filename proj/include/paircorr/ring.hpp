// Exact arithmetic in the ring of integers of an imaginary quadratic field.
//
// Elements are stored as integer coordinates (x, y) in the Z-basis (1, w)
// where w = sqrt(D)/2 if D = 0 mod 4 and w = (1 + sqrt(D))/2 otherwise.
// In these coordinates the norm form is x^2 + tr(w) x y + n(w) y^2.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace paircorr {

using i128 = __int128;

struct FieldParams {
  std::int64_t d_k = -4;       // discriminant, < 0 and = 0,1 mod 4
  std::int64_t tr_omega = 0;   // trace of w: 0 or 1
  std::int64_t n_omega = 1;    // norm of w: |D|/4 or (1+|D|)/4
  double covol = 1.0;          // sqrt|D| / 2
  double omega_im = 1.0;       // imaginary part of w, also sqrt|D| / 2

  // Throws std::invalid_argument unless d < 0 and d = 0,1 (mod 4).
  static FieldParams from_discriminant(std::int64_t d);

  std::int64_t abs_d() const { return -d_k; }
  bool d_is_zero_mod_4() const { return tr_omega == 0; }
};

struct QuadInt {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const QuadInt&, const QuadInt&) = default;
  // Lexicographic on (y, x): the enumeration order of every point stream.
  friend bool operator<(const QuadInt& a, const QuadInt& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  }
  bool is_zero() const { return x == 0 && y == 0; }
};

inline QuadInt operator+(QuadInt a, QuadInt b) { return {a.x + b.x, a.y + b.y}; }
inline QuadInt operator-(QuadInt a, QuadInt b) { return {a.x - b.x, a.y - b.y}; }
inline QuadInt operator-(QuadInt a) { return {-a.x, -a.y}; }
inline QuadInt operator*(std::int64_t m, QuadInt a) { return {m * a.x, m * a.y}; }

namespace detail {
[[noreturn]] void overflow(const char* what);

inline std::int64_t narrow(i128 v, const char* what) {
#ifndef NDEBUG
  if (v > INT64_MAX || v < INT64_MIN) overflow(what);
#else
  (void)what;
#endif
  return static_cast<std::int64_t>(v);
}
}  // namespace detail

// floor(sqrt(n)) for n >= 0, exact.
inline std::int64_t isqrt(i128 n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(__builtin_sqrtl(static_cast<long double>(n)));
  while (static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline std::int64_t norm(QuadInt q, const FieldParams& k) {
  const i128 x = q.x, y = q.y;
  return detail::narrow(x * x + x * y * k.tr_omega + y * y * k.n_omega, "norm");
}

// tr(conj(p) z) as a bilinear form in the coordinates of z.
inline std::int64_t trace_conj_prod(QuadInt p, QuadInt z, const FieldParams& k) {
  const i128 xp = 2 * static_cast<i128>(p.x) + static_cast<i128>(p.y) * k.tr_omega;
  const i128 yp = static_cast<i128>(p.x) * k.tr_omega + 2 * static_cast<i128>(k.n_omega) * p.y;
  return detail::narrow(xp * z.x + yp * z.y, "trace_conj_prod");
}

// Ring product, using w^2 = tr(w) w - n(w).
inline QuadInt multiply(QuadInt a, QuadInt b, const FieldParams& k) {
  const i128 yy = static_cast<i128>(a.y) * b.y;
  const i128 x = static_cast<i128>(a.x) * b.x - yy * k.n_omega;
  const i128 y = static_cast<i128>(a.x) * b.y + static_cast<i128>(a.y) * b.x + yy * k.tr_omega;
  return {detail::narrow(x, "multiply"), detail::narrow(y, "multiply")};
}

// Euclidean length of q as a complex number.
double abs_value(QuadInt q, const FieldParams& k);

// Largest integer B with B <= r^2, tolerant of a relative rounding error of
// 1e-12 in r^2 (so that radii like 10^1.5 admit norm 1000).
std::int64_t norm_bound_for_radius(double radius);

// Number of z in O_K with norm(z) = a. a = 0 gives 1.
std::int64_t count_representations(std::int64_t a, const FieldParams& k);

// Calls fn(q) for every nonzero q with norm(q) <= max_norm, ordered by (y, x).
template <class Fn>
void for_each_point_in_norm_ball(std::int64_t max_norm, const FieldParams& k, Fn&& fn) {
  if (max_norm <= 0) return;
  // norm = (x + y tr/2)^2 + y^2 |D|/4, so |y| <= sqrt(4 B / |D|).
  const std::int64_t y_max = isqrt(static_cast<i128>(4) * max_norm / k.abs_d());
  for (std::int64_t y = -y_max; y <= y_max; ++y) {
    // x ranges over the roots of x^2 + (y tr) x + (y^2 n - B) <= 0.
    const i128 disc = static_cast<i128>(4) * max_norm - static_cast<i128>(y) * y * k.abs_d();
    if (disc < 0) continue;
    const std::int64_t s = isqrt(disc);
    const std::int64_t centre2 = -y * k.tr_omega;  // twice the real centre
    std::int64_t x_lo = (centre2 - s) / 2 - 1;
    std::int64_t x_hi = (centre2 + s) / 2 + 1;
    for (std::int64_t x = x_lo; x <= x_hi; ++x) {
      QuadInt q{x, y};
      if (q.is_zero()) continue;
      if (norm(q, k) <= max_norm) fn(q);
    }
  }
}

// Every nonzero q with |q| <= radius, ordered by (y, x).
std::vector<QuadInt> points_in_disc(double radius, const FieldParams& k);

}  // namespace paircorr
