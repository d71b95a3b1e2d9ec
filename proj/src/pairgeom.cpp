#include "paircorr/pairgeom.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace paircorr {

namespace {

// floor(a / b) for b > 0.
i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

struct Bezout {
  std::int64_t g, s, t;
};

// a s + b t = g = gcd(a, b) >= 0.
Bezout extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

}  // namespace

PairFrame make_frame(QuadInt p, const FieldParams& k) {
  if (p.is_zero()) throw std::invalid_argument("make_frame: p must be nonzero");
  PairFrame f;
  f.field = k;
  f.p = p;
  f.xp_prime = 2 * p.x + p.y * k.tr_omega;
  f.yp_prime = p.x * k.tr_omega + 2 * k.n_omega * p.y;
  f.cp_prime = std::gcd(f.xp_prime, f.yp_prime);
  const std::int64_t a = f.xp_prime / f.cp_prime;
  const std::int64_t b = f.yp_prime / f.cp_prime;
  f.v_p = {b, -a};
  const Bezout bz = extended_gcd(a, b);
  f.bezout_s = bz.s;
  f.bezout_t = bz.t;
  f.norm_p = norm(p, k);
  f.norm_v = norm(f.v_p, k);
  f.kappa_p = static_cast<std::int64_t>(floor_div(-static_cast<i128>(f.norm_p), f.cp_prime)) + 1;
  f.abs_p = std::sqrt(static_cast<double>(f.norm_p));
  f.abs_v = std::sqrt(static_cast<double>(f.norm_v));
  return f;
}

LineSolution line_solution(const PairFrame& frame, std::int64_t n_cap, std::int64_t k) {
  if (n_cap < 1) throw std::invalid_argument("line_solution: N must be >= 1");
  if (k < frame.kappa_p) {
    throw std::invalid_argument("line_solution: line index " + std::to_string(k) +
                                " is below kappa_p = " + std::to_string(frame.kappa_p));
  }
  const FieldParams& fk = frame.field;
  const QuadInt w0{k * frame.bezout_s, k * frame.bezout_t};

  // |w0 + m v - z|^2 = const + m^2 n(v) + m tr(conj(v) w0), since z is parallel to p.
  const i128 nv = frame.norm_v;
  const i128 t0 = trace_conj_prod(frame.v_p, w0, fk);
  const i128 m_lo = floor_div(-t0, 2 * nv);
  auto cost = [&](i128 m) { return m * m * nv + m * t0; };
  const i128 m = cost(m_lo) <= cost(m_lo + 1) ? m_lo : m_lo + 1;

  LineSolution sol;
  sol.k = k;
  sol.w = w0 + static_cast<std::int64_t>(m) * frame.v_p;
  const i128 tw = t0 + 2 * m * nv;  // tr(conj(v) w)
  sol.t_pk = static_cast<double>(tw) / static_cast<double>(2 * nv);

  // |w + l v + p|^2 <= N^2, scaled by 4 n(p) n(v):
  //   (k c' + 2 n(p))^2 n(v) + (tw + 2 l n(v))^2 n(p) <= 4 N^2 n(p) n(v)
  const i128 np = frame.norm_p;
  const i128 shift = static_cast<i128>(k) * frame.cp_prime + 2 * np;
  const i128 slack = 4 * static_cast<i128>(n_cap) * n_cap * np * nv - shift * shift * nv;
  if (slack < 0) return sol;
  const i128 r = isqrt(slack / np);
  sol.ell_range.lo = static_cast<std::int64_t>(ceil_div(-r - tw, 2 * nv));
  sol.ell_range.hi = static_cast<std::int64_t>(floor_div(r - tw, 2 * nv));
  return sol;
}

std::int64_t last_line_index(const PairFrame& frame, std::int64_t n_cap) {
  // The line meets B(-p, N) iff k c' + 2 n(p) <= 2 N |p|.
  const i128 np = frame.norm_p;
  const i128 reach = isqrt(4 * static_cast<i128>(n_cap) * n_cap * np);
  return static_cast<std::int64_t>(floor_div(reach - 2 * np, frame.cp_prime)) + 1;
}

std::vector<QuadInt> enumerate_J(const PairFrame& frame, std::int64_t n_cap) {
  std::vector<QuadInt> out;
  for_each_in_J(frame, n_cap, [&](QuadInt q, std::int64_t, std::int64_t) { out.push_back(q); });
  return out;
}

std::vector<QuadInt> brute_force_J(QuadInt p, std::int64_t n_cap, const FieldParams& k) {
  if (n_cap < 1 || n_cap > 500) {
    throw std::invalid_argument("brute_force_J: N must be in [1, 500], got " + std::to_string(n_cap));
  }
  const std::int64_t n2 = n_cap * n_cap;
  std::vector<QuadInt> out;
  for (std::int64_t y = -2 * n_cap; y <= 2 * n_cap; ++y) {
    for (std::int64_t x = -3 * n_cap; x <= 3 * n_cap; ++x) {
      const QuadInt q{x, y};
      const std::int64_t a = norm(q, k);
      const std::int64_t b = norm(q + p, k);
      if (0 < a && a < b && b <= n2) out.push_back(q);
    }
  }
  return out;
}

std::pair<double, double> rescale_point(const PairFrame& frame, std::int64_t n_cap, QuadInt q) {
  const double n = static_cast<double>(n_cap);
  const double along = static_cast<double>(trace_conj_prod(frame.p, q, frame.field)) / 2.0;
  const double across = static_cast<double>(trace_conj_prod(frame.v_p, q, frame.field)) / 2.0;
  return {along / (n * frame.abs_p), across / (n * frame.abs_v)};
}

std::vector<std::pair<double, double>> rescaled_points(const PairFrame& frame, std::int64_t n_cap) {
  std::vector<std::pair<double, double>> out;
  for_each_in_J(frame, n_cap, [&](QuadInt q, std::int64_t, std::int64_t) {
    out.push_back(rescale_point(frame, n_cap, q));
  });
  return out;
}

}  // namespace paircorr
