// Line-by-line parametrization of
//
//   J(p, N) = { q in O_K : 0 < n(q) < n(p + q) <= N^2 }
//
// For fixed p != 0, O_K is foliated by the affine lines
// L(p, k) = { z : tr(conj(p) z) = k c'_p }, k in Z, each of which meets O_K
// in a translate w + Z v_p of the primitive direction v_p orthogonal to p.
// Lines with k >= kappa_p lie in the open half plane n(z) < n(p + z).

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "paircorr/ring.hpp"

namespace paircorr {

struct PairFrame {
  FieldParams field;
  QuadInt p;
  std::int64_t xp_prime = 0;  // tr(conj(p))
  std::int64_t yp_prime = 0;  // tr(conj(p) w)
  std::int64_t cp_prime = 0;  // gcd(x', y') > 0
  QuadInt v_p;                // (y'/c', -x'/c'), primitive, orthogonal to p
  std::int64_t kappa_p = 0;   // first line index inside the half plane
  std::int64_t norm_p = 0;
  std::int64_t norm_v = 0;
  double abs_p = 0.0;
  double abs_v = 0.0;

  // Bezout coefficients (s, t) with (x'/c') s + (y'/c') t = 1.
  std::int64_t bezout_s = 0;
  std::int64_t bezout_t = 0;
};

// Throws std::invalid_argument for p = 0.
PairFrame make_frame(QuadInt p, const FieldParams& k);

struct EllRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  bool empty() const { return hi < lo; }
  std::int64_t size() const { return empty() ? 0 : hi - lo + 1; }
};

struct LineSolution {
  std::int64_t k = 0;
  QuadInt w;          // point of L(p,k) ∩ O_K closest to z(p,k)
  double t_pk = 0.0;  // w - z(p,k) = t_pk v_p, |t_pk| <= 1/2
  EllRange ell_range; // l with |w + l v_p + p| <= N
};

// Throws std::invalid_argument when k < kappa_p or n_cap < 1.
LineSolution line_solution(const PairFrame& frame, std::int64_t n_cap, std::int64_t k);

// Largest line index that is still scanned for the given N (includes a
// one-line margin past the geometric bound).
std::int64_t last_line_index(const PairFrame& frame, std::int64_t n_cap);

// Calls fn(q) for every q in J(p, N); lines in increasing k, points in
// increasing l along each line. Each point is re-checked exactly in integers.
template <class Fn>
void for_each_in_J(const PairFrame& frame, std::int64_t n_cap, Fn&& fn) {
  if (n_cap < 1) return;
  const i128 n2 = static_cast<i128>(n_cap) * n_cap;
  if (frame.norm_p >= 4 * n2) return;  // |p| >= 2N
  const FieldParams& fk = frame.field;
  const std::int64_t k_last = last_line_index(frame, n_cap);
  for (std::int64_t k = frame.kappa_p; k <= k_last; ++k) {
    const LineSolution line = line_solution(frame, n_cap, k);
    if (line.ell_range.empty()) continue;
    QuadInt q = line.w + line.ell_range.lo * frame.v_p;
    for (std::int64_t l = line.ell_range.lo; l <= line.ell_range.hi; ++l, q = q + frame.v_p) {
      const std::int64_t a = norm(q, fk);
      if (a <= 0) continue;
      const std::int64_t b = norm(q + frame.p, fk);
      if (a < b && b <= n2) fn(q, a, b);
    }
  }
}

std::vector<QuadInt> enumerate_J(const PairFrame& frame, std::int64_t n_cap);

// Independent oracle: box scan over |q| <= N. Throws unless 1 <= N <= 500.
std::vector<QuadInt> brute_force_J(QuadInt p, std::int64_t n_cap, const FieldParams& k);

// Coordinates of q in the orthonormal frame (p/|p|, v_p/|v_p|), scaled by 1/N.
std::pair<double, double> rescale_point(const PairFrame& frame, std::int64_t n_cap, QuadInt q);

std::vector<std::pair<double, double>> rescaled_points(const PairFrame& frame, std::int64_t n_cap);

}  // namespace paircorr
