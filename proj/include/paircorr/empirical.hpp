// Empirical pair correlation measure of the norm values.
//
// R_N counts, with weight 1/psi(N), the ordered pairs (w, z) of lattice
// points with norms a = n(w) != b = n(z), both <= N^2, and n(z - w) <= N^(2 alpha),
// at the position phi(N) (ln b - ln a). Writing q = w and p = z - w, the
// positive half is enumerated as the union over 0 < |p| <= N^alpha of the
// sets J(p, N); the negative half is its mirror image.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "paircorr/config.hpp"
#include "paircorr/histogram.hpp"
#include "paircorr/pairgeom.hpp"
#include "paircorr/ring.hpp"

namespace paircorr {

inline constexpr std::int64_t kDefaultAtomLimit = 1'000'000;

// phi (ln b - ln a), evaluated as a difference of logarithms.
inline double pair_gap(double phi, std::int64_t a, std::int64_t b) {
  return phi * (std::log(static_cast<double>(b)) - std::log(static_cast<double>(a)));
}

// The offsets p with 0 < |p| <= N^alpha, in (y, x) order.
std::vector<QuadInt> pair_offsets(const CorrelationConfig& cfg);

// Calls fn(p, q, a, b) for every p in pair_offsets and q in J(p, N), where
// a = n(q) < b = n(p + q).
template <class Fn>
void for_each_pair(const CorrelationConfig& cfg, Fn&& fn) {
  for (const QuadInt& p : pair_offsets(cfg)) {
    const PairFrame frame = make_frame(p, cfg.field);
    for_each_in_J(frame, cfg.n_cap, [&](QuadInt q, std::int64_t a, std::int64_t b) { fn(p, q, a, b); });
  }
}

// The positive gaps phi(N) (ln n(p+q) - ln n(q)), in enumeration order.
std::vector<double> pair_gap_stream(const CorrelationConfig& cfg);

// psi(N) for the configuration (auto mode consults the regime).
double resolve_config_psi(const CorrelationConfig& cfg);

// Binned, symmetrized R_N. Work is split across `threads` workers by p; each
// worker keeps integer counts so the result does not depend on the split.
// The exact atom list is kept when the number of pairs is <= atom_limit.
Histogram empirical_measure(const CorrelationConfig& cfg, int threads = 1,
                            std::int64_t atom_limit = kDefaultAtomLimit);

struct ExactMeasure {
  std::vector<Atom> atoms;  // sorted by (a, b); both orientations present
  double weight = 1.0;      // 1 / psi
};

// Direct evaluation of R_N from the pair-count definition by scanning all
// pairs of lattice points of norm <= N^2. Throws unless 1 <= N <= 60.
ExactMeasure oracle_measure(const CorrelationConfig& cfg);

}  // namespace paircorr
