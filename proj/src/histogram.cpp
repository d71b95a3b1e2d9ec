#include "paircorr/histogram.hpp"

#include <cmath>
#include <stdexcept>

namespace paircorr {

Histogram::Histogram(double lo, double hi, double bin_width) : width_(bin_width) {
  if (!(bin_width > 0) || !std::isfinite(bin_width)) throw std::invalid_argument("bin width must be > 0");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("range needs lo < hi");
  const double span = (hi - lo) / bin_width;
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(span - 1e-9)));
  edges_.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) edges_[i] = lo + static_cast<double>(i) * bin_width;
  edges_[n] = hi;
  counts_.assign(n, 0);
}

std::ptrdiff_t Histogram::locate(double v) const {
  const auto n = static_cast<std::ptrdiff_t>(counts_.size());
  if (v < edges_.front()) return -1;
  if (v >= edges_.back()) return n;
  auto i = static_cast<std::ptrdiff_t>(std::floor((v - edges_.front()) / width_));
  if (i >= n) i = n - 1;
  if (i < 0) i = 0;
  // fix rounding so that edges_[i] <= v < edges_[i+1]
  while (i > 0 && v < edges_[i]) --i;
  while (i + 1 < n && v >= edges_[i + 1]) ++i;
  return i;
}

void Histogram::add(double v, std::int64_t count) {
  const std::ptrdiff_t i = locate(v);
  if (i < 0) {
    underflow_ += count;
  } else if (i >= static_cast<std::ptrdiff_t>(counts_.size())) {
    overflow_ += count;
  } else {
    counts_[static_cast<std::size_t>(i)] += count;
  }
}

void Histogram::merge(const Histogram& other) {
  if (other.edges_ != edges_) throw std::invalid_argument("Histogram::merge: bin grids differ");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  underflow_ += other.underflow_;
  overflow_ += other.overflow_;
  total_pairs += other.total_pairs;
}

std::int64_t Histogram::sample_count() const {
  std::int64_t s = underflow_ + overflow_;
  for (auto c : counts_) s += c;
  return s;
}

double evaluate(const TestFunction& f, double t) {
  return std::visit(
      [t](const auto& fn) -> double {
        using T = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<T, IndicatorFn>) {
          return (t >= fn.lo && t <= fn.hi) ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, TriangleFn>) {
          const double d = std::abs(t - fn.center);
          return d >= fn.half_width ? 0.0 : 1.0 - d / fn.half_width;
        } else {
          const double z = (t - fn.center) / fn.sigma;
          return std::abs(z) > fn.cutoff_sigmas ? 0.0 : std::exp(-0.5 * z * z);
        }
      },
      f);
}

std::pair<double, double> support(const TestFunction& f) {
  return std::visit(
      [](const auto& fn) -> std::pair<double, double> {
        using T = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<T, IndicatorFn>) {
          return {fn.lo, fn.hi};
        } else if constexpr (std::is_same_v<T, TriangleFn>) {
          return {fn.center - fn.half_width, fn.center + fn.half_width};
        } else {
          return {fn.center - fn.cutoff_sigmas * fn.sigma, fn.center + fn.cutoff_sigmas * fn.sigma};
        }
      },
      f);
}

double integrate_against(const Histogram& h, const TestFunction& f) {
  double sum = 0.0;
  if (h.atoms) {
    for (const Atom& at : *h.atoms) sum += evaluate(f, at.position) * static_cast<double>(at.count);
    return sum * h.weight();
  }
  for (std::size_t i = 0; i < h.bin_count(); ++i) sum += evaluate(f, h.bin_center(i)) * h.mass(i);
  return sum;
}

}  // namespace paircorr
