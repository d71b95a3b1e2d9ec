// Binned finite measures on the real line and the test functions used to
// probe them.

#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace paircorr {

// One atom of an exact measure: the position phi(N) (ln b - ln a) carried by
// `count` ordered pairs of representations with norms (a, b).
struct Atom {
  std::int64_t a = 0;
  std::int64_t b = 0;
  double position = 0.0;
  std::int64_t count = 0;
};

// Bins are half-open [edge_i, edge_{i+1}); values below lo go to underflow,
// values >= hi go to overflow. Counts are exact integers; mass is count *
// weight with weight = 1 / psi.
class Histogram {
 public:
  Histogram() = default;
  Histogram(double lo, double hi, double bin_width);

  std::size_t bin_count() const { return counts_.size(); }
  const std::vector<double>& edges() const { return edges_; }
  double lo() const { return edges_.front(); }
  double hi() const { return edges_.back(); }
  double bin_width() const { return width_; }
  double bin_center(std::size_t i) const { return 0.5 * (edges_[i] + edges_[i + 1]); }

  // Bin index for v, or -1 (underflow) / bin_count() (overflow).
  std::ptrdiff_t locate(double v) const;
  void add(double v, std::int64_t count = 1);
  void merge(const Histogram& other);

  std::int64_t count(std::size_t i) const { return counts_[i]; }
  std::int64_t underflow_count() const { return underflow_; }
  std::int64_t overflow_count() const { return overflow_; }
  std::int64_t sample_count() const;

  void set_weight(double w) { weight_ = w; }
  double weight() const { return weight_; }
  double mass(std::size_t i) const { return static_cast<double>(counts_[i]) * weight_; }
  double underflow_mass() const { return static_cast<double>(underflow_) * weight_; }
  double overflow_mass() const { return static_cast<double>(overflow_) * weight_; }
  double total_mass() const { return static_cast<double>(sample_count()) * weight_; }
  // mass / bin width
  double density(std::size_t i) const { return mass(i) / width_; }

  // Ordered pairs (a < b) that produced the samples; each contributes two samples.
  std::int64_t total_pairs = 0;
  // Present only when every pair was recorded exactly (small N).
  std::optional<std::vector<Atom>> atoms;

 private:
  std::vector<double> edges_;
  std::vector<std::int64_t> counts_;
  std::int64_t underflow_ = 0;
  std::int64_t overflow_ = 0;
  double width_ = 1.0;
  double weight_ = 1.0;
};

struct IndicatorFn {
  double lo, hi;  // closed interval; infinite ends allowed
};
struct TriangleFn {
  double center, half_width;  // height 1 at center
};
struct GaussianFn {
  double center, sigma, cutoff_sigmas;  // exp(-x^2/2s^2) truncated at |x| > cutoff*s
};
using TestFunction = std::variant<IndicatorFn, TriangleFn, GaussianFn>;

double evaluate(const TestFunction& f, double t);
// Support [lo, hi] of f (possibly infinite for indicators).
std::pair<double, double> support(const TestFunction& f);

// Sum of f(center) * mass over bins, or f(atom) * weight over atoms when the
// histogram carries an exact atom list.
double integrate_against(const Histogram& h, const TestFunction& f);

}  // namespace paircorr
