#include "paircorr/config.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace paircorr {

namespace {

double parse_real(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PsiSpec PsiSpec::parse(std::string_view text) {
  if (text == "auto") return automatic();
  if (text.starts_with("n^") || text.starts_with("N^")) return power(parse_real(text.substr(2), "psi exponent"));
  if (text.starts_with("value:")) {
    const double v = parse_real(text.substr(6), "psi value");
    if (!(v > 0)) throw std::invalid_argument("psi value must be > 0");
    return value(v);
  }
  throw std::invalid_argument("psi must be auto, n^X or value:V, got '" + std::string(text) + "'");
}

std::string PsiSpec::to_string() const {
  switch (mode) {
    case Mode::automatic:
      return "auto";
    case Mode::power:
      return "n^" + format_real(x);
    case Mode::value:
      return "value:" + format_real(x);
  }
  return "auto";
}

void CorrelationConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("--alpha must lie in (0, 1/2)");
  if (!(scaling.coef > 0.0) || !std::isfinite(scaling.coef)) throw std::invalid_argument("--coef must be > 0");
  if (!(scaling.beta >= 0.0) || !std::isfinite(scaling.beta)) throw std::invalid_argument("--beta must be >= 0");
  if (n_cap < 1) throw std::invalid_argument("--n must be >= 1");
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) throw std::invalid_argument("--bins must be > 0");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("--range needs lo < hi");
}

std::int64_t pair_norm_bound(double n_cap, double alpha) {
  if (!(n_cap > 0)) return 0;
  const double r2 = std::pow(n_cap, 2.0 * alpha);
  return static_cast<std::int64_t>(std::floor(r2 * (1.0 + 1e-12)));
}

}  // namespace paircorr
