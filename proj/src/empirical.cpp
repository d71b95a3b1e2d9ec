#include "paircorr/empirical.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>

#include "paircorr/theory.hpp"

namespace paircorr {

namespace {

using PairCounts = std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t>;

std::vector<Atom> atoms_from_counts(const PairCounts& counts, double phi) {
  std::vector<Atom> atoms;
  atoms.reserve(2 * counts.size());
  for (const auto& [key, c] : counts) {
    const auto [a, b] = key;
    const double pos = pair_gap(phi, a, b);
    atoms.push_back({a, b, pos, c});
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  return atoms;
}

}  // namespace

std::vector<QuadInt> pair_offsets(const CorrelationConfig& cfg) {
  std::vector<QuadInt> out;
  for_each_point_in_norm_ball(pair_norm_bound(static_cast<double>(cfg.n_cap), cfg.alpha), cfg.field,
                              [&](QuadInt p) { out.push_back(p); });
  return out;
}

std::vector<double> pair_gap_stream(const CorrelationConfig& cfg) {
  cfg.validate();
  const double phi = cfg.phi();
  std::vector<double> out;
  for_each_pair(cfg, [&](QuadInt, QuadInt, std::int64_t a, std::int64_t b) { out.push_back(pair_gap(phi, a, b)); });
  return out;
}

double resolve_config_psi(const CorrelationConfig& cfg) {
  const auto n = static_cast<double>(cfg.n_cap);
  const RegimeInfo regime = classify_regime(cfg.alpha, cfg.scaling, cfg.field);
  if (cfg.psi.mode != PsiSpec::Mode::automatic) {
    return resolve_psi(cfg.psi, regime, DiscSummary(0, cfg.field), n, cfg.scaling, cfg.alpha);
  }
  const DiscSummary disc(pair_norm_bound(n, cfg.alpha), cfg.field);
  return resolve_psi(cfg.psi, regime, disc, n, cfg.scaling, cfg.alpha);
}

Histogram empirical_measure(const CorrelationConfig& cfg, int threads, std::int64_t atom_limit) {
  cfg.validate();
  const double psi = resolve_config_psi(cfg);
  const double phi = cfg.phi();
  const std::vector<QuadInt> offsets = pair_offsets(cfg);
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::size_t>(offsets.size(), 1))));

  struct Local {
    Histogram hist;
    PairCounts counts;
    bool exact = true;
  };
  std::vector<Local> locals(static_cast<std::size_t>(workers));
  for (auto& l : locals) l.hist = Histogram(cfg.lo, cfg.hi, cfg.bin_width);

  std::atomic<std::size_t> next{0};
  auto work = [&](Local& local) {
    for (std::size_t i = next++; i < offsets.size(); i = next++) {
      const PairFrame frame = make_frame(offsets[i], cfg.field);
      for_each_in_J(frame, cfg.n_cap, [&](QuadInt, std::int64_t a, std::int64_t b) {
        const double gap = pair_gap(phi, a, b);
        local.hist.add(gap);
        local.hist.add(-gap);
        ++local.hist.total_pairs;
        if (local.exact) {
          if (local.hist.total_pairs > atom_limit) {
            local.exact = false;
            local.counts.clear();
          } else {
            ++local.counts[{a, b}];
          }
        }
      });
    }
  };

  if (workers == 1) {
    work(locals[0]);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(locals.size());
    for (auto& l : locals) pool.emplace_back([&work, &l] { work(l); });
  }

  Histogram result(cfg.lo, cfg.hi, cfg.bin_width);
  bool exact = true;
  PairCounts merged;
  for (const auto& l : locals) {
    result.merge(l.hist);
    exact = exact && l.exact;
    if (exact) {
      for (const auto& [key, c] : l.counts) merged[key] += c;
    }
  }
  result.set_weight(1.0 / psi);
  if (exact && result.total_pairs <= atom_limit) {
    std::vector<Atom> atoms = atoms_from_counts(merged, phi);
    std::vector<Atom> both;
    both.reserve(2 * atoms.size());
    for (const Atom& at : atoms) {
      both.push_back(at);
      both.push_back({at.b, at.a, -at.position, at.count});
    }
    std::sort(both.begin(), both.end(),
              [](const Atom& x, const Atom& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    result.atoms = std::move(both);
  }
  return result;
}

ExactMeasure oracle_measure(const CorrelationConfig& cfg) {
  cfg.validate();
  if (cfg.n_cap > 60) {
    throw std::invalid_argument("oracle_measure: N must be <= 60, got " + std::to_string(cfg.n_cap));
  }
  const double phi = cfg.phi();
  const std::int64_t near = pair_norm_bound(static_cast<double>(cfg.n_cap), cfg.alpha);
  std::vector<QuadInt> pts;
  std::vector<std::int64_t> norms;
  for_each_point_in_norm_ball(cfg.n_cap * cfg.n_cap, cfg.field, [&](QuadInt z) {
    pts.push_back(z);
    norms.push_back(norm(z, cfg.field));
  });
  PairCounts counts;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (norms[i] == norms[j]) continue;
      if (norm(pts[j] - pts[i], cfg.field) > near) continue;
      ++counts[{norms[i], norms[j]}];
    }
  }
  ExactMeasure m;
  m.atoms = atoms_from_counts(counts, phi);
  m.weight = 1.0 / resolve_config_psi(cfg);
  return m;
}

}  // namespace paircorr
