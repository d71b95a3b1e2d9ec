// Scenario orchestration behind the `paircorr` command line tool.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "paircorr/config.hpp"
#include "paircorr/csv.hpp"
#include "paircorr/histogram.hpp"

namespace paircorr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitIo = 3;

struct TGrid {
  double lo = 0.0;
  double hi = 10.0;
  std::size_t steps = 1001;  // number of points, endpoints included
  std::vector<double> values; // explicit points; replace the grid when nonempty

  std::vector<double> points() const;
};

struct Scenario {
  enum class Kind { empirical, theta, density, compare, reproduce };
  Kind kind = Kind::empirical;
  CorrelationConfig cfg;
  TGrid t_grid;
  double lambda = 1.0;                       // density
  std::string figure_id;                     // reproduce
  std::vector<std::filesystem::path> inputs; // compare: histogram, theory
  std::filesystem::path out;                 // file, or directory for reproduce
  int threads = 0;                           // 0: PAIRCORR_THREADS or hardware
  double bin_override = 0.0;                 // reproduce: replaces the preset bin width when > 0
};

// --threads, then PAIRCORR_THREADS, then the hardware concurrency.
int resolve_threads(int requested);

CsvTable empirical_table(const CorrelationConfig& cfg, int threads);
CsvTable histogram_table(const Histogram& h, const CorrelationConfig& cfg, double psi);
CsvTable theta_table(const CorrelationConfig& cfg, const TGrid& grid);
CsvTable density_table(std::int64_t d_k, double lambda, const TGrid& grid);

struct CompareMetrics {
  double sup_norm = 0.0;
  double l1 = 0.0;
  double mass_diff = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 0;
};

// Histogram CSV (bin centers, densities) against a theory CSV on [lo, hi].
// The theory is linearly resampled at the bin centers when the grids differ;
// throws std::invalid_argument when it does not cover them.
CompareMetrics compare_tables(const CsvTable& histogram, const CsvTable& theory, double lo, double hi);
CsvTable metrics_table(const CompareMetrics& m);

// Bin averages of the transition density over the histogram's bins.
std::vector<double> bin_averaged_rho(const Histogram& h, double lambda, std::int64_t d_k);

// Runs one scenario, writing its CSV output(s). Returns the process exit code
// and reports errors on `err`.
int run(const Scenario& scenario, std::ostream& log, std::ostream& err);

// Files written by `reproduce <figure_id>` into `dir`.
std::vector<std::filesystem::path> reproduce(const std::string& figure_id, const std::filesystem::path& dir,
                                             int threads, double bin_width_override, std::ostream& log);

}  // namespace paircorr
