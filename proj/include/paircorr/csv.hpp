// Self-describing CSV files: `# key=value` header lines followed by a column
// header line and numeric rows written with 17 significant digits.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "paircorr/config.hpp"

namespace paircorr {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_double(double v);

class CsvHeader {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value) { set(key, format_double(value)); }
  std::optional<std::string> get(const std::string& key) const;
  // Throws std::invalid_argument when missing.
  std::string require(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct CsvTable {
  CsvHeader header;
  std::vector<std::string> columns{"t", "value"};
  std::vector<std::vector<double>> rows;
};

std::string to_csv_text(const CsvTable& table);
// Throws std::invalid_argument with the offending line number.
CsvTable parse_csv_text(const std::string& text);

// Throw IoError on failure.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

// Header entries describing an empirical/theta configuration.
void describe_config(CsvHeader& header, const CorrelationConfig& cfg);
// Inverse of describe_config.
CorrelationConfig config_from_header(const CsvHeader& header);

}  // namespace paircorr
