#include "paircorr/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace paircorr {

namespace {

double to_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad " + what + " value '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvHeader::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

std::optional<std::string> CsvHeader::get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string CsvHeader::require(const std::string& key) const {
  auto v = get(key);
  if (!v) throw std::invalid_argument("CSV header lacks '" + key + "'");
  return *v;
}

std::string to_csv_text(const CsvTable& table) {
  std::string out;
  for (const auto& [k, v] : table.header.entries()) out += "# " + k + "=" + v + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out += (i ? "," : "") + table.columns[i];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

CsvTable parse_csv_text(const std::string& text) {
  CsvTable t;
  t.columns.clear();
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      if (line.starts_with("#")) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("header line without '='");
        std::size_t start = 1;
        while (start < eq && line[start] == ' ') ++start;
        t.header.set(line.substr(start, eq - start), line.substr(eq + 1));
      } else if (t.columns.empty()) {
        t.columns = split(line, ',');
      } else {
        std::vector<double> row;
        for (const auto& cell : split(line, ',')) row.push_back(to_double(cell, "cell"));
        if (row.size() != t.columns.size()) throw std::invalid_argument("wrong number of columns");
        t.rows.push_back(std::move(row));
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (t.columns.empty()) throw std::invalid_argument("CSV has no column header");
  return t;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_csv_text(table);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv_text(ss.str());
}

void describe_config(CsvHeader& h, const CorrelationConfig& cfg) {
  h.set("field", std::to_string(cfg.field.d_k));
  h.set("alpha", cfg.alpha);
  h.set("beta", cfg.scaling.beta);
  h.set("coef", cfg.scaling.coef);
  h.set("n", std::to_string(cfg.n_cap));
  h.set("psi_spec", cfg.psi.to_string());
  h.set("bin_width", cfg.bin_width);
  h.set("range", format_double(cfg.lo) + ":" + format_double(cfg.hi));
}

CorrelationConfig config_from_header(const CsvHeader& h) {
  CorrelationConfig cfg;
  cfg.field = FieldParams::from_discriminant(std::stoll(h.require("field")));
  cfg.alpha = to_double(h.require("alpha"), "alpha");
  cfg.scaling.beta = to_double(h.require("beta"), "beta");
  cfg.scaling.coef = to_double(h.require("coef"), "coef");
  cfg.n_cap = std::stoll(h.require("n"));
  cfg.psi = PsiSpec::parse(h.require("psi_spec"));
  if (auto bw = h.get("bin_width")) cfg.bin_width = to_double(*bw, "bin_width");
  if (auto r = h.get("range")) {
    const auto parts = split(*r, ':');
    if (parts.size() != 2) throw std::invalid_argument("bad range '" + *r + "'");
    cfg.lo = to_double(parts[0], "range");
    cfg.hi = to_double(parts[1], "range");
  }
  return cfg;
}

}  // namespace paircorr
