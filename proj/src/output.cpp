#include "llgs/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace llgs {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void CsvTable::add_row(std::vector<Cell> row) {
  if (row.size() != header_.size())
    throw std::logic_error("CsvTable: row width does not match header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const double* d = std::get_if<double>(&row[i]))
        out << format_double(*d);
      else if (const long long* n = std::get_if<long long>(&row[i]))
        out << *n;
      else
        out << std::get<std::string>(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

void write_csv_with_sidecar(const std::string& path, const CsvTable& table,
                            const nlohmann::json& sidecar) {
  {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << table.to_string();
  }
  std::ofstream j(path + ".json", std::ios::binary);
  if (!j) throw std::runtime_error("cannot open sidecar file " + path + ".json");
  j << sidecar.dump(2) << '\n';
}

}  // namespace llgs
