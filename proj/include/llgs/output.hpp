#pragma once

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace llgs {

// Column-oriented CSV emitter. Doubles are printed with %.17g so a rerun of
// the same numbers is byte-identical.
class CsvTable {
 public:
  using Cell = std::variant<double, long long, std::string>;

  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<Cell> row);
  std::string to_string() const;
  std::size_t n_rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

// Writes table to `path` and the provenance sidecar to `path` + ".json".
void write_csv_with_sidecar(const std::string& path, const CsvTable& table,
                            const nlohmann::json& sidecar);

std::string format_double(double v);

}  // namespace llgs
