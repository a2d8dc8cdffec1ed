// Deterministic CSV output: fixed column order, %.17g for every number so
// identical configs reproduce byte-identical artifacts.
#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace dpnls {

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void row_mixed(const std::vector<std::string>& cells);
  static std::string num(double v);  // %.17g

 private:
  std::ofstream out_;
  size_t ncols_;
};

}  // namespace dpnls
